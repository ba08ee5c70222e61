#include "orekit/ore.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "orekit/linalg.hpp"

namespace orekit {

OreRingDescriptor::OreRingDescriptor(FieldPtr field, std::string skew, std::optional<AutomorphismSpec> s,
                                     std::optional<DerivationSpec> d, std::vector<std::string> central)
    : coeffs(std::move(field)), skew_var(std::move(skew)), sigma(std::move(s)), delta(std::move(d)),
      central_vars(std::move(central)) {
    std::set<std::string> names(coeffs->variables.begin(), coeffs->variables.end());
    if (!names.insert(skew_var).second) throw Error("skew variable clashes with coefficient variable");
    for (const auto& t : central_vars)
        if (!names.insert(t).second) throw Error("central variable name clash: " + t);
    if (sigma) require_same_field(coeffs, sigma->field);
    if (delta) require_same_field(coeffs, delta->field);
    if (sigma && delta) {
        // sigma-derivation data must agree on x_i x_j = x_j x_i
        for (std::uint32_t i = 0; i < coeffs->nvars(); ++i)
            for (std::uint32_t j = i + 1; j < coeffs->nvars(); ++j) {
                RatFunc xi = RatFunc::variable(coeffs, i), xj = RatFunc::variable(coeffs, j);
                RatFunc lhs = apply_automorphism(*sigma, xi) * delta->image(j) + delta->image(i) * xj;
                RatFunc rhs = apply_automorphism(*sigma, xj) * delta->image(i) + delta->image(j) * xi;
                if (!ratfunc_eq(lhs, rhs))
                    throw Error("sigma-derivation data inconsistent on " + coeffs->var_name(i) + ", " +
                                coeffs->var_name(j));
            }
    }
}

std::optional<std::uint32_t> OreRingDescriptor::central_index(std::string_view name) const {
    for (std::uint32_t i = 0; i < central_vars.size(); ++i)
        if (central_vars[i] == name) return i;
    return std::nullopt;
}

bool OreRingDescriptor::operator==(const OreRingDescriptor& o) const {
    // structural identity of the presentation; map equality is not decided here
    if (!(*coeffs == *o.coeffs) || skew_var != o.skew_var || central_vars != o.central_vars) return false;
    if (sigma.has_value() != o.sigma.has_value() || delta.has_value() != o.delta.has_value()) return false;
    return true;
}

OreRingPtr make_ore_ring(FieldPtr field, std::string skew_var, std::optional<AutomorphismSpec> sigma,
                         std::optional<DerivationSpec> delta, std::vector<std::string> central_vars) {
    return std::make_shared<const OreRingDescriptor>(std::move(field), std::move(skew_var), std::move(sigma),
                                                     std::move(delta), std::move(central_vars));
}

void require_same_ring(const OreRingPtr& a, const OreRingPtr& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || !(*a == *b)) throw Error("ore ring mismatch");
}

std::uint64_t OreMonomial::degree() const {
    std::uint64_t d = xdeg;
    for (auto e : tdeg) d += e;
    return d;
}

OreMonomial OreMonomial::operator*(const OreMonomial& o) const {
    if (tdeg.size() != o.tdeg.size()) throw Error("ore monomial arity mismatch");
    OreMonomial r;
    r.xdeg = xdeg + o.xdeg;
    r.tdeg.resize(tdeg.size());
    for (std::size_t i = 0; i < tdeg.size(); ++i) r.tdeg[i] = tdeg[i] + o.tdeg[i];
    return r;
}

bool OreMonomialLess::operator()(const OreMonomial& a, const OreMonomial& b) const {
    std::uint64_t da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    if (a.xdeg != b.xdeg) return a.xdeg < b.xdeg;
    return a.tdeg < b.tdeg;
}

OreElement OreElement::one(OreRingPtr ring) { return from_int(std::move(ring), 1); }

OreElement OreElement::coefficient(OreRingPtr ring, RatFunc c) {
    require_same_field(ring->coeffs, c.field());
    OreElement r(std::move(ring));
    OreMonomial m;
    m.tdeg.assign(r.ring_->central_vars.size(), 0);
    if (!c.is_zero()) r.terms_.emplace(std::move(m), std::move(c));
    return r;
}

OreElement OreElement::from_int(OreRingPtr ring, std::int64_t n) {
    RatFunc c = RatFunc::constant(ring->coeffs, n);
    return coefficient(std::move(ring), std::move(c));
}

OreElement OreElement::skew(OreRingPtr ring, std::uint32_t e) {
    OreElement r(ring);
    OreMonomial m;
    m.xdeg = e;
    m.tdeg.assign(ring->central_vars.size(), 0);
    r.terms_.emplace(std::move(m), RatFunc::one(ring->coeffs));
    return r;
}

OreElement OreElement::central(OreRingPtr ring, std::uint32_t index, std::uint32_t e) {
    if (index >= ring->central_vars.size()) throw Error("central variable index out of range");
    OreElement r(ring);
    OreMonomial m;
    m.tdeg.assign(ring->central_vars.size(), 0);
    m.tdeg[index] = e;
    r.terms_.emplace(std::move(m), RatFunc::one(ring->coeffs));
    return r;
}

OreElement OreElement::of_term(OreRingPtr ring, OreMonomial m, RatFunc c) {
    if (m.tdeg.size() != ring->central_vars.size()) throw Error("ore monomial arity mismatch");
    OreElement r(std::move(ring));
    if (!c.is_zero()) r.terms_.emplace(std::move(m), std::move(c));
    return r;
}

bool OreElement::is_coefficient() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    return terms_.begin()->first.degree() == 0;
}

RatFunc OreElement::coefficient_value() const {
    if (!is_coefficient()) throw Error("not a coefficient element");
    if (terms_.empty()) return RatFunc::zero(ring_->coeffs);
    return terms_.begin()->second;
}

std::optional<std::uint32_t> OreElement::skew_degree() const {
    if (terms_.empty()) return std::nullopt;
    std::uint32_t d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.xdeg);
    return d;
}

std::optional<std::uint32_t> OreElement::central_degree(std::uint32_t index) const {
    if (terms_.empty()) return std::nullopt;
    std::uint32_t d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.tdeg.at(index));
    return d;
}

void OreElement::add_term(const OreMonomial& m, const RatFunc& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

OreElement OreElement::operator+(const OreElement& o) const {
    require_same_ring(ring_, o.ring_);
    OreElement r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

OreElement OreElement::operator-(const OreElement& o) const {
    require_same_ring(ring_, o.ring_);
    OreElement r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

OreElement OreElement::operator-() const {
    OreElement r(ring_);
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

OreElement OreElement::scaled(const RatFunc& c) const {
    OreElement r(ring_);
    if (c.is_zero()) return r;
    for (auto& [m, k] : terms_) {
        RatFunc v = c * k;
        if (!v.is_zero()) r.terms_.emplace(m, std::move(v));
    }
    return r;
}

namespace {

// delta extended to monomials as a sigma-derivation:
// delta(x_v * rest) = sigma(x_v) delta(rest) + delta(x_v) rest
RatFunc twisted_deriv_monomial(const OreRingDescriptor& ring, const Monomial& m) {
    const FieldPtr& F = ring.coeffs;
    if (m.is_one()) return RatFunc::zero(F);
    std::uint32_t v = m.exps.front().first;
    Monomial rest = *m.divide(Monomial::var(v));
    RatFunc xv = RatFunc::variable(F, v);
    RatFunc rest_rf(MultiPoly::of_term(F, rest, Scalar::of_int(F->characteristic, 1)));
    RatFunc d_rest = twisted_deriv_monomial(ring, rest);
    return apply_automorphism(*ring.sigma, xv) * d_rest + ring.delta->image(v) * rest_rf;
}

// delta extended to the fraction field, respecting sigma when present
RatFunc twisted_deriv(const OreRingDescriptor& ring, const RatFunc& f) {
    if (!ring.delta) return RatFunc::zero(ring.coeffs);
    if (!ring.sigma) return apply_derivation(*ring.delta, f);
    const FieldPtr& F = ring.coeffs;
    auto on_poly = [&](const MultiPoly& p) {
        RatFunc acc = RatFunc::zero(F);
        for (auto& [m, c] : p.terms()) acc = acc + twisted_deriv_monomial(ring, m).scaled(c);
        return acc;
    };
    RatFunc du = on_poly(f.num());
    if (f.is_polynomial()) {
        Scalar c = f.den().constant_term();
        return c.is_one() ? du : du.scaled(c.inverse());
    }
    // from u = (u/v) v: delta(u/v) = (delta(u) - sigma(u/v) delta(v)) / v
    RatFunc u(f.num()), v(f.den());
    RatFunc dv = on_poly(f.den());
    RatFunc su_over_sv = apply_automorphism(*ring.sigma, f);
    return (du - su_over_sv * dv) / v;
}

// x^m * c as a dense vector of coefficients of x^0..x^m, by m single-step
// rewrites x*c = sigma(c)x + delta(c).
std::vector<RatFunc> push_skew(const OreRingPtr& ring, std::uint32_t m, const RatFunc& c) {
    std::vector<RatFunc> row;
    row.push_back(c);
    const bool have_sigma = ring->sigma.has_value();
    const bool have_delta = ring->delta.has_value();
    for (std::uint32_t step = 0; step < m; ++step) {
        std::vector<RatFunc> next(row.size() + 1, RatFunc::zero(ring->coeffs));
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j].is_zero()) continue;
            RatFunc s = have_sigma ? apply_automorphism(*ring->sigma, row[j]) : row[j];
            next[j + 1] = next[j + 1] + s;
            if (have_delta) {
                RatFunc d = twisted_deriv(*ring, row[j]);
                if (!d.is_zero()) next[j] = next[j] + d;
            }
        }
        row = std::move(next);
    }
    return row;
}

bool is_constant_coeff(const RatFunc& c) {
    return c.num().is_constant() && c.den().is_constant();
}

}  // namespace

OreElement ore_mul(const OreElement& a, const OreElement& b) {
    require_same_ring(a.ring(), b.ring());
    const OreRingPtr& ring = a.ring();
    OreElement out(ring);
    for (auto& [ma, ca] : a.terms()) {
        for (auto& [mb, cb] : b.terms()) {
            OreMonomial base;
            base.tdeg.resize(ma.tdeg.size());
            for (std::size_t i = 0; i < ma.tdeg.size(); ++i) base.tdeg[i] = ma.tdeg[i] + mb.tdeg[i];
            if (ma.xdeg == 0 || is_constant_coeff(cb)) {
                // scalars commute with x: sigma fixes them, delta kills them
                base.xdeg = ma.xdeg + mb.xdeg;
                out.add_term(base, ca * cb);
                continue;
            }
            std::vector<RatFunc> pushed = push_skew(ring, ma.xdeg, cb);
            for (std::uint32_t j = 0; j < pushed.size(); ++j) {
                if (pushed[j].is_zero()) continue;
                OreMonomial m = base;
                m.xdeg = j + mb.xdeg;
                out.add_term(m, ca * pushed[j]);
            }
        }
    }
    return out;
}

OreElement OreElement::operator*(const OreElement& o) const { return ore_mul(*this, o); }

OreElement OreElement::pow(std::uint64_t e) const {
    OreElement acc = one(ring_);
    OreElement base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

OreElement commutator(const OreElement& a, const OreElement& b) {
    return ore_mul(a, b) - ore_mul(b, a);
}

std::vector<std::pair<std::string, OreElement>> ring_generators(const OreRingPtr& ring) {
    std::vector<std::pair<std::string, OreElement>> gens;
    for (std::uint32_t v = 0; v < ring->coeffs->nvars(); ++v)
        gens.emplace_back(ring->coeffs->var_name(v),
                          OreElement::coefficient(ring, RatFunc::variable(ring->coeffs, v)));
    gens.emplace_back(ring->skew_var, OreElement::skew(ring));
    for (std::uint32_t i = 0; i < ring->central_vars.size(); ++i)
        gens.emplace_back(ring->central_vars[i], OreElement::central(ring, i));
    return gens;
}

std::string CentralityCertificate::str() const {
    if (central) return "central";
    return "not central: [a, " + witness_name + "] = " +
           (witness_commutator ? witness_commutator->str() : std::string("?"));
}

CentralityCertificate is_central(const OreElement& a) { return is_central(a, ring_generators(a.ring())); }

CentralityCertificate is_central(const OreElement& a,
                                 const std::vector<std::pair<std::string, OreElement>>& witnesses) {
    for (auto& [name, g] : witnesses) {
        OreElement c = commutator(a, g);
        if (!c.is_zero()) return {false, name, std::move(c)};
    }
    return {true, "", std::nullopt};
}

RingHomSpec::RingHomSpec(OreRingPtr src, OreRingPtr tgt, std::map<std::string, OreElement> coeffs,
                         std::map<std::string, OreElement> vars)
    : source(std::move(src)), target(std::move(tgt)), coeff_images(std::move(coeffs)),
      var_images(std::move(vars)) {
    for (const auto& v : source->coeffs->variables)
        if (!coeff_images.count(v)) throw Error("hom: missing image of coefficient generator " + v);
    if (!var_images.count(source->skew_var)) throw Error("hom: missing image of skew variable");
    for (const auto& t : source->central_vars)
        if (!var_images.count(t)) throw Error("hom: missing image of central variable " + t);
    for (auto& [n, e] : coeff_images) require_same_ring(target, e.ring());
    for (auto& [n, e] : var_images) require_same_ring(target, e.ring());
}

namespace {

struct HomPowerCache {
    std::map<std::string, std::map<std::uint32_t, OreElement>> pow;

    const OreElement& get(const std::string& name, const OreElement& base, std::uint32_t e) {
        auto& slots = pow[name];
        auto it = slots.find(e);
        if (it != slots.end()) return it->second;
        OreElement v = base.pow(e);
        return slots.emplace(e, std::move(v)).first->second;
    }
};

OreElement eval_coeff_poly(const RingHomSpec& h, const MultiPoly& u, HomPowerCache& cache) {
    OreElement acc = OreElement::zero(h.target);
    for (auto& [m, c] : u.terms()) {
        OreElement term =
            OreElement::coefficient(h.target, RatFunc::constant(h.target->coeffs, c));
        for (auto& [v, e] : m.exps) {
            const std::string& name = h.source->coeffs->var_name(v);
            term = term * cache.get(name, h.coeff_images.at(name), e);
        }
        acc = acc + term;
    }
    return acc;
}

OreElement eval_coeff(const RingHomSpec& h, const RatFunc& c, HomPowerCache& cache) {
    OreElement n = eval_coeff_poly(h, c.num(), cache);
    if (c.is_polynomial()) {
        Scalar s = c.den().constant_term();
        return s.is_one() ? n : n.scaled(RatFunc::constant(h.target->coeffs, s.inverse()));
    }
    OreElement d = eval_coeff_poly(h, c.den(), cache);
    if (!d.is_coefficient() || d.is_zero())
        throw Error("hom: denominator image is not an invertible coefficient");
    return n.scaled(d.coefficient_value().inverse());
}

}  // namespace

OreElement hom_apply_coeff(const RingHomSpec& h, const RatFunc& c) {
    HomPowerCache cache;
    return eval_coeff(h, c, cache);
}

OreElement hom_apply(const RingHomSpec& h, const OreElement& a) {
    require_same_ring(h.source, a.ring());
    HomPowerCache cache;
    OreElement out = OreElement::zero(h.target);
    for (auto& [m, c] : a.terms()) {
        OreElement term = eval_coeff(h, c, cache);
        if (m.xdeg) term = term * cache.get(h.source->skew_var, h.var_images.at(h.source->skew_var), m.xdeg);
        for (std::uint32_t i = 0; i < m.tdeg.size(); ++i)
            if (m.tdeg[i])
                term = term * cache.get(h.source->central_vars[i],
                                        h.var_images.at(h.source->central_vars[i]), m.tdeg[i]);
        out = out + term;
    }
    return out;
}

HomCertificate hom_check(const RingHomSpec& h) {
    if (h.source->sigma) return {false, "source ring has nonidentity sigma; only derivation type is checked"};
    const auto& vars = h.source->coeffs->variables;
    // commutativity of K must survive
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j) {
            if (!commutator(h.coeff_images.at(vars[i]), h.coeff_images.at(vars[j])).is_zero())
                return {false, "images of " + vars[i] + " and " + vars[j] + " do not commute"};
        }
    // [h(x), h(a)] = h(delta(a)) on coefficient generators
    const OreElement& hx = h.var_images.at(h.source->skew_var);
    for (std::uint32_t v = 0; v < vars.size(); ++v) {
        OreElement lhs = commutator(hx, h.coeff_images.at(vars[v]));
        RatFunc da = h.source->delta ? h.source->delta->image(v) : RatFunc::zero(h.source->coeffs);
        OreElement rhs = hom_apply_coeff(h, da);
        if (lhs != rhs)
            return {false, "skew relation fails at " + vars[v] + ": [h(" + h.source->skew_var + "), h(" +
                               vars[v] + ")] != h(delta(" + vars[v] + "))"};
    }
    // central variables must land in the centre
    for (const auto& t : h.source->central_vars) {
        CentralityCertificate c = is_central(h.var_images.at(t));
        if (!c.central) return {false, "image of central variable " + t + " is " + c.str()};
    }
    return {true, ""};
}

std::map<std::string, OreElement> surjectivity_witnesses(const RingHomSpec& h,
                                                         const std::vector<WitnessEntry>& entries) {
    std::map<std::string, OreElement> out;
    for (const auto& w : entries) {
        OreElement image = hom_apply(h, w.preimage);
        if (image != w.target)
            throw Error("surjectivity witness for " + w.name + " fails: h(preimage) = " + image.str());
        out.emplace(w.name, w.preimage);
    }
    return out;
}

std::vector<Monomial> pth_power_basis(const FieldPtr& field) {
    std::uint64_t p = field->characteristic;
    if (p == 0) throw Error("pth_power_basis requires positive characteristic");
    std::vector<Monomial> basis{Monomial::one()};
    for (std::uint32_t v = 0; v < field->nvars(); ++v) {
        std::vector<Monomial> next;
        next.reserve(basis.size() * p);
        for (std::uint32_t e = 0; e < p; ++e)
            for (const auto& m : basis) next.push_back(m * Monomial::var(v, e));
        basis = std::move(next);
    }
    std::sort(basis.begin(), basis.end(), [](const Monomial& a, const Monomial& b) {
        return GrlexLess{}(a, b);
    });
    return basis;
}

namespace {

using FiltrationCol = std::pair<std::uint32_t, Monomial>;
struct FiltrationColLess {
    bool operator()(const FiltrationCol& a, const FiltrationCol& b) const {
        if (a.first != b.first) return a.first < b.first;
        return GrlexLess{}(a.second, b.second);
    }
};

std::map<FiltrationCol, RatFunc, FiltrationColLess> coordinates_over_k(const OreElement& a) {
    std::map<FiltrationCol, RatFunc, FiltrationColLess> row;
    for (auto& [m, c] : a.terms()) {
        for (auto e : m.tdeg)
            if (e) throw Error("filtration_dims: element involves central variables");
        for (auto& [basis_mono, coeff] : pth_power_decompose(c)) {
            FiltrationCol col{m.xdeg, basis_mono};
            auto it = row.find(col);
            if (it == row.end())
                row.emplace(col, coeff);
            else
                it->second = it->second + coeff;
        }
    }
    return row;
}

}  // namespace

std::vector<std::size_t> filtration_dims(const OreRingPtr& ring, int n_max) {
    if (n_max < 0) throw Error("filtration_dims: n_max must be nonnegative");
    std::vector<Monomial> basis = pth_power_basis(ring->coeffs);

    std::vector<OreElement> gens;
    for (const auto& m : basis)
        gens.push_back(OreElement::coefficient(
            ring, RatFunc(MultiPoly::of_term(ring->coeffs, m, Scalar::of_int(ring->coeffs->characteristic, 1)))));
    gens.push_back(OreElement::skew(ring));

    SparseEchelon<FiltrationCol, FiltrationColLess> ech;
    std::vector<OreElement> frontier;
    std::vector<std::size_t> dims;

    // level 0: the K-basis itself
    for (std::size_t i = 0; i + 1 < gens.size(); ++i)
        if (ech.insert(coordinates_over_k(gens[i]))) frontier.push_back(gens[i]);
    dims.push_back(ech.rank());

    for (int n = 1; n <= n_max; ++n) {
        std::vector<OreElement> next;
        for (const auto& e : frontier) {
            for (const auto& g : gens) {
                OreElement prod = e * g;
                if (ech.insert(coordinates_over_k(prod))) next.push_back(std::move(prod));
            }
        }
        frontier = std::move(next);
        dims.push_back(ech.rank());
    }
    return dims;
}

std::string OreElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        if (!first) os << " + ";
        first = false;
        std::string cs = c.str();
        bool unit_coeff = cs == "1" && m.degree() > 0;
        bool needs_paren = c.num().term_count() > 1 || !c.is_polynomial();
        if (!unit_coeff) os << (needs_paren ? "(" : "") << cs << (needs_paren ? ")" : "");
        bool printed = !unit_coeff;
        if (m.xdeg) {
            if (printed) os << "*";
            os << ring_->skew_var;
            if (m.xdeg > 1) os << "^" << m.xdeg;
            printed = true;
        }
        for (std::uint32_t i = 0; i < m.tdeg.size(); ++i) {
            if (!m.tdeg[i]) continue;
            if (printed) os << "*";
            os << ring_->central_vars[i];
            if (m.tdeg[i] > 1) os << "^" << m.tdeg[i];
            printed = true;
        }
        if (!printed) os << cs;
    }
    return os.str();
}

}  // namespace orekit
