#include "orekit/poly.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orekit/config.hpp"

namespace orekit {

Monomial Monomial::var(std::uint32_t index, std::uint32_t e) {
    Monomial m;
    if (e > 0) m.exps.emplace_back(index, e);
    return m;
}

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (auto& [v, e] : exps) d += e;
    return d;
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
    for (auto& [v, e] : exps)
        if (v == var) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.exps.reserve(exps.size() + o.exps.size());
    auto i = exps.begin(), j = o.exps.begin();
    while (i != exps.end() || j != o.exps.end()) {
        if (j == o.exps.end() || (i != exps.end() && i->first < j->first))
            r.exps.push_back(*i++);
        else if (i == exps.end() || j->first < i->first)
            r.exps.push_back(*j++);
        else {
            r.exps.emplace_back(i->first, i->second + j->second);
            ++i, ++j;
        }
    }
    return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
    Monomial r;
    auto i = exps.begin();
    auto j = o.exps.begin();
    while (j != o.exps.end()) {
        while (i != exps.end() && i->first < j->first) r.exps.push_back(*i++);
        if (i == exps.end() || i->first != j->first || i->second < j->second) return std::nullopt;
        if (i->second > j->second) r.exps.emplace_back(i->first, i->second - j->second);
        ++i, ++j;
    }
    while (i != exps.end()) r.exps.push_back(*i++);
    return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
    Monomial r;
    auto i = exps.begin(), j = o.exps.begin();
    while (i != exps.end() && j != o.exps.end()) {
        if (i->first < j->first)
            ++i;
        else if (j->first < i->first)
            ++j;
        else {
            r.exps.emplace_back(i->first, std::min(i->second, j->second));
            ++i, ++j;
        }
    }
    return r;
}

Monomial Monomial::pow(std::uint32_t e) const {
    Monomial r;
    if (e == 0) return r;
    r.exps = exps;
    for (auto& [v, x] : r.exps) x *= e;
    return r;
}

std::string Monomial::str(const FieldDescriptor& field) const {
    if (is_one()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [v, e] : exps) {
        if (!first) os << "*";
        first = false;
        os << field.var_name(v);
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    std::uint64_t da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    // lex with x1 > x2 > ...: at the smallest variable index where they
    // differ, the larger exponent wins.
    auto i = a.exps.begin(), j = b.exps.begin();
    while (i != a.exps.end() && j != b.exps.end()) {
        if (i->first != j->first) {
            // the one holding the smaller index has positive exponent there
            return i->first > j->first;  // a lacks weight on the earlier var => a < b iff b owns it
        }
        if (i->second != j->second) return i->second < j->second;
        ++i, ++j;
    }
    return i == a.exps.end() && j != b.exps.end();
}

MultiPoly MultiPoly::constant(FieldPtr field, std::int64_t n) {
    Scalar s = Scalar::of_int(field->characteristic, n);
    return constant(std::move(field), std::move(s));
}

MultiPoly MultiPoly::constant(FieldPtr field, Scalar s) {
    MultiPoly p(std::move(field));
    if (!s.is_zero()) p.terms_.emplace(Monomial::one(), std::move(s));
    return p;
}

MultiPoly MultiPoly::variable(FieldPtr field, std::uint32_t index, std::uint32_t e) {
    if (index >= field->nvars()) throw Error("variable index out of range");
    Scalar one = Scalar::of_int(field->characteristic, 1);
    MultiPoly p(field);
    p.terms_.emplace(Monomial::var(index, e), std::move(one));
    return p;
}

MultiPoly MultiPoly::variable(FieldPtr field, std::string_view name, std::uint32_t e) {
    auto idx = field->var_index(name);
    if (!idx) throw Error("unknown variable: " + std::string(name));
    return variable(std::move(field), *idx, e);
}

MultiPoly MultiPoly::of_term(FieldPtr field, Monomial m, Scalar c) {
    MultiPoly p(std::move(field));
    if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
    return p;
}

bool MultiPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Scalar MultiPoly::constant_term() const {
    auto it = terms_.find(Monomial::one());
    if (it == terms_.end()) return Scalar::of_int(field_->characteristic, 0);
    return it->second;
}

std::optional<std::uint64_t> MultiPoly::total_degree() const {
    if (terms_.empty()) return std::nullopt;  // degree of 0 is undefined
    return terms_.rbegin()->first.degree();
}

std::optional<std::uint32_t> MultiPoly::degree_in(std::uint32_t var) const {
    if (terms_.empty()) return std::nullopt;
    std::uint32_t d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
    return d;
}

const std::pair<const Monomial, Scalar>& MultiPoly::leading_term() const {
    if (terms_.empty()) throw Error("leading term of zero polynomial");
    return *terms_.rbegin();
}

void MultiPoly::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    require_same_field(field_, o.field_);
    MultiPoly r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    require_same_field(field_, o.field_);
    MultiPoly r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(field_);
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly MultiPoly::scaled(const Scalar& c) const {
    MultiPoly r(field_);
    if (c.is_zero()) return r;
    for (auto& [m, k] : terms_) {
        Scalar v = k * c;
        if (!v.is_zero()) r.terms_.emplace(m, std::move(v));
    }
    return r;
}

MultiPoly MultiPoly::mul_monomial(const Monomial& m, const Scalar& c) const {
    MultiPoly r(field_);
    if (c.is_zero()) return r;
    for (auto& [mm, k] : terms_) {
        Scalar v = k * c;
        if (!v.is_zero()) r.terms_.emplace(mm * m, std::move(v));
    }
    return r;
}

MultiPoly MultiPoly::mul_serial(const MultiPoly& a, const MultiPoly& b) {
    require_same_field(a.field_, b.field_);
    MultiPoly r(a.field_);
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

MultiPoly MultiPoly::mul_parallel(const MultiPoly& a, const MultiPoly& b) {
    require_same_field(a.field_, b.field_);
#ifdef _OPENMP
    std::vector<const std::pair<const Monomial, Scalar>*> at;
    at.reserve(a.terms_.size());
    for (auto& t : a.terms_) at.push_back(&t);

    int nthreads = omp_get_max_threads();
    std::vector<MultiPoly> partial(static_cast<std::size_t>(nthreads), MultiPoly(a.field_));
#pragma omp parallel num_threads(nthreads)
    {
        MultiPoly& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(at.size()); ++i) {
            for (auto& [mb, cb] : b.terms_) local.add_term(at[static_cast<std::size_t>(i)]->first * mb,
                                                           at[static_cast<std::size_t>(i)]->second * cb);
        }
    }
    // merge in thread order: addition is commutative and exact, so the
    // result is identical to the serial kernel
    MultiPoly r(a.field_);
    for (auto& part : partial)
        for (auto& [m, c] : part.terms_) r.add_term(m, c);
    return r;
#else
    return mul_serial(a, b);
#endif
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (parallel_enabled() && terms_.size() * o.terms_.size() >= parallel_threshold())
        return mul_parallel(*this, o);
    return mul_serial(*this, o);
}

MultiPoly MultiPoly::pow(std::uint64_t e) const {
    MultiPoly acc = one(field_);
    MultiPoly base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    require_same_field(field_, o.field_);
    return terms_ == o.terms_;
}

Monomial MultiPoly::monomial_content() const {
    if (terms_.empty()) return Monomial::one();
    Monomial g = terms_.begin()->first;
    for (auto& [m, c] : terms_) {
        g = g.gcd(m);
        if (g.is_one()) break;
    }
    return g;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& d) const {
    require_same_field(field_, d.field_);
    if (d.is_zero()) throw Error("division by zero polynomial");
    MultiPoly q(field_);
    MultiPoly r = *this;
    const auto& [dm, dc] = d.leading_term();
    while (!r.is_zero()) {
        const auto& [rm, rc] = r.leading_term();
        auto m = rm.divide(dm);
        if (!m) return std::nullopt;
        Scalar c = rc / dc;
        q.add_term(*m, c);
        r = r - d.mul_monomial(*m, c);
    }
    return q;
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op) {
    switch (op) {
        case PolyOp::add: return a + b;
        case PolyOp::sub: return a - b;
        case PolyOp::mul: return a * b;
    }
    throw Error("bad PolyOp");
}

std::map<std::uint32_t, MultiPoly> univariate_view(const MultiPoly& p, std::uint32_t v) {
    std::map<std::uint32_t, MultiPoly> out;
    for (auto& [m, c] : p.terms()) {
        std::uint32_t e = m.exponent(v);
        Monomial rest;
        for (auto& [var, x] : m.exps)
            if (var != v) rest.exps.emplace_back(var, x);
        auto it = out.find(e);
        if (it == out.end()) it = out.emplace(e, MultiPoly::zero(p.field())).first;
        it->second.add_term(rest, c);
    }
    return out;
}

MultiPoly from_univariate_view(const FieldPtr& field, std::uint32_t v,
                               const std::map<std::uint32_t, MultiPoly>& coeffs) {
    MultiPoly r(field);
    for (auto& [e, c] : coeffs)
        for (auto& [m, s] : c.terms()) r.add_term(m * Monomial::var(v, e), s);
    return r;
}

namespace {

// gcd of all scalar-leading-normalized content pieces is handled by the
// caller; here both inputs are nonzero and non-constant in v.
MultiPoly content_in(const MultiPoly& p, std::uint32_t v) {
    auto view = univariate_view(p, v);
    MultiPoly g = MultiPoly::zero(p.field());
    for (auto& [e, c] : view) {
        g = poly_gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

MultiPoly primitive_part(const MultiPoly& p, const MultiPoly& cont) {
    auto q = p.divide_exact(cont);
    if (!q) throw Error("content does not divide polynomial");
    return *q;
}

std::optional<std::uint32_t> main_variable(const MultiPoly& a, const MultiPoly& b) {
    std::optional<std::uint32_t> best;
    for (const MultiPoly* p : {&a, &b})
        for (auto& [m, c] : p->terms())
            for (auto& [v, e] : m.exps)
                if (!best || v < *best) best = v;
    return best;
}

// pseudo-remainder of f by g in the variable v
MultiPoly pseudo_rem(MultiPoly f, const MultiPoly& g, std::uint32_t v) {
    auto gview = univariate_view(g, v);
    std::uint32_t dg = gview.rbegin()->first;
    const MultiPoly& lcg = gview.rbegin()->second;
    while (!f.is_zero()) {
        auto fview = univariate_view(f, v);
        std::uint32_t df = fview.rbegin()->first;
        if (df < dg) break;
        const MultiPoly& lcf = fview.rbegin()->second;
        // f <- lc(g) f - lc(f) v^(df-dg) g
        MultiPoly shift = MultiPoly::variable(f.field(), v, df - dg);
        f = lcg * f - lcf * shift * g;
    }
    return f;
}

MultiPoly monic(const MultiPoly& p) {
    if (p.is_zero()) return p;
    return p.scaled(p.leading_term().second.inverse());
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    require_same_field(a.field(), b.field());
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return MultiPoly::one(a.field());

    Monomial mg = a.monomial_content().gcd(b.monomial_content());
    MultiPoly a1 = *a.divide_exact(MultiPoly::of_term(a.field(), a.monomial_content(),
                                                      Scalar::of_int(a.field()->characteristic, 1)));
    MultiPoly b1 = *b.divide_exact(MultiPoly::of_term(b.field(), b.monomial_content(),
                                                      Scalar::of_int(b.field()->characteristic, 1)));

    MultiPoly result(a.field());
    if (a1.is_constant() || b1.is_constant()) {
        result = MultiPoly::one(a.field());
    } else {
        std::uint32_t v = *main_variable(a1, b1);
        MultiPoly ca = content_in(a1, v), cb = content_in(b1, v);
        MultiPoly c = poly_gcd(ca, cb);
        MultiPoly f = primitive_part(a1, ca), g = primitive_part(b1, cb);
        if (univariate_view(f, v).rbegin()->first < univariate_view(g, v).rbegin()->first) std::swap(f, g);
        while (!g.is_zero()) {
            MultiPoly r = pseudo_rem(f, g, v);
            f = std::move(g);
            if (r.is_zero()) {
                g = r;
            } else {
                Monomial mc = r.monomial_content();
                r = *r.divide_exact(MultiPoly::of_term(r.field(), mc, Scalar::of_int(r.field()->characteristic, 1)));
                if (r.is_constant()) {
                    // coprime in v
                    f = MultiPoly::one(a.field());
                    g = MultiPoly::zero(a.field());
                } else {
                    MultiPoly cr = content_in(r, v);
                    g = primitive_part(r, cr);
                }
            }
        }
        result = c * f;
    }
    result = result.mul_monomial(mg, Scalar::of_int(a.field()->characteristic, 1));
    return monic(result);
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // leading term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) os << "-", cs = cs.substr(1);
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        if (m.is_one())
            os << cs;
        else if (cs == "1")
            os << m.str(*field_);
        else
            os << cs << "*" << m.str(*field_);
    }
    return os.str();
}

}  // namespace orekit
