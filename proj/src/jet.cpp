#include "orekit/jet.hpp"

namespace orekit {

namespace {

template <class Alg>
struct JetPowerCache {
    std::map<std::string, std::vector<JetVec<Alg>>> powers;

    const JetVec<Alg>& get(const JetHom<Alg>& j, const std::string& name, std::uint32_t e) {
        auto& row = powers[name];
        if (row.empty()) {
            row.push_back(JetVec<Alg>::constant(j.algebra(), j.truncation(), j.algebra().one()));
            row.push_back(j.generator_jets().at(name));
        }
        while (row.size() <= e) row.push_back(row.back().mul(row[1]));
        return row[e];
    }
};

JetVec<FieldAlgebra> eval_poly_jet(const JetHom<FieldAlgebra>& j, const MultiPoly& p,
                                   JetPowerCache<FieldAlgebra>& cache) {
    const FieldAlgebra& alg = j.algebra();
    JetVec<FieldAlgebra> acc = JetVec<FieldAlgebra>::constant(alg, j.truncation(), alg.zero());
    for (auto& [m, c] : p.terms()) {
        JetVec<FieldAlgebra> term = JetVec<FieldAlgebra>::constant(
            alg, j.truncation(), RatFunc::constant(alg.field, c));
        for (auto& [v, e] : m.exps) term = term.mul(cache.get(j, alg.field->var_name(v), e));
        acc = acc.add(term);
    }
    return acc;
}

}  // namespace

JetVec<FieldAlgebra> jet_extend(const JetHom<FieldAlgebra>& j, const RatFunc& a) {
    require_same_field(j.algebra().field, a.field());
    JetPowerCache<FieldAlgebra> cache;
    JetVec<FieldAlgebra> num = eval_poly_jet(j, a.num(), cache);
    if (a.is_polynomial()) {
        Scalar c = a.den().constant_term();
        if (c.is_one()) return num;
        JetVec<FieldAlgebra> r = num;
        for (auto& comp : r.c) comp = comp.scaled(c.inverse());
        return r;
    }
    JetVec<FieldAlgebra> den = eval_poly_jet(j, a.den(), cache);
    return num.mul(den.inverse());
}

JetVec<OreAlgebra> jet_extend(const JetHom<OreAlgebra>& j, const OreElement& a) {
    require_same_ring(j.algebra().ring, a.ring());
    const OreAlgebra& alg = j.algebra();
    const OreRingPtr& ring = alg.ring;
    JetPowerCache<OreAlgebra> cache;

    auto eval_coeff_poly = [&](const MultiPoly& p) {
        JetVec<OreAlgebra> acc = JetVec<OreAlgebra>::constant(alg, j.truncation(), alg.zero());
        for (auto& [m, c] : p.terms()) {
            JetVec<OreAlgebra> term = JetVec<OreAlgebra>::constant(
                alg, j.truncation(), OreElement::coefficient(ring, RatFunc::constant(ring->coeffs, c)));
            for (auto& [v, e] : m.exps) term = term.mul(cache.get(j, ring->coeffs->var_name(v), e));
            acc = acc.add(term);
        }
        return acc;
    };

    JetVec<OreAlgebra> out = JetVec<OreAlgebra>::constant(alg, j.truncation(), alg.zero());
    for (auto& [m, c] : a.terms()) {
        JetVec<OreAlgebra> term = eval_coeff_poly(c.num());
        if (!c.is_polynomial())
            term = term.mul(eval_coeff_poly(c.den()).inverse());
        else if (!c.den().constant_term().is_one())
            term = term.mul(JetVec<OreAlgebra>::constant(
                alg, j.truncation(),
                OreElement::coefficient(ring, RatFunc::constant(ring->coeffs, c.den().constant_term().inverse()))));
        if (m.xdeg) term = term.mul(cache.get(j, ring->skew_var, m.xdeg));
        for (std::uint32_t i = 0; i < m.tdeg.size(); ++i)
            if (m.tdeg[i]) term = term.mul(cache.get(j, ring->central_vars[i], m.tdeg[i]));
        out = out.add(term);
    }
    return out;
}

bool kernel_membership(const JetHom<FieldAlgebra>& j, const RatFunc& a) { return j.in_kernel(a); }
bool kernel_membership(const JetHom<OreAlgebra>& j, const OreElement& a) { return j.in_kernel(a); }

JetHom<FieldAlgebra> divided_power_jet(const FieldPtr& field, std::string_view var, int N) {
    FieldAlgebra alg{field};
    std::map<std::string, JetVec<FieldAlgebra>> jets;
    for (const auto& g : field->variables) {
        JetVec<FieldAlgebra> v = JetVec<FieldAlgebra>::constant(alg, N, RatFunc::variable(field, g));
        if (g == var) v.c[1] = RatFunc::one(field);  // G(v) = v + s
        jets.emplace(g, std::move(v));
    }
    if (!field->var_index(var)) throw Error("divided_power_jet: unknown variable");
    return JetHom<FieldAlgebra>(alg, N, std::move(jets));
}

JetHom<OreAlgebra> divided_power_jet(const OreRingPtr& ring, std::string_view central_var, int N) {
    OreAlgebra alg{ring};
    auto idx = ring->central_index(central_var);
    if (!idx) throw Error("divided_power_jet: not a central variable");
    std::map<std::string, JetVec<OreAlgebra>> jets;
    for (const auto& g : alg.generators()) {
        JetVec<OreAlgebra> v = JetVec<OreAlgebra>::constant(alg, N, alg.generator(g));
        if (g == central_var) v.c[1] = OreElement::one(ring);
        jets.emplace(g, std::move(v));
    }
    return JetHom<OreAlgebra>(alg, N, std::move(jets));
}

JetHom<FieldAlgebra> canonical_from_derivation(const DerivationSpec& d, int N) {
    if (d.field->characteristic != 0)
        throw Error("canonical Hasse-Schmidt derivation requires characteristic zero");
    FieldAlgebra alg{d.field};
    std::map<std::string, JetVec<FieldAlgebra>> jets;
    for (std::uint32_t v = 0; v < d.field->nvars(); ++v) {
        JetVec<FieldAlgebra> jet = JetVec<FieldAlgebra>::constant(alg, N, RatFunc::variable(d.field, v));
        RatFunc cur = jet.c[0];
        mpz_class fact = 1;
        for (int n = 1; n <= N; ++n) {
            cur = apply_derivation(d, cur);
            fact *= n;
            jet.c[static_cast<std::size_t>(n)] = cur.scaled(Scalar::rational(mpq_class(1) / mpq_class(fact)));
        }
        jets.emplace(d.field->var_name(v), std::move(jet));
    }
    return JetHom<FieldAlgebra>(alg, N, std::move(jets));
}

MultiPoly divided_power_delta(const FieldPtr& field, std::uint32_t var, std::uint32_t n, const Monomial& m) {
    std::uint32_t mi = m.exponent(var);
    if (mi < n) return MultiPoly::zero(field);
    Scalar binom = field->characteristic
                       ? Scalar::modp_raw(field->characteristic, lucas_binom(mi, n, field->characteristic))
                       : Scalar::of_mpz(0, binom_z(mi, n));
    Monomial lowered = *m.divide(Monomial::var(var, n));
    return MultiPoly::of_term(field, lowered, binom);
}

MultiPoly divided_power_apply(const MultiPoly& p, std::uint32_t var, std::uint32_t n) {
    MultiPoly out(p.field());
    for (auto& [m, c] : p.terms()) {
        MultiPoly t = divided_power_delta(p.field(), var, n, m);
        out = out + t.scaled(c);
    }
    return out;
}

JetHom<FieldAlgebra> specialize_at_central(const JetHom<FieldAlgebra>& j, const FieldPtr& target,
                                           const std::map<std::string, RatFunc>& central_values) {
    const FieldPtr& source = j.algebra().field;
    std::map<std::uint32_t, RatFunc> images;
    for (std::uint32_t v = 0; v < source->nvars(); ++v) {
        const std::string& name = source->var_name(v);
        auto it = central_values.find(name);
        if (it != central_values.end()) {
            require_same_field(target, it->second.field());
            images.emplace(v, it->second);
        } else {
            if (!target->var_index(name))
                throw Error("specialize_at_central: variable " + name + " is neither kept nor substituted");
            images.emplace(v, RatFunc::variable(target, name));
        }
    }
    FieldAlgebra alg{target};
    std::map<std::string, JetVec<FieldAlgebra>> jets;
    for (const auto& g : target->variables) {
        if (central_values.count(g)) throw Error("specialize_at_central: target keeps a substituted variable");
        const JetVec<FieldAlgebra>& src = j.generator_jets().at(g);
        JetVec<FieldAlgebra> dst = JetVec<FieldAlgebra>::constant(alg, j.truncation(), alg.zero());
        for (int i = 0; i <= j.truncation(); ++i)
            dst.c[static_cast<std::size_t>(i)] = eval_ratfunc(src.c[static_cast<std::size_t>(i)], target, images);
        jets.emplace(g, std::move(dst));
    }
    return JetHom<FieldAlgebra>(alg, j.truncation(), std::move(jets));
}

}  // namespace orekit
