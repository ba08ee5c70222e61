#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orekit/binomial.hpp"
#include "orekit/ore.hpp"

namespace orekit {

// A Hasse-Schmidt derivation is stored as a truncated-jet homomorphism
// G: a -> sum_i d_i(a) s^i mod s^{N+1}, determined by generator jets. The
// convolution axiom then holds by construction and d_i(a) is coefficient
// extraction from G(a).

struct FieldAlgebra {
    using Elem = RatFunc;
    FieldPtr field;

    std::uint64_t characteristic() const { return field->characteristic; }
    Elem zero() const { return RatFunc::zero(field); }
    Elem one() const { return RatFunc::one(field); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem scale(const Elem& a, const Scalar& c) const { return a.scaled(c); }
    Elem pow(const Elem& a, std::uint64_t e) const { return a.pow(static_cast<std::int64_t>(e)); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool equal(const Elem& a, const Elem& b) const { return ratfunc_eq(a, b); }
    Elem invert(const Elem& a) const { return a.inverse(); }
    bool invertible(const Elem& a) const { return !a.is_zero(); }

    std::vector<std::string> generators() const { return field->variables; }
    Elem generator(const std::string& name) const { return RatFunc::variable(field, name); }
    std::string str(const Elem& a) const { return a.str(); }
};

struct OreAlgebra {
    using Elem = OreElement;
    OreRingPtr ring;

    std::uint64_t characteristic() const { return ring->coeffs->characteristic; }
    Elem zero() const { return OreElement::zero(ring); }
    Elem one() const { return OreElement::one(ring); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return ore_mul(a, b); }
    Elem neg(const Elem& a) const { return -a; }
    Elem scale(const Elem& a, const Scalar& c) const {
        return a.scaled(RatFunc::constant(ring->coeffs, c));
    }
    Elem pow(const Elem& a, std::uint64_t e) const { return a.pow(e); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool equal(const Elem& a, const Elem& b) const { return a == b; }
    bool invertible(const Elem& a) const { return a.is_coefficient() && !a.is_zero(); }
    Elem invert(const Elem& a) const {
        if (!invertible(a)) throw Error("inverse of a non-coefficient ore element");
        return OreElement::coefficient(ring, a.coefficient_value().inverse());
    }

    std::vector<std::string> generators() const {
        std::vector<std::string> g = ring->coeffs->variables;
        g.push_back(ring->skew_var);
        for (auto& t : ring->central_vars) g.push_back(t);
        return g;
    }
    Elem generator(const std::string& name) const {
        if (auto v = ring->coeffs->var_index(name))
            return OreElement::coefficient(ring, RatFunc::variable(ring->coeffs, *v));
        if (name == ring->skew_var) return OreElement::skew(ring);
        if (auto i = ring->central_index(name)) return OreElement::central(ring, *i);
        throw Error("unknown ring generator: " + name);
    }
    std::string str(const Elem& a) const { return a.str(); }
};

/// Element of A[s]/(s^{N+1}); the jet variable s is central.
template <class Alg>
struct JetVec {
    Alg alg;
    int N = 0;
    std::vector<typename Alg::Elem> c;  // N+1 components

    static JetVec constant(const Alg& a, int n, typename Alg::Elem e) {
        JetVec v{a, n, {}};
        v.c.assign(static_cast<std::size_t>(n) + 1, a.zero());
        v.c[0] = std::move(e);
        return v;
    }

    JetVec add(const JetVec& o) const {
        JetVec r = *this;
        for (int i = 0; i <= N; ++i) r.c[i] = alg.add(r.c[i], o.c[i]);
        return r;
    }
    JetVec sub(const JetVec& o) const {
        JetVec r = *this;
        for (int i = 0; i <= N; ++i) r.c[i] = alg.sub(r.c[i], o.c[i]);
        return r;
    }
    JetVec mul(const JetVec& o) const {
        JetVec r = constant(alg, N, alg.zero());
        for (int i = 0; i <= N; ++i) {
            if (alg.is_zero(c[i])) continue;
            for (int j = 0; i + j <= N; ++j) {
                if (alg.is_zero(o.c[j])) continue;
                r.c[i + j] = alg.add(r.c[i + j], alg.mul(c[i], o.c[j]));
            }
        }
        return r;
    }
    JetVec pow(std::uint64_t e) const {
        JetVec acc = constant(alg, N, alg.one());
        JetVec base = *this;
        while (e) {
            if (e & 1) acc = acc.mul(base);
            base = base.mul(base);
            e >>= 1;
        }
        return acc;
    }
    /// Truncated geometric series; the constant component must be a unit.
    JetVec inverse() const {
        if (!alg.invertible(c[0])) throw Error("jet inversion: constant term is not a unit");
        typename Alg::Elem u = alg.invert(c[0]);
        // v = c0 (1 + w), w = c0^{-1}(v - c0); v^{-1} = (sum (-w)^i) c0^{-1}
        JetVec w = constant(alg, N, alg.zero());
        for (int i = 1; i <= N; ++i) w.c[i] = alg.mul(u, c[i]);
        JetVec geo = constant(alg, N, alg.one());
        JetVec term = constant(alg, N, alg.one());
        for (int i = 1; i <= N; ++i) {
            term = term.mul(w);
            for (int k = 0; k <= N; ++k)
                geo.c[k] = (i % 2) ? alg.sub(geo.c[k], term.c[k]) : alg.add(geo.c[k], term.c[k]);
        }
        JetVec r = geo;
        for (int k = 0; k <= N; ++k) r.c[k] = alg.mul(geo.c[k], u);
        return r;
    }
    bool equal(const JetVec& o) const {
        for (int i = 0; i <= N; ++i)
            if (!alg.equal(c[i], o.c[i])) return false;
        return true;
    }
};

template <class Alg>
class JetHom;

JetVec<FieldAlgebra> jet_extend(const JetHom<FieldAlgebra>& j, const RatFunc& a);
JetVec<OreAlgebra> jet_extend(const JetHom<OreAlgebra>& j, const OreElement& a);

template <class Alg>
class JetHom {
  public:
    using Elem = typename Alg::Elem;

    JetHom(Alg alg, int truncation, std::map<std::string, JetVec<Alg>> generator_jets)
        : alg_(std::move(alg)), N_(truncation), gen_jets_(std::move(generator_jets)) {
        if (N_ < 1) throw Error("jet truncation must be positive");
        for (const auto& g : alg_.generators()) {
            auto it = gen_jets_.find(g);
            if (it == gen_jets_.end()) throw Error("jet: missing generator jet for " + g);
            if (!alg_.equal(it->second.c[0], alg_.generator(g)))
                throw Error("jet: component 0 must be the generator itself: " + g);
        }
    }

    const Alg& algebra() const { return alg_; }
    int truncation() const { return N_; }
    const std::map<std::string, JetVec<Alg>>& generator_jets() const { return gen_jets_; }

    JetVec<Alg> extend(const Elem& a) const { return jet_extend(*this, a); }
    /// d_i(a): coefficient extraction from G(a).
    Elem component(const Elem& a, int i) const { return extend(a).c.at(static_cast<std::size_t>(i)); }
    /// ker(d) = intersection of Ker(d_i), certified up to the truncation.
    bool in_kernel(const Elem& a) const {
        JetVec<Alg> v = extend(a);
        for (int i = 1; i <= N_; ++i)
            if (!alg_.is_zero(v.c[static_cast<std::size_t>(i)])) return false;
        return true;
    }

  private:
    Alg alg_;
    int N_;
    std::map<std::string, JetVec<Alg>> gen_jets_;
};

bool kernel_membership(const JetHom<FieldAlgebra>& j, const RatFunc& a);
bool kernel_membership(const JetHom<OreAlgebra>& j, const OreElement& a);

struct JetCertificate {
    bool ok = false;
    std::string detail;  // index and pair of the first violation
};

/// The divided-power family on the named variable: G(v) = v + s, every other
/// generator in the kernel.
JetHom<FieldAlgebra> divided_power_jet(const FieldPtr& field, std::string_view var, int N);
JetHom<OreAlgebra> divided_power_jet(const OreRingPtr& ring, std::string_view central_var, int N);

/// Characteristic zero only: d_n = delta^n / n!.
JetHom<FieldAlgebra> canonical_from_derivation(const DerivationSpec& d, int N);

/// Single divided-power term: Delta_i^n applied to a monomial in t1..td.
/// Returns the image term (binomial coefficient times the lowered monomial).
MultiPoly divided_power_delta(const FieldPtr& field, std::uint32_t var, std::uint32_t n, const Monomial& m);
/// Delta_var^n termwise on a polynomial.
MultiPoly divided_power_apply(const MultiPoly& p, std::uint32_t var, std::uint32_t n);

/// Verifies d_n(ab) = sum d_i(a) d_{n-i}(b) for each pair, up to N, both as
/// the indexwise convolution identity and as multiplicativity of G.
template <class Alg>
JetCertificate hs_axiom_check(const JetHom<Alg>& j,
                              const std::vector<std::pair<typename Alg::Elem, typename Alg::Elem>>& pairs) {
    const Alg& alg = j.algebra();
    int N = j.truncation();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [a, b] = pairs[k];
        JetVec<Alg> ga = j.extend(a);
        JetVec<Alg> gb = j.extend(b);
        JetVec<Alg> gab = j.extend(alg.mul(a, b));
        JetVec<Alg> conv = ga.mul(gb);  // the convolution route
        for (int n = 0; n <= N; ++n) {
            if (!alg.equal(gab.c[static_cast<std::size_t>(n)], conv.c[static_cast<std::size_t>(n)]))
                return {false, "convolution identity fails at index " + std::to_string(n) + ", pair " +
                                   std::to_string(k)};
        }
        if (!gab.equal(conv)) return {false, "G multiplicativity fails at pair " + std::to_string(k)};
    }
    return {true, ""};
}

/// Same identity on a raw component table (claimed values of d_i at given
/// elements). Unlike a JetHom, a raw table carries no hom structure, so a
/// tampered entry is detectable here.
template <class Alg>
JetCertificate hs_axiom_check_components(
    const Alg& alg, int N,
    const std::function<typename Alg::Elem(const typename Alg::Elem&, int)>& component,
    const std::vector<std::pair<typename Alg::Elem, typename Alg::Elem>>& pairs) {
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [a, b] = pairs[k];
        typename Alg::Elem ab = alg.mul(a, b);
        for (int n = 0; n <= N; ++n) {
            typename Alg::Elem conv = alg.zero();
            for (int i = 0; i <= n; ++i) conv = alg.add(conv, alg.mul(component(a, i), component(b, n - i)));
            if (!alg.equal(component(ab, n), conv))
                return {false, "convolution identity fails at index " + std::to_string(n) + ", pair " +
                                   std::to_string(k)};
        }
    }
    return {true, ""};
}

/// Verifies d_i . d_j = C(i+j, i) d_{i+j} on the samples for i+j <= N.
template <class Alg>
JetCertificate iterativity_check(const JetHom<Alg>& j, const std::vector<typename Alg::Elem>& samples) {
    const Alg& alg = j.algebra();
    int N = j.truncation();
    std::uint64_t p = alg.characteristic();
    for (std::size_t k = 0; k < samples.size(); ++k) {
        JetVec<Alg> ga = j.extend(samples[k]);
        for (int jj = 0; jj <= N; ++jj) {
            JetVec<Alg> inner = j.extend(ga.c[static_cast<std::size_t>(jj)]);
            for (int i = 0; i + jj <= N; ++i) {
                Scalar binom = p ? Scalar::modp_raw(p, lucas_binom(static_cast<std::uint64_t>(i + jj),
                                                                  static_cast<std::uint64_t>(i), p))
                                 : Scalar::of_mpz(0, binom_z(static_cast<std::uint64_t>(i + jj),
                                                             static_cast<std::uint64_t>(i)));
                typename Alg::Elem lhs = inner.c[static_cast<std::size_t>(i)];
                typename Alg::Elem rhs = alg.scale(ga.c[static_cast<std::size_t>(i + jj)], binom);
                if (!alg.equal(lhs, rhs))
                    return {false, "iterativity fails at (i, j) = (" + std::to_string(i) + ", " +
                                       std::to_string(jj) + "), sample " + std::to_string(k)};
            }
        }
    }
    return {true, ""};
}

/// Components of an iterative family in characteristic p > 0: the maps at
/// indices 1, p, p^2, ..., applied to whole elements.
template <class Elem>
struct IterativeHSSpec {
    std::uint64_t p = 0;
    std::vector<std::function<Elem(const Elem&)>> component_maps;  // [d_1, d_p, d_{p^2}, ...]
};

/// d_i = prod_j (d_{p^j})^{i_j} / prod_j (i_j)! from the base-p digits of i.
/// Each digit is < p, so every digit factorial is a unit mod p.
template <class Alg>
std::function<typename Alg::Elem(const typename Alg::Elem&)> iterative_from_components(
    const Alg& alg, const IterativeHSSpec<typename Alg::Elem>& spec, std::uint64_t index) {
    if (!is_prime(spec.p)) throw Error("iterative reconstruction needs a prime characteristic");
    std::vector<std::uint32_t> digits;
    std::uint64_t i = index;
    while (i) {
        digits.push_back(static_cast<std::uint32_t>(i % spec.p));
        i /= spec.p;
    }
    if (digits.size() > spec.component_maps.size())
        throw Error("iterative reconstruction: not enough component maps for index " + std::to_string(index));
    std::uint64_t denom = 1;
    for (std::uint32_t d : digits) {
        std::uint64_t f = 1;
        for (std::uint32_t x = 2; x <= d; ++x) f = (f * x) % spec.p;
        denom = (denom * f) % spec.p;
    }
    Scalar unit = Scalar::modp_raw(spec.p, mod_inverse(denom, spec.p));
    auto maps = spec.component_maps;
    return [alg, digits, maps, unit](const typename Alg::Elem& a) {
        typename Alg::Elem acc = a;
        for (std::size_t jdx = digits.size(); jdx-- > 0;)
            for (std::uint32_t rep = 0; rep < digits[jdx]; ++rep) acc = maps[jdx](acc);
        return alg.scale(acc, unit);
    };
}

/// Specializes the jet at central values for a subset of the variables:
/// mu_j(a) = d_j(a) evaluated at those values. The substituted family is the
/// composite of G with the evaluation homomorphism, so mu_0 = id and the
/// convolution axiom is inherited.
JetHom<FieldAlgebra> specialize_at_central(const JetHom<FieldAlgebra>& j, const FieldPtr& target,
                                           const std::map<std::string, RatFunc>& central_values);

}  // namespace orekit
