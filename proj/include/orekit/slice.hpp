#pragma once

#include "orekit/jet.hpp"

namespace orekit {

struct TruncationExhausted : Error {
    using Error::Error;
};

/// nu(a) = sup{ m : d_m(a) != 0 }, truncation-relative. Kernel elements and
/// 0 itself report 0. Errors out when d_N(a) != 0, since the sup could then
/// exceed the window.
template <class Alg>
int nu(const JetHom<Alg>& j, const typename Alg::Elem& a) {
    JetVec<Alg> v = j.extend(a);
    const int N = j.truncation();
    if (!j.algebra().is_zero(v.c[static_cast<std::size_t>(N)]))
        throw TruncationExhausted("nu: truncation exhausted, d_N(a) != 0");
    for (int m = N - 1; m >= 1; --m)
        if (!j.algebra().is_zero(v.c[static_cast<std::size_t>(m)])) return m;
    return 0;
}

template <class Alg>
bool is_central_in(const Alg&, const typename Alg::Elem&);

inline bool is_central_in(const FieldAlgebra&, const RatFunc&) { return true; }
inline bool is_central_in(const OreAlgebra&, const OreElement& a) { return is_central(a).central; }

/// Checks the slice condition d_1(x) = 1, d_i(x) = 0 for 2 <= i <= N,
/// together with centrality of x.
template <class Alg>
bool is_slice(const JetHom<Alg>& j, const typename Alg::Elem& x) {
    if (!is_central_in(j.algebra(), x)) return false;
    JetVec<Alg> v = j.extend(x);
    if (!j.algebra().equal(v.c[1], j.algebra().one())) return false;
    for (int i = 2; i <= j.truncation(); ++i)
        if (!j.algebra().is_zero(v.c[static_cast<std::size_t>(i)])) return false;
    return true;
}

template <class Alg>
struct SliceDecomposition {
    typename Alg::Elem x;
    std::vector<typename Alg::Elem> coefficients;  // c_0 .. c_m, a = sum c_i x^i
    std::vector<bool> kernel_certificates;         // per coefficient, up to truncation
};

/// The rewriting loop: repeatedly strip c = d_m(a) at m = nu(a) via
/// a <- a - c x^m. nu strictly decreases, so this terminates with a kernel
/// residue, which becomes c_0.
template <class Alg>
SliceDecomposition<Alg> slice_decompose(const JetHom<Alg>& j, typename Alg::Elem a,
                                        const typename Alg::Elem& x) {
    const Alg& alg = j.algebra();
    if (!is_slice(j, x)) throw Error("slice_decompose: slice condition violated");
    int m = nu(j, a);
    SliceDecomposition<Alg> out{x, {}, {}};
    out.coefficients.assign(static_cast<std::size_t>(m) + 1, alg.zero());
    while (true) {
        int cur = nu(j, a);
        if (cur == 0) {
            if (!j.in_kernel(a)) throw Error("slice_decompose: non-kernel residue");
            out.coefficients[0] = a;
            break;
        }
        typename Alg::Elem c = j.component(a, cur);
        if (!j.in_kernel(c))
            throw Error("slice_decompose: top coefficient is not in the kernel (family not iterative?)");
        out.coefficients[static_cast<std::size_t>(cur)] = c;
        a = alg.sub(a, alg.mul(c, alg.pow(x, static_cast<std::uint64_t>(cur))));
        if (alg.is_zero(a)) break;  // c_0 stays zero
        if (nu(j, a) >= cur) throw Error("slice_decompose: nu failed to decrease");
    }
    for (auto& c : out.coefficients) out.kernel_certificates.push_back(j.in_kernel(c));
    return out;
}

/// Reconstruction sum for a decomposition.
template <class Alg>
typename Alg::Elem slice_reassemble(const JetHom<Alg>& j, const SliceDecomposition<Alg>& dec) {
    const Alg& alg = j.algebra();
    typename Alg::Elem acc = alg.zero();
    for (std::size_t i = 0; i < dec.coefficients.size(); ++i)
        acc = alg.add(acc, alg.mul(dec.coefficients[i], alg.pow(dec.x, i)));
    return acc;
}

/// The direct-sum argument: for coefficients b_0..b_s in the kernel and x
/// with d_m(x) != 0, d_{m+i}(x) = 0 for i >= 1, applying d_{ms} to
/// sum b_i x^i isolates b_s d_m(x)^s. Verifies that identity on the data.
template <class Alg>
JetCertificate independence_check(const JetHom<Alg>& j, const std::vector<typename Alg::Elem>& coeffs,
                                  const typename Alg::Elem& x, int m) {
    const Alg& alg = j.algebra();
    if (coeffs.empty()) return {true, "no coefficients"};
    JetVec<Alg> xv = j.extend(x);
    if (alg.is_zero(xv.c[static_cast<std::size_t>(m)])) return {false, "d_m(x) = 0"};
    for (int i = m + 1; i <= j.truncation(); ++i)
        if (!alg.is_zero(xv.c[static_cast<std::size_t>(i)]))
            return {false, "d_{m+i}(x) != 0 at index " + std::to_string(i)};
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!j.in_kernel(coeffs[i])) return {false, "coefficient " + std::to_string(i) + " not in kernel"};

    std::size_t s = coeffs.size() - 1;
    if (static_cast<int>(s) * m > j.truncation()) return {false, "ms exceeds truncation"};
    typename Alg::Elem sum = alg.zero();
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        sum = alg.add(sum, alg.mul(coeffs[i], alg.pow(x, i)));
    typename Alg::Elem lhs = j.component(sum, static_cast<int>(s) * m);
    typename Alg::Elem rhs = alg.mul(coeffs[s], alg.pow(xv.c[static_cast<std::size_t>(m)], s));
    if (!alg.equal(lhs, rhs)) return {false, "d_{ms}(sum) != b_s d_m(x)^s"};
    return {true, ""};
}

template <class Alg>
struct NuStep {
    int m = 0;               // nu before the step
    int r = 0;               // position of the lowest nonzero base-p digit
    std::uint32_t s0 = 0;    // that digit, 1 <= s0 < p
    std::uint64_t s1 = 0;    // m = p^r s0 + p^{r+1} s1
    bool high_branch = false;  // true: s1 >= 1, apply d_{p^r s0}; false: s1 = 0, apply d_{p^r}
    std::uint64_t binom = 0;   // the Lucas-nonvanishing binomial justifying the step
    typename Alg::Elem element;
};

template <class Alg>
struct NuReductionChain {
    std::vector<NuStep<Alg>> steps;
    int terminal_nu = 0;  // always a p-power on success
};

inline bool is_p_power(std::uint64_t m, std::uint64_t p) {
    if (m == 0) return false;
    while (m % p == 0) m /= p;
    return m == 1;
}

/// The p-power reduction of nu: both branches of the digit rule, each step
/// justified by a nonvanishing binomial and a strict nu decrease.
template <class Alg>
NuReductionChain<Alg> nu_reduce(const JetHom<Alg>& j, typename Alg::Elem a, std::uint64_t p) {
    if (!is_prime(p)) throw Error("nu_reduce: p must be prime");
    NuReductionChain<Alg> chain;
    int m = nu(j, a);
    if (m < 1) throw Error("nu_reduce: nu(a) must be at least 1");
    while (!is_p_power(static_cast<std::uint64_t>(m), p)) {
        std::uint64_t mm = static_cast<std::uint64_t>(m);
        int r = 0;
        while (mm % p == 0) {
            mm /= p;
            ++r;
        }
        std::uint32_t s0 = static_cast<std::uint32_t>(mm % p);
        std::uint64_t s1 = mm / p;
        std::uint64_t pr = 1;
        for (int i = 0; i < r; ++i) pr *= p;

        NuStep<Alg> step;
        step.m = m;
        step.r = r;
        step.s0 = s0;
        step.s1 = s1;
        int expected_nu;
        int applied_index;
        if (s1 >= 1) {
            step.high_branch = true;
            applied_index = static_cast<int>(pr * s0);
            step.binom = lucas_binom(p * s1 + s0, s0, p);
            expected_nu = static_cast<int>(pr * p * s1);
        } else {
            // m = p^r s0 with 2 <= s0 < p
            step.high_branch = false;
            applied_index = static_cast<int>(pr);
            step.binom = lucas_binom(pr * s0, pr, p);
            expected_nu = static_cast<int>(pr * (s0 - 1));
        }
        if (step.binom == 0) throw Error("nu_reduce: vanishing binomial; digit rule broken");
        typename Alg::Elem b = j.component(a, applied_index);
        int nb = nu(j, b);
        if (nb != expected_nu || nb >= m)
            throw Error("nu_reduce: chain stalls (family not iterative?)");
        step.element = b;
        chain.steps.push_back(step);
        a = std::move(b);
        m = nb;
    }
    chain.terminal_nu = m;
    return chain;
}

}  // namespace orekit
