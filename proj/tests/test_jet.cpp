#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orekit/jet.hpp"

using namespace orekit;

namespace {

RatFunc rf_int(const FieldPtr& F, std::int64_t n) { return RatFunc::constant(F, n); }

RatFunc random_poly_rf(std::mt19937_64& rng, const FieldPtr& f, int max_deg) {
    std::uniform_int_distribution<int> expd(0, max_deg);
    std::uniform_int_distribution<int> coeff(-4, 4);
    MultiPoly p(f);
    for (int i = 0; i < 3; ++i) {
        Monomial m;
        for (std::uint32_t v = 0; v < f->nvars(); ++v) {
            int e = expd(rng);
            if (e) m.exps.emplace_back(v, static_cast<std::uint32_t>(e));
        }
        p.add_term(m, Scalar::of_int(f->characteristic, coeff(rng)));
    }
    return RatFunc(p);
}

}  // namespace

TEST_CASE("divided-power jet on Q[u]: binomial expansion of u^2") {
    auto F = make_field(0, {"u"});
    auto j = divided_power_jet(F, "u", 8);
    auto v = j.extend(RatFunc::variable(F, "u", 2));
    CHECK(ratfunc_eq(v.c[0], RatFunc::variable(F, "u", 2)));
    CHECK(ratfunc_eq(v.c[1], RatFunc::variable(F, "u").scaled(Scalar::rational(2))));
    CHECK(ratfunc_eq(v.c[2], rf_int(F, 1)));
    for (int i = 3; i <= 8; ++i) CHECK(v.c[static_cast<std::size_t>(i)].is_zero());
}

TEST_CASE("constants have trivial jets") {
    auto F = make_field(0, {"u"});
    auto j = divided_power_jet(F, "u", 6);
    auto v = j.extend(rf_int(F, 7));
    CHECK(ratfunc_eq(v.c[0], rf_int(F, 7)));
    for (int i = 1; i <= 6; ++i) CHECK(v.c[static_cast<std::size_t>(i)].is_zero());
}

TEST_CASE("jets extend to fractions by the truncated geometric series") {
    auto F = make_field(0, {"u"});
    auto j = divided_power_jet(F, "u", 6);
    RatFunc u = RatFunc::variable(F, "u");
    auto v = j.extend(RatFunc::one(F) / u);
    // (u + t)^{-1} = sum (-1)^i u^{-i-1} t^i
    for (int i = 0; i <= 6; ++i) {
        RatFunc expected = RatFunc::one(F) / RatFunc::variable(F, "u", static_cast<std::uint32_t>(i) + 1);
        if (i % 2) expected = -expected;
        CHECK(ratfunc_eq(v.c[static_cast<std::size_t>(i)], expected));
    }
    CHECK_THROWS_AS(j.extend(RatFunc::zero(F)).inverse(), Error);
}

TEST_CASE("hs_axiom_check passes for jet homs and random pairs") {
    auto F2 = make_field(2, {"t1"});
    auto F3 = make_field(3, {"t1"});
    auto FQ = make_field(0, {"u"});
    std::mt19937_64 rng(2024);
    for (int which = 0; which < 3; ++which) {
        const FieldPtr& F = which == 0 ? F2 : which == 1 ? F3 : FQ;
        auto j = divided_power_jet(F, F->variables[0], 10);
        std::vector<std::pair<RatFunc, RatFunc>> pairs;
        RatFunc g = RatFunc::variable(F, F->variables[0]);
        pairs.emplace_back(g, g * g);
        pairs.emplace_back(g * g + rf_int(F, 1), RatFunc::one(F));
        for (int i = 0; i < 20; ++i) pairs.emplace_back(random_poly_rf(rng, F, 4), random_poly_rf(rng, F, 4));
        auto cert = hs_axiom_check(j, pairs);
        CHECK(cert.ok);
    }
}

TEST_CASE("a tampered component table fails the convolution identity") {
    auto F = make_field(0, {"u"});
    auto j = divided_power_jet(F, "u", 6);
    FieldAlgebra alg{F};
    RatFunc u2 = RatFunc::variable(F, "u", 2);
    auto component = [&](const RatFunc& a, int i) {
        if (i == 1 && ratfunc_eq(a, u2)) return j.component(a, 1) + RatFunc::one(F);  // tamper d_1 at u^2 only
        return j.component(a, i);
    };
    std::vector<std::pair<RatFunc, RatFunc>> pairs;
    pairs.emplace_back(RatFunc::variable(F, "u"), RatFunc::variable(F, "u"));
    auto cert = hs_axiom_check_components<FieldAlgebra>(alg, 6, component, pairs);
    CHECK(!cert.ok);
    CHECK(cert.detail.find("index 1") != std::string::npos);
    CHECK(cert.detail.find("pair 0") != std::string::npos);
}

TEST_CASE("iterativity of divided powers and of the canonical family") {
    auto F2 = make_field(2, {"t1"});
    auto j2 = divided_power_jet(F2, "t1", 16);
    std::vector<RatFunc> samples;
    for (std::uint32_t d = 1; d <= 8; ++d) samples.push_back(RatFunc::variable(F2, "t1", d));
    CHECK(iterativity_check(j2, samples).ok);

    auto FQ = make_field(0, {"u"});
    std::map<std::uint32_t, RatFunc> dimg;
    dimg.emplace(0, RatFunc::one(FQ));
    DerivationSpec ddu(FQ, dimg);
    auto jc = canonical_from_derivation(ddu, 10);
    std::mt19937_64 rng(5);
    std::vector<RatFunc> qsamples;
    for (int i = 0; i < 10; ++i) qsamples.push_back(random_poly_rf(rng, FQ, 5));
    CHECK(iterativity_check(jc, qsamples).ok);
}

TEST_CASE("a non-iterative jet is detected") {
    // G(u) = u + u t + t^2
    auto F = make_field(0, {"u"});
    FieldAlgebra alg{F};
    JetVec<FieldAlgebra> gu = JetVec<FieldAlgebra>::constant(alg, 8, RatFunc::variable(F, "u"));
    gu.c[1] = RatFunc::variable(F, "u");
    gu.c[2] = RatFunc::one(F);
    std::map<std::string, JetVec<FieldAlgebra>> jets;
    jets.emplace("u", gu);
    JetHom<FieldAlgebra> j(alg, 8, std::move(jets));
    CHECK(hs_axiom_check(j, {{RatFunc::variable(F, "u"), RatFunc::variable(F, "u")}}).ok);
    std::vector<RatFunc> samples{RatFunc::variable(F, "u")};
    auto cert = iterativity_check(j, samples);
    CHECK(!cert.ok);
}

TEST_CASE("divided power operator formula") {
    auto FQ = make_field(0, {"t1", "t2"});
    Monomial m = Monomial::var(0, 3) * Monomial::var(1, 1);
    MultiPoly r = divided_power_delta(FQ, 0, 2, m);
    MultiPoly expected(FQ);
    expected.add_term(Monomial::var(0, 1) * Monomial::var(1, 1), Scalar::rational(3));
    CHECK(r == expected);

    CHECK(divided_power_delta(FQ, 0, 3, Monomial::var(0, 2)).is_zero());

    auto F2 = make_field(2, {"t1", "t2"});
    MultiPoly r2 = divided_power_delta(F2, 0, 2, m);
    MultiPoly expected2(F2);
    expected2.add_term(Monomial::var(0, 1) * Monomial::var(1, 1), Scalar::modp(2, 1));
    CHECK(r2 == expected2);
}

TEST_CASE("divided powers are locally nilpotent beyond the degree") {
    auto F = make_field(3, {"t1", "t2"});
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 20; ++iter) {
        RatFunc f = random_poly_rf(rng, F, 4);
        for (auto& [m, c] : f.num().terms()) {
            std::uint32_t d = m.exponent(0);
            MultiPoly mono = MultiPoly::of_term(F, m, Scalar::of_int(3, 1));
            for (std::uint32_t n = d + 1; n <= d + 3; ++n)
                CHECK(divided_power_apply(mono, 0, n).is_zero());
        }
    }
}

TEST_CASE("canonical char-0 family: d_n = delta^n / n!") {
    auto F = make_field(0, {"u"});
    std::map<std::uint32_t, RatFunc> dimg;
    dimg.emplace(0, RatFunc::one(F));
    DerivationSpec ddu(F, dimg);
    auto j = canonical_from_derivation(ddu, 8);
    RatFunc u3 = RatFunc::variable(F, "u", 3);
    CHECK(ratfunc_eq(j.component(u3, 2), RatFunc::variable(F, "u").scaled(Scalar::rational(3))));  // 6u/2
    CHECK(ratfunc_eq(j.component(u3, 0), u3));
    RatFunc u = RatFunc::variable(F, "u");
    for (int n = 2; n <= 8; ++n) CHECK(j.component(u, n).is_zero());

    auto Fp = make_field(2, {"u"});
    std::map<std::uint32_t, RatFunc> pimg;
    pimg.emplace(0, RatFunc::one(Fp));
    DerivationSpec dp(Fp, pimg);
    CHECK_THROWS_AS(canonical_from_derivation(dp, 8), Error);
}

TEST_CASE("iterative reconstruction from p-power components") {
    for (std::uint64_t p : {2ull, 3ull}) {
        auto F = make_field(p, {"t1"});
        FieldAlgebra alg{F};
        IterativeHSSpec<RatFunc> spec;
        spec.p = p;
        for (std::uint64_t pw = 1; pw <= 9; pw *= p)
            spec.component_maps.push_back([pw](const RatFunc& a) {
                return RatFunc(divided_power_apply(a.num(), 0, static_cast<std::uint32_t>(pw)), a.den());
            });
        for (std::uint64_t i = 1; i <= 9; ++i) {
            auto di = iterative_from_components(alg, spec, i);
            for (std::uint32_t d = 0; d <= 9; ++d) {
                RatFunc input = RatFunc::variable(F, "t1", d);
                RatFunc expected(divided_power_apply(input.num(), 0, static_cast<std::uint32_t>(i)));
                REQUIRE(ratfunc_eq(di(input), expected));
            }
        }
    }
    // p = 3, i = 5: digits (2, 1), d_5 = (d_1)^2 (d_3) / 2!; check d_5(t1^5) = C(5,5) = 1
    auto F3 = make_field(3, {"t1"});
    FieldAlgebra alg3{F3};
    IterativeHSSpec<RatFunc> spec3;
    spec3.p = 3;
    for (std::uint64_t pw = 1; pw <= 3; pw *= 3)
        spec3.component_maps.push_back([pw](const RatFunc& a) {
            return RatFunc(divided_power_apply(a.num(), 0, static_cast<std::uint32_t>(pw)), a.den());
        });
    auto d5 = iterative_from_components(alg3, spec3, 5);
    CHECK(ratfunc_eq(d5(RatFunc::variable(F3, "t1", 5)), RatFunc::one(F3)));
    // single-digit index returns the component unchanged on samples
    auto d3 = iterative_from_components(alg3, spec3, 3);
    RatFunc t16 = RatFunc::variable(F3, "t1", 6);
    CHECK(ratfunc_eq(d3(t16), RatFunc(divided_power_apply(t16.num(), 0, 3))));
}

TEST_CASE("specialization at central values") {
    // G(u) = u + x t on Q[u][x]
    auto F = make_field(0, {"u", "x"});
    FieldAlgebra alg{F};
    JetVec<FieldAlgebra> gu = JetVec<FieldAlgebra>::constant(alg, 6, RatFunc::variable(F, "u"));
    gu.c[1] = RatFunc::variable(F, "x");
    JetVec<FieldAlgebra> gx = JetVec<FieldAlgebra>::constant(alg, 6, RatFunc::variable(F, "x"));
    std::map<std::string, JetVec<FieldAlgebra>> jets;
    jets.emplace("u", gu);
    jets.emplace("x", gx);
    JetHom<FieldAlgebra> j(alg, 6, std::move(jets));

    auto target = make_field(0, {"u"});
    auto mu2 = specialize_at_central(j, target, {{"x", rf_int(target, 2)}});
    CHECK(ratfunc_eq(mu2.component(RatFunc::variable(target, "u"), 1), rf_int(target, 2)));

    auto mu0 = specialize_at_central(j, target, {{"x", rf_int(target, 0)}});
    for (int i = 1; i <= 6; ++i) CHECK(mu0.component(RatFunc::variable(target, "u"), i).is_zero());

    // mu_0 = id and the specialized family still satisfies the axiom
    std::mt19937_64 rng(9);
    std::vector<std::pair<RatFunc, RatFunc>> pairs;
    for (int i = 0; i < 20; ++i) {
        RatFunc a = random_poly_rf(rng, target, 4);
        pairs.emplace_back(a, random_poly_rf(rng, target, 4));
        CHECK(ratfunc_eq(mu2.component(a, 0), a));
    }
    CHECK(hs_axiom_check(mu2, pairs).ok);
}

TEST_CASE("kernel membership") {
    // divided powers in x on Q(u, x): u-only elements are in the kernel
    auto F = make_field(0, {"u", "x"});
    auto j = divided_power_jet(F, "x", 6);
    CHECK(kernel_membership(j, RatFunc::variable(F, "u", 3) + rf_int(F, 1)));
    CHECK(!kernel_membership(j, RatFunc::variable(F, "x")));

    auto FQ = make_field(0, {"u"});
    auto ju = divided_power_jet(FQ, "u", 6);
    CHECK(!kernel_membership(ju, RatFunc::variable(FQ, "u")));  // d_1(u) = 1

    // p=2 cyclic-shift field: dual-numbers jet (N = 1) with component delta;
    // kernel membership is truncation-relative, so ker = ker(delta)
    auto K = make_field(2, {"x1", "x2", "x3"});
    FieldAlgebra alg{K};
    std::map<std::string, JetVec<FieldAlgebra>> jets;
    for (std::uint32_t v = 0; v < 3; ++v) {
        JetVec<FieldAlgebra> g = JetVec<FieldAlgebra>::constant(alg, 1, RatFunc::variable(K, v));
        g.c[1] = RatFunc::variable(K, (v + 1) % 3);
        jets.emplace(K->var_name(v), std::move(g));
    }
    JetHom<FieldAlgebra> jd(alg, 1, std::move(jets));
    CHECK(kernel_membership(jd, RatFunc::variable(K, "x1", 2)));
    CHECK(!kernel_membership(jd, RatFunc::variable(K, "x1")));
}

TEST_CASE("jets over the Ore ring: divided powers in the central variable") {
    auto K = make_field(2, {"x1", "x2", "x3"});
    std::map<std::uint32_t, RatFunc> images;
    for (std::uint32_t i = 0; i < 3; ++i) images.emplace(i, RatFunc::variable(K, (i + 1) % 3));
    auto A = make_ore_ring(K, "x", std::nullopt, DerivationSpec(K, images), {"t"});
    auto j = divided_power_jet(A, "t", 8);

    OreElement x = OreElement::skew(A);
    OreElement t = OreElement::central(A, 0);
    OreElement z = x.pow(4) - x;

    // G(t^2 + z) = (t+s)^2 + z: components [t^2+z, 2t = 0 in char 2, 1, 0...]
    auto v = j.extend(t.pow(2) + z);
    CHECK(v.c[0] == t.pow(2) + z);
    CHECK(v.c[1].is_zero());
    CHECK(v.c[2] == OreElement::one(A));

    // elements of A are in the kernel; t is not
    CHECK(kernel_membership(j, z));
    CHECK(kernel_membership(j, x * OreElement::coefficient(A, RatFunc::variable(K, "x2"))));
    CHECK(!kernel_membership(j, t));

    // multiplicativity over the noncommutative base
    std::vector<std::pair<OreElement, OreElement>> pairs;
    pairs.emplace_back(x + t, OreElement::coefficient(A, RatFunc::variable(K, "x1")));
    pairs.emplace_back(t.pow(2) + x, x * t + OreElement::one(A));
    CHECK(hs_axiom_check(j, pairs).ok);
}
