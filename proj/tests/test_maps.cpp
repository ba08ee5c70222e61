#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orekit/maps.hpp"

using namespace orekit;

namespace {

// the p=2 cyclic-shift derivation on F2(x1,x2,x3)
std::pair<FieldPtr, DerivationSpec> shift_p2() {
    auto F = make_field(2, {"x1", "x2", "x3"});
    std::map<std::uint32_t, RatFunc> images;
    images.emplace(0, RatFunc::variable(F, "x2"));
    images.emplace(1, RatFunc::variable(F, "x3"));
    images.emplace(2, RatFunc::variable(F, "x1"));
    return {F, DerivationSpec(F, std::move(images))};
}

MultiPoly random_poly(std::mt19937_64& rng, const FieldPtr& f, int max_terms, int max_exp) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> expd(0, max_exp);
    std::uniform_int_distribution<int> coeff(-4, 4);
    MultiPoly p(f);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Monomial m;
        for (std::uint32_t v = 0; v < f->nvars(); ++v) {
            int e = expd(rng);
            if (e) m.exps.emplace_back(v, static_cast<std::uint32_t>(e));
        }
        p.add_term(m, Scalar::of_int(f->characteristic, coeff(rng)));
    }
    return p;
}

RatFunc random_ratfunc(std::mt19937_64& rng, const FieldPtr& f) {
    MultiPoly num = random_poly(rng, f, 3, 2);
    MultiPoly den(f);
    while (den.is_zero()) den = random_poly(rng, f, 2, 2);
    return RatFunc(num, den);
}

}  // namespace

TEST_CASE("shift derivation on generators") {
    auto [F, d] = shift_p2();
    CHECK(ratfunc_eq(apply_derivation(d, RatFunc::variable(F, "x1")), RatFunc::variable(F, "x2")));
}

TEST_CASE("derivations kill p-th powers") {
    auto [F, d] = shift_p2();
    CHECK(apply_derivation(d, RatFunc::variable(F, "x1", 2)).is_zero());
    // and k-linearity on a sample: d(x1^2 * f) = x1^2 * d(f)
    std::mt19937_64 rng(5);
    RatFunc sq = RatFunc::variable(F, "x1", 2);
    for (int iter = 0; iter < 15; ++iter) {
        RatFunc f = random_ratfunc(rng, F);
        CHECK(ratfunc_eq(apply_derivation(d, sq * f), sq * apply_derivation(d, f)));
    }
}

TEST_CASE("quotient rule: d(1/x1) = x2/x1^2 in char 2") {
    auto [F, d] = shift_p2();
    RatFunc f = RatFunc::one(F) / RatFunc::variable(F, "x1");
    RatFunc expected = RatFunc::variable(F, "x2") / RatFunc::variable(F, "x1", 2);
    CHECK(ratfunc_eq(apply_derivation(d, f), expected));
}

TEST_CASE("Leibniz on random pairs") {
    auto [F, d] = shift_p2();
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 100; ++iter) {
        RatFunc f = random_ratfunc(rng, F);
        RatFunc g = random_ratfunc(rng, F);
        RatFunc lhs = apply_derivation(d, f * g);
        RatFunc rhs = apply_derivation(d, f) * g + f * apply_derivation(d, g);
        REQUIRE(ratfunc_eq(lhs, rhs));
    }
}

TEST_CASE("compose_power: shift iterates and cycles") {
    auto [F, d] = shift_p2();
    auto d2 = compose_power(d, 2);
    CHECK(ratfunc_eq(d2.image(0), RatFunc::variable(F, "x3")));
    auto d0 = compose_power(d, 0);
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 10; ++iter) {
        RatFunc f = random_ratfunc(rng, F);
        CHECK(ratfunc_eq(d0(f), f));
    }
    auto d3 = compose_power(d, 3);
    CHECK(ratfunc_eq(d3.image(0), RatFunc::variable(F, "x1")));
}

TEST_CASE("p-th power of a derivation satisfies Leibniz") {
    auto [F, d] = shift_p2();
    auto dp = compose_power(d, 2);  // p = 2
    std::mt19937_64 rng(23);
    for (int iter = 0; iter < 30; ++iter) {
        RatFunc f = random_ratfunc(rng, F);
        RatFunc g = random_ratfunc(rng, F);
        REQUIRE(ratfunc_eq(dp(f * g), dp(f) * g + f * dp(g)));
    }
}

TEST_CASE("derivation equality is agreement on generators") {
    auto [F, d] = shift_p2();
    // delta^{p^2} = delta with p = 2
    auto d4 = compose_power(d, 4);
    CHECK(derivation_equal_on_generators(d4.to_derivation_spec(), d));
    CHECK(derivation_equal_on_generators(d, d));
    auto d2 = compose_power(d, 2);
    CHECK(!derivation_equal_on_generators(d2.to_derivation_spec(), d));
}

TEST_CASE("automorphism: substitution is a homomorphism") {
    auto F = make_field(0, {"u", "v"});
    std::map<std::uint32_t, RatFunc> imgs;
    imgs.emplace(0, RatFunc::variable(F, "v"));
    imgs.emplace(1, RatFunc::variable(F, "u") + RatFunc::one(F));
    std::map<std::uint32_t, RatFunc> inv;
    inv.emplace(0, RatFunc::variable(F, "v") - RatFunc::one(F));
    inv.emplace(1, RatFunc::variable(F, "u"));
    AutomorphismSpec s(F, imgs, inv);

    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 30; ++iter) {
        RatFunc f = random_ratfunc(rng, F);
        RatFunc g = random_ratfunc(rng, F);
        REQUIRE(ratfunc_eq(apply_automorphism(s, f * g), apply_automorphism(s, f) * apply_automorphism(s, g)));
        REQUIRE(ratfunc_eq(apply_automorphism(s, f + g), apply_automorphism(s, f) + apply_automorphism(s, g)));
    }

    std::map<std::uint32_t, RatFunc> bad;
    bad.emplace(0, RatFunc::variable(F, "u"));
    bad.emplace(1, RatFunc::variable(F, "v"));
    CHECK_THROWS_AS(AutomorphismSpec(F, imgs, bad), Error);
}

TEST_CASE("derivation spec validation") {
    auto F = make_field(2, {"x1", "x2"});
    std::map<std::uint32_t, RatFunc> partial;
    partial.emplace(0, RatFunc::variable(F, "x2"));
    CHECK_THROWS_AS(DerivationSpec(F, partial), Error);
}
