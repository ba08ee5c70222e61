#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "orekit/slice.hpp"
#include "orekit/vandermonde.hpp"

using namespace orekit;

namespace {

RatFunc rf_int(const FieldPtr& F, std::int64_t n) { return RatFunc::constant(F, n); }

RatFunc random_univariate(std::mt19937_64& rng, const FieldPtr& f, int max_deg) {
    std::uniform_int_distribution<int> expd(0, max_deg);
    std::uniform_int_distribution<int> coeff(-3, 3);
    MultiPoly p(f);
    for (int i = 0; i < 4; ++i)
        p.add_term(Monomial::var(0, static_cast<std::uint32_t>(expd(rng))),
                   Scalar::of_int(f->characteristic, coeff(rng)));
    return RatFunc(p);
}

// independent naive nullspace decision: does V a = 0 force a = 0, and do the
// evaluations vanish? solves by dense Gaussian elimination over Q
bool brute_force_all_evals_zero(const std::vector<RatFunc>& coeffs, const std::vector<RatFunc>& pts) {
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        RatFunc v = RatFunc::zero(coeffs[0].field());
        RatFunc pw = RatFunc::one(coeffs[0].field());
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            v = v + coeffs[i] * pw;
            pw = pw * pts[j];
        }
        if (!v.is_zero()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("nu under divided powers") {
    auto F = make_field(0, {"u"});
    auto j = divided_power_jet(F, "u", 10);
    CHECK(nu(j, RatFunc::variable(F, "u", 3)) == 3);
    CHECK(nu(j, rf_int(F, 9)) == 0);
    CHECK(nu(j, RatFunc::zero(F)) == 0);
    CHECK(nu(j, RatFunc::variable(F, "u", 3) + RatFunc::variable(F, "u")) == 3);
    CHECK_THROWS_AS(nu(j, RatFunc::variable(F, "u", 12)), TruncationExhausted);
}

TEST_CASE("slice decomposition runs the rewriting loop") {
    auto F = make_field(0, {"x"});
    auto j = divided_power_jet(F, "x", 10);
    RatFunc x = RatFunc::variable(F, "x");
    RatFunc a = x * x + x.scaled(Scalar::rational(3)) + rf_int(F, 5);
    auto dec = slice_decompose(j, a, x);
    REQUIRE(dec.coefficients.size() == 3);
    CHECK(ratfunc_eq(dec.coefficients[0], rf_int(F, 5)));
    CHECK(ratfunc_eq(dec.coefficients[1], rf_int(F, 3)));
    CHECK(ratfunc_eq(dec.coefficients[2], rf_int(F, 1)));
    for (bool ok : dec.kernel_certificates) CHECK(ok);
    CHECK(ratfunc_eq(slice_reassemble(j, dec), a));

    // kernel elements decompose as themselves
    auto F2 = make_field(0, {"u", "x"});
    auto j2 = divided_power_jet(F2, "x", 10);
    RatFunc k = RatFunc::variable(F2, "u", 2) + rf_int(F2, 1);
    auto dec2 = slice_decompose(j2, k, RatFunc::variable(F2, "x"));
    REQUIRE(dec2.coefficients.size() == 1);
    CHECK(ratfunc_eq(dec2.coefficients[0], k));
}

TEST_CASE("slice decomposition in the p=2 Ore ring A[t]") {
    auto K = make_field(2, {"x1", "x2", "x3"});
    std::map<std::uint32_t, RatFunc> images;
    for (std::uint32_t i = 0; i < 3; ++i) images.emplace(i, RatFunc::variable(K, (i + 1) % 3));
    auto A = make_ore_ring(K, "x", std::nullopt, DerivationSpec(K, images), {"t"});
    auto j = divided_power_jet(A, "t", 8);
    OreElement x = OreElement::skew(A);
    OreElement t = OreElement::central(A, 0);
    OreElement z = x.pow(4) - x;

    auto dec = slice_decompose(j, t.pow(2) + z, t);
    REQUIRE(dec.coefficients.size() == 3);
    CHECK(dec.coefficients[0] == z);
    CHECK(dec.coefficients[1].is_zero());
    CHECK(dec.coefficients[2] == OreElement::one(A));
    CHECK(slice_reassemble(j, dec) == t.pow(2) + z);

    // the slice condition rejects non-slices
    CHECK_THROWS_AS(slice_decompose(j, z, x), Error);
}

TEST_CASE("independence certificate") {
    auto F = make_field(0, {"u"});
    auto j = divided_power_jet(F, "u", 10);
    RatFunc u = RatFunc::variable(F, "u");
    // coeffs [1, 0, 1]: d_2(1 + u^2) = 1 = b_2 * d_1(u)^2
    std::vector<RatFunc> coeffs{rf_int(F, 1), rf_int(F, 0), rf_int(F, 1)};
    CHECK(independence_check(j, coeffs, u, 1).ok);
    std::vector<RatFunc> zeros{rf_int(F, 0), rf_int(F, 0)};
    CHECK(independence_check(j, zeros, u, 1).ok);
    std::vector<RatFunc> single{rf_int(F, 0), rf_int(F, 2)};
    CHECK(independence_check(j, single, u, 1).ok);
    // non-kernel coefficient is rejected
    std::vector<RatFunc> bad{u, rf_int(F, 1)};
    CHECK(!independence_check(j, bad, u, 1).ok);
}

TEST_CASE("nu reduction chains follow the digit rule") {
    auto F = make_field(2, {"u"});
    auto j = divided_power_jet(F, "u", 16);
    RatFunc u = RatFunc::variable(F, "u");

    SUBCASE("u^3: one high-branch step to nu = 2") {
        auto chain = nu_reduce(j, RatFunc::variable(F, "u", 3), 2);
        REQUIRE(chain.steps.size() == 1);
        CHECK(chain.steps[0].m == 3);
        CHECK(chain.steps[0].high_branch);
        CHECK(chain.steps[0].binom == 1);
        // b = d_1(u^3) = 3u^2 = u^2 in char 2
        CHECK(ratfunc_eq(chain.steps[0].element, RatFunc::variable(F, "u", 2)));
        CHECK(chain.terminal_nu == 2);
    }

    SUBCASE("p-power nu: empty chain") {
        auto chain = nu_reduce(j, RatFunc::variable(F, "u", 4), 2);
        CHECK(chain.steps.empty());
        CHECK(chain.terminal_nu == 4);
    }

    SUBCASE("u^6: d_2 fires since C(6,2) = 1 mod 2") {
        auto chain = nu_reduce(j, RatFunc::variable(F, "u", 6), 2);
        REQUIRE(!chain.steps.empty());
        CHECK(chain.steps[0].m == 6);
        CHECK(chain.steps[0].r == 1);
        CHECK(chain.steps[0].s0 == 1);
        CHECK(chain.steps[0].s1 == 1);
        CHECK(ratfunc_eq(chain.steps[0].element, RatFunc::variable(F, "u", 4)));
        CHECK(chain.terminal_nu == 4);
    }

    SUBCASE("low branch in characteristic 3") {
        auto F3 = make_field(3, {"u"});
        auto j3 = divided_power_jet(F3, "u", 16);
        // nu = 6 = 2*3: digits (0, 2): s1 = 0 branch applies d_3, landing at nu = 3
        auto chain = nu_reduce(j3, RatFunc::variable(F3, "u", 6), 3);
        REQUIRE(chain.steps.size() == 1);
        CHECK(!chain.steps[0].high_branch);
        CHECK(chain.steps[0].s0 == 2);
        CHECK(chain.steps[0].binom == 2);  // C(6,3) = 20 = 2 mod 3
        CHECK(chain.terminal_nu == 3);
    }

    SUBCASE("random chains decrease strictly and end at a p-power") {
        for (std::uint64_t p : {2ull, 3ull}) {
            auto Fp = make_field(p, {"u"});
            auto jp = divided_power_jet(Fp, "u", 16);
            std::mt19937_64 rng(400 + p);
            for (int iter = 0; iter < 25; ++iter) {
                RatFunc a = random_univariate(rng, Fp, 12);
                int m0;
                try {
                    m0 = nu(jp, a);
                } catch (const TruncationExhausted&) {
                    continue;
                }
                if (m0 < 1) continue;
                auto chain = nu_reduce(jp, a, p);
                int prev = m0;
                int digits = 0;
                for (std::uint64_t mm = static_cast<std::uint64_t>(m0); mm; mm /= p)
                    if (mm % p) ++digits;
                REQUIRE(chain.steps.size() <= static_cast<std::size_t>(digits));
                for (auto& s : chain.steps) {
                    REQUIRE(s.m <= prev);
                    prev = nu(jp, s.element);
                    REQUIRE(prev < s.m);
                }
                REQUIRE(is_p_power(static_cast<std::uint64_t>(chain.terminal_nu), p));
            }
        }
    }
}

TEST_CASE("vandermonde certification") {
    auto F = make_field(0, {"x"});

    SUBCASE("all-zero coefficients certify") {
        std::vector<RatFunc> coeffs{rf_int(F, 0), rf_int(F, 0), rf_int(F, 0)};
        std::vector<RatFunc> pts{rf_int(F, 0), rf_int(F, 1), rf_int(F, 2)};
        auto cert = vandermonde_certify(coeffs, pts);
        CHECK(cert.all_zero);
        // det of Vandermonde(0,1,2) = (1-0)(2-0)(2-1) = 2
        CHECK(ratfunc_eq(cert.det, rf_int(F, 2)));
    }

    SUBCASE("insufficient points error") {
        std::vector<RatFunc> coeffs{rf_int(F, 2), rf_int(F, -3), rf_int(F, 1)};
        std::vector<RatFunc> pts{rf_int(F, 1), rf_int(F, 2)};
        CHECK_THROWS_WITH_AS(vandermonde_certify(coeffs, pts), "vandermonde_certify: need d+1 distinct central elements",
                             Error);
    }

    SUBCASE("nonzero witness: p = (x-1)(x-2) at 3") {
        std::vector<RatFunc> coeffs{rf_int(F, 2), rf_int(F, -3), rf_int(F, 1)};
        std::vector<RatFunc> pts{rf_int(F, 1), rf_int(F, 2), rf_int(F, 3)};
        auto cert = vandermonde_certify(coeffs, pts);
        CHECK(!cert.all_zero);
        REQUIRE(cert.witness_index.has_value());
        CHECK(*cert.witness_index == 2);
        CHECK(ratfunc_eq(*cert.witness_value, rf_int(F, 2)));
        CHECK(ratfunc_eq(cert.det, rf_int(F, 2)));  // det V(1,2,3)
    }

    SUBCASE("repeated points error") {
        std::vector<RatFunc> coeffs{rf_int(F, 1), rf_int(F, 1)};
        std::vector<RatFunc> pts{rf_int(F, 1), rf_int(F, 1)};
        CHECK_THROWS_AS(vandermonde_certify(coeffs, pts), Error);
    }

    SUBCASE("agrees with brute-force evaluation on random instances") {
        std::mt19937_64 rng(31337);
        std::uniform_int_distribution<int> cd(-4, 4);
        std::uniform_int_distribution<int> degd(1, 5);
        for (int iter = 0; iter < 50; ++iter) {
            int d = degd(rng);
            std::vector<RatFunc> coeffs;
            bool force_zero = iter % 3 == 0;
            for (int i = 0; i <= d; ++i) coeffs.push_back(rf_int(F, force_zero ? 0 : cd(rng)));
            std::vector<RatFunc> pts;
            for (int i = 0; i <= d; ++i) pts.push_back(rf_int(F, 10 * i + iter % 7));
            auto cert = vandermonde_certify(coeffs, pts);
            bool brute = brute_force_all_evals_zero(coeffs, pts);
            REQUIRE(cert.all_zero == brute);
            if (cert.all_zero)
                for (auto& c : coeffs) REQUIRE(c.is_zero());
        }
    }
}

TEST_CASE("slice round-trips on random polynomials") {
    auto F = make_field(0, {"u"});
    auto j = divided_power_jet(F, "u", 16);
    RatFunc u = RatFunc::variable(F, "u");
    std::mt19937_64 rng(606);
    for (int iter = 0; iter < 40; ++iter) {
        RatFunc a = random_univariate(rng, F, 10);
        auto dec = slice_decompose(j, a, u);
        REQUIRE(ratfunc_eq(slice_reassemble(j, dec), a));
        for (bool ok : dec.kernel_certificates) REQUIRE(ok);
    }
}
