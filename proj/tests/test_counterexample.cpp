#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orekit/counterexample.hpp"

using namespace orekit;

TEST_CASE("build_instance wires the construction for p = 2") {
    auto inst = build_instance(2);
    CHECK(inst.K->nvars() == 3);
    CHECK(ratfunc_eq(inst.delta.image(0), RatFunc::variable(inst.K, "x2")));
    CHECK(ratfunc_eq(inst.delta.image(2), RatFunc::variable(inst.K, "x1")));  // x_{p^2} = x_1
    // delta'(x1) = x_{p+1} = x3
    CHECK(ratfunc_eq(inst.delta_prime.image(0), RatFunc::variable(inst.K, "x3")));
    OreElement x = OreElement::skew(inst.A);
    CHECK(inst.z == x.pow(4) - x);
}

TEST_CASE("build_instance for p = 3 has 8 variables and delta'(x1) = x4") {
    auto inst = build_instance(3);
    CHECK(inst.K->nvars() == 8);
    CHECK(ratfunc_eq(inst.delta_prime.image(0), RatFunc::variable(inst.K, "x4")));
}

TEST_CASE("composite p is rejected") {
    CHECK_THROWS_WITH_AS(build_instance(4), "build_instance: 4 is not prime", Error);
    CHECK_THROWS_AS(build_instance(1), Error);
}

TEST_CASE("periodicity: delta^{p^2} = delta and the j = 1 iterate") {
    auto inst = build_instance(2);
    for (auto& c : verify_delta_periodicity(inst)) CHECK(c.status == CheckStatus::pass);
    // delta^{p^3} = delta^p on generators
    auto d8 = compose_power(inst.delta, 8);
    auto d2 = compose_power(inst.delta, 2);
    CHECK(derivation_equal_on_generators(d8.to_derivation_spec(), d2.to_derivation_spec()));
}

TEST_CASE("centrality of z, z' and Phi(t) for p = 2") {
    auto inst = build_instance(2);
    auto checks = verify_centrality(inst);
    REQUIRE(checks.size() == 3);
    for (auto& c : checks) {
        CAPTURE(c.name);
        CHECK(c.status == CheckStatus::pass);
    }
    // [Phi(t), x1] = (delta')^{p^2}(x1) - delta'(x1) = 0
    OreElement phit = inst.phi.var_images.at("t");
    CHECK(commutator(phit, OreElement::coefficient(inst.B, RatFunc::variable(inst.K, "x1"))).is_zero());
}

TEST_CASE("Phi is consistent and surjective for p = 2") {
    auto inst = build_instance(2);
    auto checks = verify_phi(inst);
    for (auto& c : checks) {
        CAPTURE(c.name);
        CAPTURE(c.witness);
        if (c.status != CheckStatus::cited) CHECK(c.status == CheckStatus::pass);
    }
}

TEST_CASE("the obstruction certificate for p = 2 and p = 3") {
    for (std::uint64_t p : {2ull, 3ull}) {
        auto inst = build_instance(p);
        auto checks = verify_not_isomorphic(inst);
        for (auto& c : checks) {
            CAPTURE(c.name);
            if (c.status != CheckStatus::cited) CHECK(c.status == CheckStatus::pass);
        }
    }
}

TEST_CASE("control: tampering delta' = delta removes the obstruction") {
    auto inst = build_instance(2, 1);
    auto checks = verify_not_isomorphic(inst);
    bool found = false;
    for (auto& c : checks)
        if (c.name == "isomorphism_obstruction") {
            found = true;
            CHECK(c.status == CheckStatus::fail);
            CHECK(c.witness.find("no obstruction") != std::string::npos);
        }
    CHECK(found);

    auto report = run_all(inst);
    CHECK(!report.overall_pass());
}

TEST_CASE("run_all for p = 2 passes and is deterministic") {
    auto inst = build_instance(2);
    auto r1 = run_all(inst);
    CHECK(r1.overall_pass());
    auto r2 = run_all(inst);
    CHECK(r1.to_json(false) == r2.to_json(false));

    // parallel execution preserves content and order
    RunOptions par;
    par.parallel = true;
    auto r3 = run_all(inst, par);
    CHECK(r1.to_json(false) == r3.to_json(false));

    // cited entries never flip the overall status
    bool has_cited = false;
    for (auto& c : r1.checks) has_cited = has_cited || c.status == CheckStatus::cited;
    CHECK(has_cited);
}

TEST_CASE("sampled evaluation depth flag agrees on the p = 2 instance") {
    auto inst = build_instance(2);
    RunOptions opts;
    opts.sampled_evaluation = true;
    auto r = run_all(inst, opts);
    CHECK(r.overall_pass());
}
