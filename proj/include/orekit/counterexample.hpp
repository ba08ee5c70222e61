#pragma once

#include "orekit/ore.hpp"
#include "orekit/report.hpp"

namespace orekit {

/// The positive-characteristic package: K = F_p(x1..x_{p^2-1}) with the
/// cyclic-shift derivation delta, delta' = delta^p, the derivation rings
/// A = K[x; delta][t] and B = K[x'; delta'][t'], the map
/// Phi(a) = a, Phi(x) = x'^p + t', Phi(t) = x'^{p^2} - x' + t'^p, and the
/// central elements z = x^{p^2} - x, z' = x'^{p^2} - x'.
struct CounterexampleInstance {
    std::uint64_t p = 0;
    FieldPtr K;
    DerivationSpec delta;
    DerivationSpec delta_prime;
    OreRingPtr A;
    OreRingPtr B;
    RingHomSpec phi;
    OreElement z;
    OreElement z_prime;
};

/// delta_prime_power = 0 selects the construction's delta' = delta^p; tests
/// pass 1 to tamper (delta' = delta), which must break the obstruction.
CounterexampleInstance build_instance(std::uint64_t p, std::uint64_t delta_prime_power = 0);

std::vector<CheckResult> verify_delta_periodicity(const CounterexampleInstance& inst);
std::vector<CheckResult> verify_centrality(const CounterexampleInstance& inst);
std::vector<CheckResult> verify_phi(const CounterexampleInstance& inst);
std::vector<CheckResult> verify_not_isomorphic(const CounterexampleInstance& inst);

struct RunOptions {
    /// Growth-profile check; defaults to on exactly for p = 2 (the basis of
    /// K over k has p^(p^2-1) elements, so larger p is opt-in).
    std::optional<bool> run_filtration;
    int filtration_levels = 3;
    /// Evaluate independent checks concurrently; report order is fixed
    /// regardless.
    bool parallel = false;
    /// Compare coefficients by random point evaluation instead of full
    /// symbolic expansion. Never used by the acceptance run.
    bool sampled_evaluation = false;
};

VerificationReport run_all(const CounterexampleInstance& inst, const RunOptions& opts = {});

}  // namespace orekit
