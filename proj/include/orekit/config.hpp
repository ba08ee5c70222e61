#pragma once

#include <cstddef>
#include <cstdint>

namespace orekit {

inline constexpr const char* kVersion = "1.0.0";

// Global knobs. Reads are lock-free; set them once at startup.
void set_parallel_enabled(bool on);
bool parallel_enabled();

/// Term-count product above which the OpenMP multiply kernel is used.
void set_parallel_threshold(std::size_t pairs);
std::size_t parallel_threshold();

/// Operand term count above which fraction normalization runs a full
/// recursive-Euclidean GCD pass instead of the cheap reductions.
void set_gcd_threshold(std::size_t terms);
std::size_t gcd_threshold();

/// Default jet truncation: max(16, p^2 + p), overridable via the
/// OREKIT_TRUNCATION environment variable and per call.
int default_truncation(std::uint64_t characteristic);

}  // namespace orekit
