#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace orekit {

/// C(n, r) mod p by Lucas' identity: the product over base-p digits of the
/// small binomials C(n_i, r_i). Returns 0 when r > n.
std::uint64_t lucas_binom(std::uint64_t n, std::uint64_t r, std::uint64_t p);

/// Exact integer binomial (characteristic-zero callers).
mpz_class binom_z(std::uint64_t n, std::uint64_t r);

}  // namespace orekit
