#pragma once

#include <optional>
#include <vector>

#include "orekit/ratfunc.hpp"

namespace orekit {

struct VandermondeCertificate {
    bool all_zero = false;
    std::optional<std::size_t> witness_index;  // point with nonzero evaluation
    std::optional<RatFunc> witness_value;
    RatFunc det;  // Vandermonde determinant of the points used
};

/// Zero-certification for p(x) = a_0 + ... + a_d x^d over a commutative
/// coefficient domain: given d+1 pairwise distinct evaluation points with
/// p(z_j) = 0 for all j, the classical-adjoint identity a_i det(M) = 0
/// forces every a_i = 0. Returns a nonzero evaluation witness otherwise.
/// Fewer than d+1 points, or repeated points, is an error.
VandermondeCertificate vandermonde_certify(const std::vector<RatFunc>& coeffs,
                                           const std::vector<RatFunc>& points);

/// Determinant by Laplace expansion; intended for the small matrices here.
RatFunc dense_det(const std::vector<std::vector<RatFunc>>& m);

}  // namespace orekit
