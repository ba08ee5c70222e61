#include "orekit/vandermonde.hpp"

namespace orekit {

RatFunc dense_det(const std::vector<std::vector<RatFunc>>& m) {
    std::size_t n = m.size();
    if (n == 0) throw Error("determinant of empty matrix");
    if (n == 1) return m[0][0];
    const FieldPtr& F = m[0][0].field();
    RatFunc acc = RatFunc::zero(F);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<RatFunc>> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<RatFunc> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        RatFunc term = m[0][j] * dense_det(minor);
        acc = (j % 2) ? acc - term : acc + term;
    }
    return acc;
}

VandermondeCertificate vandermonde_certify(const std::vector<RatFunc>& coeffs,
                                           const std::vector<RatFunc>& points) {
    if (coeffs.empty()) throw Error("vandermonde_certify: empty coefficient list");
    const FieldPtr& F = coeffs[0].field();
    std::size_t d = coeffs.size() - 1;
    if (points.size() < d + 1)
        throw Error("vandermonde_certify: need d+1 distinct central elements");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (ratfunc_eq(points[i], points[j]))
                throw Error("vandermonde_certify: evaluation points must be pairwise distinct");

    std::size_t n = d + 1;
    // M[i][j] = z_j^i, so [a_0..a_d] M = [p(z_1)..p(z_{d+1})]
    std::vector<std::vector<RatFunc>> M(n, std::vector<RatFunc>(n, RatFunc::zero(F)));
    for (std::size_t j = 0; j < n; ++j) {
        RatFunc power = RatFunc::one(F);
        for (std::size_t i = 0; i < n; ++i) {
            M[i][j] = power;
            power = power * points[j];
        }
    }

    VandermondeCertificate cert;
    cert.det = dense_det(M);
    if (cert.det.is_zero()) throw Error("vandermonde_certify: determinant vanished on distinct points");

    std::vector<RatFunc> evals;
    evals.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        RatFunc v = RatFunc::zero(F);
        for (std::size_t i = 0; i < n; ++i) v = v + coeffs[i] * M[i][j];
        evals.push_back(std::move(v));
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!evals[j].is_zero()) {
            cert.all_zero = false;
            cert.witness_index = j;
            cert.witness_value = evals[j];
            return cert;
        }
    }

    // adjoint route: adj[j][i] = (-1)^{i+j} det(M minus row i, col j), so
    // a_i det(M) = sum_j p(z_j) adj[j][i] = 0; cross-check the identity.
    for (std::size_t i = 0; i < n; ++i) {
        RatFunc w = RatFunc::zero(F);
        for (std::size_t j = 0; j < n; ++j) {
            if (evals[j].is_zero()) continue;
            std::vector<std::vector<RatFunc>> minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::vector<RatFunc> row;
                for (std::size_t k = 0; k < n; ++k)
                    if (k != j) row.push_back(M[r][k]);
                minor.push_back(std::move(row));
            }
            RatFunc cof = dense_det(minor);
            if ((i + j) % 2) cof = -cof;
            w = w + evals[j] * cof;
        }
        if (!ratfunc_eq(coeffs[i] * cert.det, w))
            throw Error("vandermonde_certify: adjoint identity violated (arithmetic fault)");
        if (!coeffs[i].is_zero())
            throw Error("vandermonde_certify: nonzero coefficient with all evaluations zero");
    }
    cert.all_zero = true;
    return cert;
}

}  // namespace orekit
