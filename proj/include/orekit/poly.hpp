#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orekit/field.hpp"

namespace orekit {

/// Sparse exponent vector; zero exponents are never stored.
struct Monomial {
    // (variable index, exponent), sorted by variable index, exponents > 0
    std::vector<std::pair<std::uint32_t, std::uint32_t>> exps;

    static Monomial one() { return {}; }
    static Monomial var(std::uint32_t index, std::uint32_t e = 1);

    bool is_one() const { return exps.empty(); }
    std::uint64_t degree() const;
    std::uint32_t exponent(std::uint32_t var) const;

    Monomial operator*(const Monomial& o) const;
    /// Exact division; nullopt when o does not divide *this.
    std::optional<Monomial> divide(const Monomial& o) const;
    Monomial gcd(const Monomial& o) const;
    Monomial pow(std::uint32_t e) const;

    bool operator==(const Monomial& o) const { return exps == o.exps; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

    std::string str(const FieldDescriptor& field) const;
};

/// Graded lexicographic order with x1 > x2 > ... (total degree first; ties
/// broken by the earliest variable with the larger exponent).
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

enum class PolyOp { add, sub, mul };

/// Sparse multivariate polynomial over the base field. Immutable in spirit:
/// all operations return fresh values; no zero coefficients are stored.
class MultiPoly {
  public:
    using TermMap = std::map<Monomial, Scalar, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(FieldPtr field) : field_(std::move(field)) {}

    static MultiPoly zero(FieldPtr field) { return MultiPoly(std::move(field)); }
    static MultiPoly one(FieldPtr field) { return constant(std::move(field), 1); }
    static MultiPoly constant(FieldPtr field, std::int64_t n);
    static MultiPoly constant(FieldPtr field, Scalar s);
    static MultiPoly variable(FieldPtr field, std::uint32_t index, std::uint32_t e = 1);
    static MultiPoly variable(FieldPtr field, std::string_view name, std::uint32_t e = 1);
    static MultiPoly of_term(FieldPtr field, Monomial m, Scalar c);

    const FieldPtr& field() const { return field_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// The constant term's scalar (zero scalar when absent).
    Scalar constant_term() const;
    /// nullopt for the zero polynomial: its degree is undefined, not -1.
    std::optional<std::uint64_t> total_degree() const;
    std::optional<std::uint32_t> degree_in(std::uint32_t var) const;

    /// Largest term in grlex order; throws on the zero polynomial.
    const std::pair<const Monomial, Scalar>& leading_term() const;

    void add_term(const Monomial& m, const Scalar& c);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scaled(const Scalar& c) const;
    MultiPoly mul_monomial(const Monomial& m, const Scalar& c) const;
    MultiPoly pow(std::uint64_t e) const;

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    /// Serial reference product; the OpenMP kernel below must agree with it.
    static MultiPoly mul_serial(const MultiPoly& a, const MultiPoly& b);
    static MultiPoly mul_parallel(const MultiPoly& a, const MultiPoly& b);

    /// GCD of the monomials of all terms (the common monomial factor).
    Monomial monomial_content() const;
    /// Exact quotient; nullopt when d does not divide *this.
    std::optional<MultiPoly> divide_exact(const MultiPoly& d) const;

    std::string str() const;

  private:
    FieldPtr field_;
    TermMap terms_;
};

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op);

/// Recursive-Euclidean multivariate GCD, normalized to leading coefficient 1.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

/// The coefficient of v^k when the polynomial is read as univariate in v.
std::map<std::uint32_t, MultiPoly> univariate_view(const MultiPoly& p, std::uint32_t v);
MultiPoly from_univariate_view(const FieldPtr& field, std::uint32_t v,
                               const std::map<std::uint32_t, MultiPoly>& coeffs);

}  // namespace orekit
