#pragma once

#include <map>
#include <string>

#include "orekit/poly.hpp"

namespace orekit {

/// Element of the fraction field K = k(x1,...,xn). Representations are not
/// canonical; equality is semantic (cross-multiplication). The denominator
/// is normalized to leading coefficient 1 so printing is stable.
class RatFunc {
  public:
    RatFunc() = default;
    RatFunc(MultiPoly num, MultiPoly den);
    explicit RatFunc(MultiPoly num);

    static RatFunc zero(FieldPtr field) { return RatFunc(MultiPoly::zero(std::move(field))); }
    static RatFunc one(FieldPtr field) { return RatFunc(MultiPoly::one(std::move(field))); }
    static RatFunc constant(FieldPtr field, std::int64_t n) { return RatFunc(MultiPoly::constant(std::move(field), n)); }
    static RatFunc constant(FieldPtr field, Scalar s) { return RatFunc(MultiPoly::constant(std::move(field), std::move(s))); }
    static RatFunc variable(FieldPtr field, std::uint32_t index, std::uint32_t e = 1) {
        return RatFunc(MultiPoly::variable(std::move(field), index, e));
    }
    static RatFunc variable(FieldPtr field, std::string_view name, std::uint32_t e = 1) {
        return RatFunc(MultiPoly::variable(std::move(field), name, e));
    }

    const FieldPtr& field() const { return num_.field(); }
    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_polynomial() const;
    /// Scalar value when num and den are constants; throws otherwise.
    Scalar as_scalar() const;

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc inverse() const;
    RatFunc pow(std::int64_t e) const;
    RatFunc scaled(const Scalar& c) const { return RatFunc(num_.scaled(c), den_); }

    /// Semantic equality: a/b = c/d iff ad = cb.
    bool operator==(const RatFunc& o) const;
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    /// Force a full GCD reduction of the stored representation.
    RatFunc reduced() const;

    std::string str() const;

  private:
    MultiPoly num_, den_;

    void normalize();
};

bool ratfunc_eq(const RatFunc& f, const RatFunc& g);

/// Evaluates a polynomial at variable images in another field.
RatFunc eval_poly(const MultiPoly& p, const FieldPtr& target,
                  const std::map<std::uint32_t, RatFunc>& images);
RatFunc eval_ratfunc(const RatFunc& f, const FieldPtr& target,
                     const std::map<std::uint32_t, RatFunc>& images);

/// Writes f over Fp(x1..xn) as sum over monomials m with exponents < p of
/// c_m * m, where each c_m lies in the subfield k of p-th powers. The
/// reconstruction sum equals f exactly.
std::map<Monomial, RatFunc, GrlexLess> pth_power_decompose(const RatFunc& f);

}  // namespace orekit
