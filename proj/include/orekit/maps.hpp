#pragma once

#include <map>
#include <vector>

#include "orekit/ratfunc.hpp"

namespace orekit {

/// A k-linear derivation of the rational function field, given by generator
/// images and extended to fractions by Leibniz and the quotient rule.
struct DerivationSpec {
    FieldPtr field;
    std::map<std::uint32_t, RatFunc> images;  // one image per field generator

    DerivationSpec(FieldPtr f, std::map<std::uint32_t, RatFunc> imgs);
    const RatFunc& image(std::uint32_t var) const;
};

RatFunc apply_derivation(const DerivationSpec& d, const RatFunc& f);
RatFunc apply_derivation_poly(const DerivationSpec& d, const MultiPoly& u);

/// n-fold composition of a derivation with itself. Generator images are
/// precomputed per power; general elements go through repeated application.
class DerivationPower {
  public:
    DerivationPower(DerivationSpec d, std::uint64_t n);

    std::uint64_t power() const { return n_; }
    const DerivationSpec& base() const { return d_; }

    RatFunc operator()(const RatFunc& f) const;
    const RatFunc& image(std::uint32_t var) const;

    /// Generator-image spec of this power. The Leibniz extension of these
    /// images coincides with the composite map exactly when that composite
    /// is itself a derivation (n a power of the characteristic).
    DerivationSpec to_derivation_spec() const;

  private:
    DerivationSpec d_;
    std::uint64_t n_;
    std::vector<std::map<std::uint32_t, RatFunc>> by_power_;  // [j][var] = d^j(x_var), j <= n
};

DerivationPower compose_power(DerivationSpec d, std::uint64_t n);

/// Equality is defined as agreement of generator images; for k-linear
/// derivations vanishing on p-th powers this determines the map.
bool derivation_equal_on_generators(const DerivationSpec& d1, const DerivationSpec& d2);
bool derivation_equal_on_generators(const DerivationPower& d1, const DerivationPower& d2);

/// A k-algebra automorphism of the field given by generator images,
/// optionally with images of the inverse (verified on generators).
struct AutomorphismSpec {
    FieldPtr field;
    std::map<std::uint32_t, RatFunc> images;
    std::map<std::uint32_t, RatFunc> inverse_images;  // empty when not supplied

    AutomorphismSpec(FieldPtr f, std::map<std::uint32_t, RatFunc> imgs,
                     std::map<std::uint32_t, RatFunc> inverse = {});
};

RatFunc apply_automorphism(const AutomorphismSpec& a, const RatFunc& f);

}  // namespace orekit
