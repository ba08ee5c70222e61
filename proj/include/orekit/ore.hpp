#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orekit/maps.hpp"

namespace orekit {

/// R[x; sigma, delta], optionally extended by central polynomial variables
/// t1..td. Multiplication is driven by x*r = sigma(r)*x + delta(r); absent
/// sigma means the identity, absent delta means zero.
struct OreRingDescriptor {
    FieldPtr coeffs;
    std::string skew_var;
    std::optional<AutomorphismSpec> sigma;
    std::optional<DerivationSpec> delta;
    std::vector<std::string> central_vars;

    OreRingDescriptor(FieldPtr field, std::string skew, std::optional<AutomorphismSpec> s,
                      std::optional<DerivationSpec> d, std::vector<std::string> central = {});

    std::optional<std::uint32_t> central_index(std::string_view name) const;
    bool operator==(const OreRingDescriptor& o) const;
};

using OreRingPtr = std::shared_ptr<const OreRingDescriptor>;

OreRingPtr make_ore_ring(FieldPtr field, std::string skew_var, std::optional<AutomorphismSpec> sigma,
                         std::optional<DerivationSpec> delta, std::vector<std::string> central_vars = {});

void require_same_ring(const OreRingPtr& a, const OreRingPtr& b);

struct OreMonomial {
    std::uint32_t xdeg = 0;
    std::vector<std::uint32_t> tdeg;  // one entry per central var

    std::uint64_t degree() const;
    OreMonomial operator*(const OreMonomial& o) const;
    bool operator==(const OreMonomial& o) const { return xdeg == o.xdeg && tdeg == o.tdeg; }
};

struct OreMonomialLess {
    bool operator()(const OreMonomial& a, const OreMonomial& b) const;
};

/// Element of the Ore ring, coefficients written on the left of x^m t^e.
class OreElement {
  public:
    using TermMap = std::map<OreMonomial, RatFunc, OreMonomialLess>;

    OreElement() = default;
    explicit OreElement(OreRingPtr ring) : ring_(std::move(ring)) {}

    static OreElement zero(OreRingPtr ring) { return OreElement(std::move(ring)); }
    static OreElement one(OreRingPtr ring);
    static OreElement coefficient(OreRingPtr ring, RatFunc c);
    static OreElement from_int(OreRingPtr ring, std::int64_t n);
    static OreElement skew(OreRingPtr ring, std::uint32_t e = 1);
    static OreElement central(OreRingPtr ring, std::uint32_t index, std::uint32_t e = 1);
    static OreElement of_term(OreRingPtr ring, OreMonomial m, RatFunc c);

    const OreRingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// Single term of skew and central degree zero?
    bool is_coefficient() const;
    RatFunc coefficient_value() const;  // throws when !is_coefficient (returns 0 for zero)

    std::optional<std::uint32_t> skew_degree() const;
    std::optional<std::uint32_t> central_degree(std::uint32_t index) const;

    void add_term(const OreMonomial& m, const RatFunc& c);

    OreElement operator+(const OreElement& o) const;
    OreElement operator-(const OreElement& o) const;
    OreElement operator*(const OreElement& o) const;
    OreElement operator-() const;
    OreElement scaled(const RatFunc& c) const;  // left multiple by a coefficient
    OreElement pow(std::uint64_t e) const;

    bool operator==(const OreElement& o) const { return (*this - o).is_zero(); }
    bool operator!=(const OreElement& o) const { return !(*this == o); }

    std::string str() const;

  private:
    OreRingPtr ring_;
    TermMap terms_;
};

OreElement ore_mul(const OreElement& a, const OreElement& b);
OreElement commutator(const OreElement& a, const OreElement& b);

/// Named generating set: coefficient field generators, the skew variable,
/// and the central variables. Centrality on these implies centrality.
std::vector<std::pair<std::string, OreElement>> ring_generators(const OreRingPtr& ring);

struct CentralityCertificate {
    bool central = false;
    std::string witness_name;                    // first violating generator
    std::optional<OreElement> witness_commutator;
    std::string str() const;
};

CentralityCertificate is_central(const OreElement& a);
CentralityCertificate is_central(const OreElement& a,
                                 const std::vector<std::pair<std::string, OreElement>>& witnesses);

/// Ring homomorphism given on generators: coefficient generators of the
/// source plus skew/central variables, each mapped to a target element.
struct RingHomSpec {
    OreRingPtr source, target;
    std::map<std::string, OreElement> coeff_images;
    std::map<std::string, OreElement> var_images;

    RingHomSpec(OreRingPtr src, OreRingPtr tgt, std::map<std::string, OreElement> coeffs,
                std::map<std::string, OreElement> vars);
};

OreElement hom_apply(const RingHomSpec& h, const OreElement& a);
OreElement hom_apply_coeff(const RingHomSpec& h, const RatFunc& c);

struct HomCertificate {
    bool consistent = false;
    std::string violation;  // empty when consistent
};

/// Checks the defining relations of a derivation-type source ring:
/// [h(x), h(a)] = h(delta(a)) on coefficient generators, pairwise commuting
/// coefficient images, and centrality of every central-variable image.
HomCertificate hom_check(const RingHomSpec& h);

struct WitnessEntry {
    std::string name;
    OreElement target;    // target element claimed to be hit
    OreElement preimage;  // source element mapping onto it
};

/// Verifies each claimed preimage by exact expansion; throws on failure.
std::map<std::string, OreElement> surjectivity_witnesses(const RingHomSpec& h,
                                                         const std::vector<WitnessEntry>& entries);

/// Growth profile over the p-th power subfield k: dimensions over k of the
/// spans of left K-basis multiples of words of length <= n in the K-basis
/// monomials and the skew variable, for n = 0..n_max.
std::vector<std::size_t> filtration_dims(const OreRingPtr& ring, int n_max);

/// All monomials in the coefficient field with every exponent < p: the basis
/// of K over its p-th power subfield.
std::vector<Monomial> pth_power_basis(const FieldPtr& field);

}  // namespace orekit
