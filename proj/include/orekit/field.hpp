#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace orekit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error {
    using Error::Error;
};

bool is_prime(std::uint64_t n);

/// Coefficient universe: characteristic (0 or a prime) plus the ordered
/// generators of the rational function field built on top of it.
struct FieldDescriptor {
    std::uint64_t characteristic = 0;
    std::vector<std::string> variables;

    FieldDescriptor(std::uint64_t ch, std::vector<std::string> vars);

    std::size_t nvars() const { return variables.size(); }
    std::optional<std::uint32_t> var_index(std::string_view name) const;
    const std::string& var_name(std::uint32_t i) const { return variables.at(i); }

    bool operator==(const FieldDescriptor& o) const {
        return characteristic == o.characteristic && variables == o.variables;
    }
};

using FieldPtr = std::shared_ptr<const FieldDescriptor>;

FieldPtr make_field(std::uint64_t characteristic, std::vector<std::string> variables);

inline void require_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || !(*a == *b)) throw FieldMismatch("mismatched field descriptors");
}

/// An element of the base field: an exact rational (characteristic 0) or a
/// residue mod p. All arithmetic is exact; overflow cannot occur.
class Scalar {
  public:
    Scalar() = default;  // rational zero

    static Scalar rational(mpq_class v);
    static Scalar modp(std::uint64_t p, std::int64_t v);
    static Scalar modp_raw(std::uint64_t p, std::uint64_t residue);
    /// The integer n in the field of the given characteristic.
    static Scalar of_int(std::uint64_t characteristic, std::int64_t n);
    static Scalar of_mpz(std::uint64_t characteristic, const mpz_class& n);

    std::uint64_t characteristic() const { return p_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;
    Scalar pow(std::uint64_t e) const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Total order used only for deterministic tie-breaking in output.
    bool less(const Scalar& o) const;

    const mpq_class& rational_value() const;
    std::uint64_t residue() const { return r_; }

    std::string str() const;

  private:
    std::uint64_t p_ = 0;  // 0 = characteristic zero
    std::uint64_t r_ = 0;  // residue when p_ > 0
    mpq_class q_;          // value when p_ == 0

    void check_compatible(const Scalar& o) const;
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);

}  // namespace orekit
