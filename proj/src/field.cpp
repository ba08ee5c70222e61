#include "orekit/field.hpp"

#include <algorithm>
#include <set>

namespace orekit {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

FieldDescriptor::FieldDescriptor(std::uint64_t ch, std::vector<std::string> vars)
    : characteristic(ch), variables(std::move(vars)) {
    if (ch != 0 && !is_prime(ch)) throw Error("characteristic must be 0 or a prime");
    std::set<std::string> seen;
    for (const auto& v : variables) {
        if (v.empty()) throw Error("empty variable name");
        if (!seen.insert(v).second) throw Error("duplicate variable name: " + v);
    }
}

std::optional<std::uint32_t> FieldDescriptor::var_index(std::string_view name) const {
    for (std::uint32_t i = 0; i < variables.size(); ++i)
        if (variables[i] == name) return i;
    return std::nullopt;
}

FieldPtr make_field(std::uint64_t characteristic, std::vector<std::string> variables) {
    return std::make_shared<const FieldDescriptor>(characteristic, std::move(variables));
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
    // extended Euclid; p prime, a != 0 mod p
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw Error("not invertible mod p");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

}  // namespace

Scalar Scalar::rational(mpq_class v) {
    Scalar s;
    s.p_ = 0;
    s.q_ = std::move(v);
    s.q_.canonicalize();
    return s;
}

Scalar Scalar::modp(std::uint64_t p, std::int64_t v) {
    Scalar s;
    s.p_ = p;
    std::int64_t m = v % static_cast<std::int64_t>(p);
    if (m < 0) m += static_cast<std::int64_t>(p);
    s.r_ = static_cast<std::uint64_t>(m);
    return s;
}

Scalar Scalar::modp_raw(std::uint64_t p, std::uint64_t residue) {
    Scalar s;
    s.p_ = p;
    s.r_ = residue % p;
    return s;
}

Scalar Scalar::of_int(std::uint64_t characteristic, std::int64_t n) {
    return characteristic == 0 ? rational(mpq_class(static_cast<long>(n))) : modp(characteristic, n);
}

Scalar Scalar::of_mpz(std::uint64_t characteristic, const mpz_class& n) {
    if (characteristic == 0) return rational(mpq_class(n));
    mpz_class m = n % mpz_class(static_cast<unsigned long>(characteristic));
    if (m < 0) m += static_cast<unsigned long>(characteristic);
    return modp_raw(characteristic, m.get_ui());
}

void Scalar::check_compatible(const Scalar& o) const {
    if (p_ != o.p_) throw FieldMismatch("scalar characteristic mismatch");
}

bool Scalar::is_zero() const { return p_ ? r_ == 0 : q_ == 0; }
bool Scalar::is_one() const { return p_ ? r_ == 1 : q_ == 1; }

Scalar Scalar::operator+(const Scalar& o) const {
    check_compatible(o);
    return p_ ? modp_raw(p_, r_ + o.r_ >= p_ ? r_ + o.r_ - p_ : r_ + o.r_) : rational(q_ + o.q_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_compatible(o);
    return p_ ? modp_raw(p_, r_ >= o.r_ ? r_ - o.r_ : r_ + p_ - o.r_) : rational(q_ - o.q_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_compatible(o);
    return p_ ? modp_raw(p_, mul_mod(r_, o.r_, p_)) : rational(q_ * o.q_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
    return p_ ? modp_raw(p_, r_ == 0 ? 0 : p_ - r_) : rational(-q_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("division by zero scalar");
    return p_ ? modp_raw(p_, mod_inverse(r_, p_)) : rational(1 / q_);
}

Scalar Scalar::pow(std::uint64_t e) const {
    Scalar acc = Scalar::of_int(p_, 1);
    Scalar base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

bool Scalar::operator==(const Scalar& o) const {
    if (p_ != o.p_) return false;
    return p_ ? r_ == o.r_ : q_ == o.q_;
}

bool Scalar::less(const Scalar& o) const {
    check_compatible(o);
    return p_ ? r_ < o.r_ : q_ < o.q_;
}

const mpq_class& Scalar::rational_value() const {
    if (p_ != 0) throw Error("not a characteristic-zero scalar");
    return q_;
}

std::string Scalar::str() const {
    return p_ ? std::to_string(r_) : q_.get_str();
}

}  // namespace orekit
