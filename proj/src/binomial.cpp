#include "orekit/binomial.hpp"

#include "orekit/field.hpp"

namespace orekit {

namespace {

// C(a, b) mod p for digits a, b < p
std::uint64_t small_binom_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    if (b > a) return 0;
    if (b > a - b) b = a - b;
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        num = static_cast<std::uint64_t>((static_cast<unsigned __int128>(num) * ((a - i + 1) % p)) % p);
        den = static_cast<std::uint64_t>((static_cast<unsigned __int128>(den) * (i % p)) % p);
    }
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(num) * mod_inverse(den, p)) % p);
}

}  // namespace

std::uint64_t lucas_binom(std::uint64_t n, std::uint64_t r, std::uint64_t p) {
    if (!is_prime(p)) throw Error("lucas_binom: modulus must be prime");
    if (r > n) return 0;
    std::uint64_t acc = 1;
    while (n || r) {
        std::uint64_t nd = n % p, rd = r % p;
        if (rd > nd) return 0;
        acc = static_cast<std::uint64_t>((static_cast<unsigned __int128>(acc) * small_binom_mod(nd, rd, p)) % p);
        n /= p;
        r /= p;
    }
    return acc;
}

mpz_class binom_z(std::uint64_t n, std::uint64_t r) {
    if (r > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
    return out;
}

}  // namespace orekit
