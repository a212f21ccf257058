#include "perfgap/arith.hpp"

#include <array>
#include <limits>

namespace perfgap {

namespace {

// Miller-Rabin with these bases is exact for n < 3.3e24, which covers 2^64.
constexpr std::array<std::uint64_t, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

constexpr std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

constexpr std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool strong_probable_prime(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool strong_probable_prime(const BigInt& n, const BigInt& a, const BigInt& d, unsigned s) {
    const BigInt n_minus_1 = n - 1;
    BigInt x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

bool fits_u64(const BigInt& n) {
    return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const BigInt& n) {
    // mpz_get_ui is only 64 bits wide on LP64 platforms.
    static_assert(sizeof(unsigned long) == 8);
    return mpz_get_ui(n.get_mpz_t());
}

}  // namespace

Primality is_prime(std::uint64_t n) {
    if (n < 2) return Primality::composite;
    for (std::uint64_t p : kWitnesses) {
        if (n % p == 0) return n == p ? Primality::prime : Primality::composite;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : kWitnesses) {
        if (!strong_probable_prime(n, a, d, s)) return Primality::composite;
    }
    return Primality::prime;
}

Primality is_prime(const BigInt& n, const BudgetConfig& cfg) {
    if (n < 2) return Primality::composite;
    if (fits_u64(n)) return is_prime(to_u64(n));

    for (unsigned long p = 2; p < 1000; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::composite;
    }

    BigInt d = n - 1;
    const unsigned s = static_cast<unsigned>(mpz_scan1(d.get_mpz_t(), 0));
    d >>= s;

    if (!strong_probable_prime(n, BigInt(2), d, s)) return Primality::composite;

    // Fixed seed: repeated calls give identical verdicts.
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(0x5eed1234u);
    const BigInt span = n - 3;
    for (unsigned round = 0; round < cfg.primality_rounds; ++round) {
        const BigInt a = rng.get_z_range(span) + 2;  // a in [2, n-2]
        if (!strong_probable_prime(n, a, d, s)) return Primality::composite;
    }
    return Primality::probably_prime;
}

}  // namespace perfgap
