#include "perfgap/mersenne.hpp"

#include <stdexcept>
#include <string>

namespace perfgap {

std::string_view to_string(MersenneStatus s) {
    switch (s) {
        case MersenneStatus::prime: return "prime";
        case MersenneStatus::composite: return "composite";
        case MersenneStatus::untested: return "untested";
    }
    return "?";
}

BigInt mersenne_number(std::uint64_t p) {
    BigInt m = 1;
    m <<= p;
    return m - 1;
}

MersenneStatus lucas_lehmer(std::uint64_t p) {
    if (p < 3 || is_prime(p) != Primality::prime) {
        throw std::invalid_argument("lucas_lehmer needs an odd prime exponent, got " + std::to_string(p));
    }
    const BigInt modulus = mersenne_number(p);
    BigInt s = 4;
    BigInt sq, high;
    for (std::uint64_t k = 0; k + 2 < p; ++k) {
        sq = s * s;
        // x mod 2^p - 1 == (x & (2^p - 1)) + (x >> p), folded until small.
        while (sq > modulus) {
            mpz_fdiv_q_2exp(high.get_mpz_t(), sq.get_mpz_t(), p);
            mpz_fdiv_r_2exp(sq.get_mpz_t(), sq.get_mpz_t(), p);
            sq += high;
        }
        if (sq == modulus) sq = 0;
        if (sq < 2) sq += modulus;
        s = sq - 2;
    }
    return s == 0 ? MersenneStatus::prime : MersenneStatus::composite;
}

MersenneCandidate test_mersenne(std::uint64_t p, std::uint64_t cap) {
    if (p == 2) return {p, MersenneStatus::prime};
    if (is_prime(p) != Primality::prime) return {p, MersenneStatus::composite};
    if (p > cap) return {p, MersenneStatus::untested};
    return {p, lucas_lehmer(p)};
}

BigInt euclid_value(std::uint64_t p) {
    if (p == 0) throw std::invalid_argument("exponent must be positive");
    BigInt value = mersenne_number(p);
    value <<= (p - 1);
    return value;
}

BigInt even_perfect(const MersenneCandidate& verified) {
    if (verified.status != MersenneStatus::prime) {
        throw std::invalid_argument("2^" + std::to_string(verified.p) + " - 1 is not a verified prime");
    }
    return euclid_value(verified.p);
}

BigInt even_perfect(std::uint64_t p) {
    return even_perfect(test_mersenne(p, UINT64_MAX));
}

}  // namespace perfgap
