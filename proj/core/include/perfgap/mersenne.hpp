#pragma once

// Mersenne-prime testing and even perfect numbers 2^(p-1) * (2^p - 1).

#include <array>
#include <cstdint>
#include <string_view>

#include "perfgap/arith.hpp"

namespace perfgap {

enum class MersenneStatus { prime, composite, untested };

std::string_view to_string(MersenneStatus s);

struct MersenneCandidate {
    std::uint64_t p = 0;
    MersenneStatus status = MersenneStatus::untested;
};

/// Mersenne exponents up to 31. Used as a test oracle only; certificates
/// always come from an actual Lucas-Lehmer run.
inline constexpr std::array<std::uint64_t, 8> kKnownMersenneExponents{2, 3, 5, 7, 13, 17, 19, 31};

inline constexpr std::uint64_t kDefaultMersenneExponentCap = 10007;

/// Lucas-Lehmer: s0 = 4, s_{k+1} = s_k^2 - 2 mod 2^p - 1; 2^p - 1 is prime iff
/// s_{p-2} == 0. Requires p an odd prime; throws std::invalid_argument
/// otherwise (p == 2 is the caller's special case).
MersenneStatus lucas_lehmer(std::uint64_t p);

/// Classifies 2^p - 1 for any p >= 1. Exponents above `cap` are left
/// untested; composite p short-circuits to composite.
MersenneCandidate test_mersenne(std::uint64_t p, std::uint64_t cap = kDefaultMersenneExponentCap);

/// 2^p - 1.
BigInt mersenne_number(std::uint64_t p);

/// 2^(p-1) * (2^p - 1) for a verified exponent. Throws std::invalid_argument
/// when 2^p - 1 is not prime.
BigInt even_perfect(std::uint64_t p);
BigInt even_perfect(const MersenneCandidate& verified);

/// Same formula with no primality requirement; used for size bounds.
BigInt euclid_value(std::uint64_t p);

}  // namespace perfgap
