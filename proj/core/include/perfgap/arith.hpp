#pragma once

// Arbitrary-precision integer primitives: square roots, 2-adic valuation,
// primality, budgeted factorization, divisor sums and the perfect-number
// predicates built on them.
//
// Primality is deterministic for n < 2^64 (Miller-Rabin with the first twelve
// prime bases). Above 2^64 a "probably prime" answer is returned after
// `primality_rounds` random-base rounds, so the error probability is at most
// 4^-rounds. Composite answers are always certain.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace perfgap {

using BigInt = mpz_class;

struct BudgetConfig {
    std::uint64_t trial_division_bound = 1'000'000;
    std::uint64_t rho_iteration_budget = 10'000'000;
    unsigned primality_rounds = 40;

    /// Throws std::invalid_argument if any field is zero.
    void validate() const;
};

/// Raised when an operation cannot finish inside its factorization budget.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Primality { composite, probably_prime, prime };
enum class Perfectness { perfect, not_perfect, unknown };
enum class EulerForm { possible, impossible, unknown };

std::string_view to_string(Primality p);
std::string_view to_string(Perfectness p);
std::string_view to_string(EulerForm e);

struct PrimeFactor {
    BigInt prime;
    unsigned exponent = 0;

    friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

/// value == prod(prime^exponent) * cofactor. When `complete`, cofactor is 1
/// and every listed prime passed is_prime (probable primes allowed above 2^64).
struct Factorization {
    BigInt value;
    std::vector<PrimeFactor> factors;  // strictly increasing primes
    BigInt cofactor = 1;               // unfactored composite part
    bool complete = true;
};

/// floor(sqrt(n)); throws std::domain_error for negative n.
BigInt integer_sqrt(const BigInt& n);

/// Returns the root when n is a perfect square, nullopt otherwise
/// (including every negative n).
std::optional<BigInt> square_root(const BigInt& n);
bool is_square(const BigInt& n);

/// Largest e with 2^e | n. Throws std::domain_error on zero.
unsigned v2(const BigInt& n);

Primality is_prime(const BigInt& n, const BudgetConfig& cfg = {});
Primality is_prime(std::uint64_t n);

/// Trial division up to cfg.trial_division_bound, then Pollard-Brent rho with
/// a shared iteration budget. Running out of budget yields complete == false.
/// Throws std::domain_error for n < 1.
Factorization factorize(const BigInt& n, const BudgetConfig& cfg = {});

/// Sum of divisors. Throws std::invalid_argument for an incomplete
/// factorization.
BigInt sigma(const Factorization& f);

Perfectness is_perfect(const BigInt& n, const BudgetConfig& cfg = {});
Perfectness is_perfect(const Factorization& f);

/// b >= 2 with b(b-1)/2 == delta, if any.
std::optional<BigInt> triangular_index(const BigInt& delta);

/// All squarefree divisors of n, ascending. Throws BudgetExhausted when n
/// cannot be fully factored within cfg.
std::vector<BigInt> squarefree_divisors(const BigInt& n, const BudgetConfig& cfg = {});

/// Checks the shape an odd perfect number must have: n == 1 (mod 4) and
/// n = q^k * m^2 with q == k == 1 (mod 4), q prime not dividing m.
/// Throws std::invalid_argument on even input.
EulerForm euler_form_filter(const BigInt& n, const BudgetConfig& cfg = {});
EulerForm euler_form_filter(const Factorization& f);

bool is_squarefree(const Factorization& f);

}  // namespace perfgap
