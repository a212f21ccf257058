#pragma once

// Decision procedure for "can the odd integer delta be the distance between
// two perfect numbers?".
//
// For delta = b(b-1)/2 == 3 (mod 4), any pair m - n = delta with
// m = 2^(p-1)(2^p-1) gives 2n = A*B, A = 2^p - 1 + b, B = 2^p - b, and one of
// A, B is d times a square for a squarefree d | 2(2b-1). That yields the
// branch equations
//   side A: d*x^2 + (1 - b) = 2^p
//   side B: d*x^2 + b       = 2^p
// Each branch is closed by the rn_solver pipeline; every prime exponent it
// leaves is checked as a candidate. The remaining case, n = 6 and
// m = delta + 6, is checked separately.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perfgap/arith.hpp"
#include "perfgap/mersenne.hpp"
#include "perfgap/rn_solver.hpp"

namespace perfgap {

struct DecideConfig {
    BudgetConfig budget;
    std::vector<std::uint64_t> moduli = kDefaultModuli;
    std::uint64_t n_max = kDefaultNMax;
    std::uint64_t mersenne_exponent_cap = kDefaultMersenneExponentCap;
    CompletenessTable table = CompletenessTable::builtin();

    /// Throws std::invalid_argument on empty moduli or invalid budgets.
    void validate() const;
};

struct CaseAnalysis {
    BigInt delta;
    bool touchard_blocked = false;  // delta == +-1 (mod 12)
    unsigned mod4_class = 0;        // 1 or 3
    std::optional<BigInt> b;        // triangular index
    bool in_scope = false;
};

enum class Side { A, B };

std::string_view to_string(Side s);

struct Branch {
    Side side = Side::A;
    BigInt d;
    BigInt c;
    BranchStatus status;
};

/// A (side, d) pair dropped before analysis. For p > c_valuation,
/// v2(2^p - c) == c_valuation, so d*x^2 = 2^p - c forces
/// v2(d) == c_valuation (mod 2); primes p <= c_valuation were checked
/// directly and listed in checked_p.
struct PrunedBranch {
    Side side = Side::A;
    BigInt d;
    BigInt c;
    unsigned c_valuation = 0;
    std::vector<std::uint64_t> checked_p;
};

struct BranchPlan {
    std::vector<Branch> branches;  // status not yet analyzed
    std::vector<PrunedBranch> pruned;
};

struct CandidateCheck {
    std::uint64_t p = 0;
    MersenneStatus mersenne_status = MersenneStatus::untested;
    std::optional<BigInt> m;            // even perfect number, when 2^p - 1 is prime
    std::optional<BigInt> n_candidate;  // m - delta
    std::optional<EulerForm> euler_filter;
    std::optional<Perfectness> perfect_status;
};

struct PerfectnessCheck {
    BigInt value;
    EulerForm euler_filter = EulerForm::unknown;
    Perfectness perfect_status = Perfectness::unknown;
};

enum class Verdict { eliminated, inconclusive, solution_found, out_of_scope };

std::string_view to_string(Verdict v);

struct DecisionReport {
    BigInt delta;
    CaseAnalysis case_analysis;
    std::optional<PerfectnessCheck> delta_plus_6_check;
    /// Least prime p with 2^(p-1)(2^p-1) > delta; branch exponents start here.
    std::uint64_t p_min = 0;
    std::vector<Branch> branches;  // ordered by (side, d)
    std::vector<PrunedBranch> pruned;
    std::vector<CandidateCheck> candidates;  // ordered by p
    Verdict verdict = Verdict::inconclusive;
    /// Human-readable reasons behind the verdict (blocking rule, open
    /// branches, undecided candidates).
    std::vector<std::string> notes;
    /// (larger, smaller) perfect numbers at distance delta, when found.
    std::optional<std::pair<BigInt, BigInt>> witness;
    DecideConfig config;
};

/// Throws std::invalid_argument for even or non-positive delta.
CaseAnalysis case_analysis(const BigInt& delta);

/// Least prime p with 2^(p-1)(2^p - 1) > delta.
std::uint64_t minimal_exponent(const BigInt& delta);

/// Squarefree divisors of 2(2b - 1) on both sides, with the 2-adic parity
/// pruning applied. Throws std::invalid_argument for b < 3 and
/// BudgetExhausted if 2b - 1 cannot be factored.
BranchPlan generate_branches(const BigInt& b, const BudgetConfig& cfg = {});

/// Lucas-Lehmer on 2^p - 1 (p == 2 short-circuits), then the Euler-form
/// filter and a perfectness test on m - delta.
CandidateCheck check_candidate(std::uint64_t p, const BigInt& delta, const DecideConfig& cfg = {});

/// Perfectness of an odd value: Euler-form filter first, full sigma test
/// only when the filter cannot rule it out.
PerfectnessCheck check_odd_perfectness(const BigInt& value, const BudgetConfig& cfg = {});

DecisionReport decide(const BigInt& delta, const DecideConfig& cfg = {});

struct PairCheck {
    Perfectness x_status = Perfectness::unknown;
    Perfectness y_status = Perfectness::unknown;
    bool both_perfect = false;
    BigInt distance;
};

/// Throws std::invalid_argument for x < 1 or y < 1.
PairCheck verify_pair(const BigInt& x, const BigInt& y, const BudgetConfig& cfg = {});

}  // namespace perfgap
