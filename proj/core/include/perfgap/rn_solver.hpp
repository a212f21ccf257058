#pragma once

// Generalized Ramanujan-Nagell equations d*x^2 + c = 2^n.
//
// Solutions are pairs (x, n) with x >= 1 and n >= 0; d*x^2 only depends on
// |x|, so the sign of x is dropped throughout.
//
// `analyze` runs a fixed rule pipeline and records each rule it applied as a
// certificate: a completeness-table citation, the adjacent-powers rule for
// x^2 +- 1 = 2^m, per-modulus residue sieves, the prime-exponent class
// closure, and direct checks of the finitely many exponents left over.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "perfgap/arith.hpp"

namespace perfgap {

/// d*x^2 + c = 2^n with d >= 1 squarefree and c != 0.
class RNEquation {
public:
    /// Throws std::invalid_argument when d is not a positive squarefree
    /// integer or c == 0.
    RNEquation(BigInt d, BigInt c);

    const BigInt& d() const { return d_; }
    const BigInt& c() const { return c_; }

    std::string to_string() const;

    friend bool operator==(const RNEquation&, const RNEquation&) = default;

private:
    BigInt d_;
    BigInt c_;
};

struct RNSolution {
    BigInt x;
    std::uint64_t n = 0;

    friend bool operator==(const RNSolution& a, const RNSolution& b) { return a.n == b.n && a.x == b.x; }
    friend std::strong_ordering operator<=>(const RNSolution& a, const RNSolution& b) {
        if (auto cmp = a.n <=> b.n; cmp != 0) return cmp;
        const int c = cmp(a.x, b.x);
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
};

/// True when d*x^2 + c == 2^n exactly.
bool satisfies(const RNEquation& eq, const RNSolution& s);

enum class NParity { any, odd };

std::string_view to_string(NParity p);

struct SieveReport {
    RNEquation equation;
    std::uint64_t modulus = 0;
    std::uint64_t n_min = 0;
    NParity parity = NParity::any;
    /// 2^n mod modulus is purely periodic from here on.
    std::uint64_t n_threshold = 0;
    /// Eventual period of 2^n mod modulus.
    std::uint64_t period = 0;
    /// Classes are residues of n modulo this (period, doubled when the odd
    /// parity constraint has to be folded in).
    std::uint64_t class_modulus = 0;
    /// Residues r such that some n >= max(n_min, n_threshold) with
    /// n == r (mod class_modulus) might carry a solution.
    std::vector<std::uint64_t> surviving_classes;
    /// Exponents in [n_min, n_threshold) the sieve says nothing about.
    std::vector<std::uint64_t> small_n_to_check;
};

/// Throws std::invalid_argument for modulus < 2 or modulus > 2^24.
SieveReport sieve(const RNEquation& eq, std::uint64_t modulus, std::uint64_t n_min = 0,
                  NParity parity = NParity::any);

/// Every solution with n_min <= n <= n_max, ascending by n.
std::vector<RNSolution> direct_search(const RNEquation& eq, std::uint64_t n_min, std::uint64_t n_max);

struct AdjacentPowersRule {
    bool plus_one = false;   // x^2 + 1 = 2^m (true) or x^2 - 1 = 2^m (false)
    unsigned shift = 0;      // n = m + shift
    std::vector<RNSolution> complete_set;  // in the original (x, n)
};

/// Applies when the equation is 2^k * (x^2 +- 1) = 2^n with k in {0, 1},
/// i.e. d in {1, 2} and c == +-d. x^2 + 1 = 2^m only has x = 1, m = 1
/// (odd x gives x^2 + 1 == 2 mod 4); x^2 - 1 = 2^m only has x = 3, m = 3
/// (x - 1 and x + 1 are powers of two differing by 2).
std::optional<AdjacentPowersRule> adjacent_powers(const RNEquation& eq);

struct TableEntry {
    RNEquation equation;
    std::vector<RNSolution> complete_solutions;
    std::string source;
};

/// Curated equations with known complete solution sets. Every entry is
/// re-verified on insertion: each listed solution must satisfy the
/// equation, and no unlisted solution may exist with n <= 256.
class CompletenessTable {
public:
    CompletenessTable() = default;

    /// The two entries shipped by default: 5x^2+3 and 2x^2+6.
    static CompletenessTable builtin();

    /// Parses the line-oriented format documented in docs/formats.md.
    /// Throws std::runtime_error with the offending line number.
    static CompletenessTable parse(std::string_view text);
    static CompletenessTable load(const std::filesystem::path& path);

    /// Throws std::invalid_argument if the entry fails verification or
    /// contradicts an existing entry for the same equation.
    void add(TableEntry entry);
    void merge(const CompletenessTable& other);

    const TableEntry* find(const RNEquation& eq) const;
    const std::vector<TableEntry>& entries() const { return entries_; }

    /// Canonical text form (the same format `parse` accepts).
    std::string serialize() const;

private:
    std::vector<TableEntry> entries_;
};

struct TableCitation {
    std::string source;
    std::vector<RNSolution> complete_set;
};

/// Surviving classes after intersecting all sieve reports, valid for
/// n >= n_from.
struct ClassIntersection {
    std::uint64_t n_from = 0;
    std::uint64_t class_modulus = 1;
    std::vector<std::uint64_t> surviving_classes;
};

/// Exponents checked one by one, with what they produced.
struct FiniteCheck {
    std::vector<std::uint64_t> n_values;
    std::vector<RNSolution> solutions;
};

/// Class r mod k with g = gcd(r, k) > 1: every member is a multiple of g, so
/// the only prime it can hold is g itself (checked when g is prime and in
/// the class).
struct PrimeClassClosure {
    std::uint64_t residue = 0;
    std::uint64_t class_modulus = 0;
    std::uint64_t gcd = 0;
    std::optional<std::uint64_t> checked_prime;
};

/// Plain search over [n_min, n_max]; attached to open branches.
struct SearchBound {
    std::uint64_t n_min = 0;
    std::uint64_t n_max = 0;
    std::vector<RNSolution> solutions;
};

using Certificate = std::variant<TableCitation, AdjacentPowersRule, SieveReport, ClassIntersection,
                                 FiniteCheck, PrimeClassClosure, SearchBound>;

enum class ClosureStatus { closed_complete, closed_finite_n, open };

std::string_view to_string(ClosureStatus s);

struct BranchStatus {
    RNEquation equation;
    ClosureStatus status = ClosureStatus::open;
    std::vector<RNSolution> solutions;
    std::vector<Certificate> rule_trace;
};

inline const std::vector<std::uint64_t> kDefaultModuli{3, 4, 5, 7, 8, 9, 11, 13, 16, 32, 64};
inline constexpr std::uint64_t kDefaultNMax = 2000;

struct AnalyzeOptions {
    std::uint64_t n_min = 0;
    NParity parity = NParity::any;
    std::vector<std::uint64_t> moduli = kDefaultModuli;
    std::uint64_t n_max = kDefaultNMax;
    /// Only prime exponents matter; enables the prime-class closure.
    bool primes_only = false;
};

/// Rule pipeline: table lookup, adjacent powers, then the combined sieve.
/// For closed_complete the solutions are the full set meeting n >= n_min and
/// the parity constraint. For closed_finite_n every exponent outside the
/// recorded finite checks is excluded (only prime exponents when
/// primes_only). Throws std::invalid_argument for empty moduli or
/// n_max < n_min.
BranchStatus analyze(const RNEquation& eq, const AnalyzeOptions& options,
                     const CompletenessTable& table = CompletenessTable::builtin());

}  // namespace perfgap
