#include "perfgap/rn_solver.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace perfgap {

namespace {

constexpr std::uint64_t kMaxModulus = 1ULL << 24;

BigInt power_of_two(std::uint64_t n) {
    BigInt v = 1;
    v <<= n;
    return v;
}

std::uint64_t residue(const BigInt& value, std::uint64_t modulus) {
    return mpz_fdiv_ui(value.get_mpz_t(), modulus);
}

bool parity_ok(std::uint64_t n, NParity parity) {
    return parity == NParity::any || (n & 1) == 1;
}

std::vector<RNSolution> filter_solutions(const std::vector<RNSolution>& sols, std::uint64_t n_min,
                                         NParity parity) {
    std::vector<RNSolution> kept;
    for (const auto& s : sols) {
        if (s.n >= n_min && parity_ok(s.n, parity)) kept.push_back(s);
    }
    return kept;
}

}  // namespace

RNEquation::RNEquation(BigInt d, BigInt c) : d_(std::move(d)), c_(std::move(c)) {
    if (d_ < 1) throw std::invalid_argument("d must be a positive integer, got " + d_.get_str());
    if (c_ == 0) throw std::invalid_argument("c must be nonzero");
    const Factorization f = factorize(d_);
    if (!f.complete) throw std::invalid_argument("cannot certify that d = " + d_.get_str() + " is squarefree");
    if (!is_squarefree(f)) throw std::invalid_argument("d must be squarefree, got " + d_.get_str());
}

std::string RNEquation::to_string() const {
    std::string out = d_ == 1 ? "x^2" : d_.get_str() + "x^2";
    out += c_ < 0 ? " - " : " + ";
    out += BigInt(abs(c_)).get_str();
    out += " = 2^n";
    return out;
}

std::string_view to_string(NParity p) {
    return p == NParity::odd ? "odd" : "any";
}

std::string_view to_string(ClosureStatus s) {
    switch (s) {
        case ClosureStatus::closed_complete: return "closed_complete";
        case ClosureStatus::closed_finite_n: return "closed_finite_n";
        case ClosureStatus::open: return "open";
    }
    return "?";
}

bool satisfies(const RNEquation& eq, const RNSolution& s) {
    return eq.d() * s.x * s.x + eq.c() == power_of_two(s.n);
}

SieveReport sieve(const RNEquation& eq, std::uint64_t modulus, std::uint64_t n_min, NParity parity) {
    if (modulus < 2 || modulus > kMaxModulus) {
        throw std::invalid_argument("sieve modulus must lie in [2, 2^24], got " + std::to_string(modulus));
    }

    // 2^n mod m walks into a cycle; the first repeated value marks both the
    // pre-period length and the period.
    std::vector<std::int64_t> first_seen(modulus, -1);
    std::vector<std::uint64_t> powers;
    std::uint64_t value = 1 % modulus;
    std::uint64_t threshold = 0;
    std::uint64_t period = 0;
    for (std::uint64_t n = 0;; ++n) {
        if (first_seen[value] >= 0) {
            threshold = static_cast<std::uint64_t>(first_seen[value]);
            period = n - threshold;
            break;
        }
        first_seen[value] = static_cast<std::int64_t>(n);
        powers.push_back(value);
        value = value * 2 % modulus;
    }

    // Residues d*x^2 + c takes mod m.
    std::vector<bool> attainable(modulus, false);
    const std::uint64_t d_mod = residue(eq.d(), modulus);
    const std::uint64_t c_mod = residue(eq.c(), modulus);
    for (std::uint64_t x = 0; x < modulus; ++x) {
        const auto sq = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % modulus);
        const auto lhs = static_cast<std::uint64_t>((static_cast<unsigned __int128>(d_mod) * sq + c_mod) % modulus);
        attainable[lhs] = true;
    }

    SieveReport report{eq, modulus, n_min, parity, threshold, period, 0, {}, {}};
    report.class_modulus = parity == NParity::odd ? std::lcm(period, std::uint64_t{2}) : period;

    for (std::uint64_t r = 0; r < report.class_modulus; ++r) {
        if (!parity_ok(r, parity)) continue;
        // Representative exponent n >= threshold with n == r (mod period).
        const std::uint64_t n0 = threshold + ((r % period) + period - threshold % period) % period;
        if (attainable[powers[n0]]) report.surviving_classes.push_back(r);
    }
    for (std::uint64_t n = n_min; n < threshold; ++n) {
        if (parity_ok(n, parity)) report.small_n_to_check.push_back(n);
    }
    return report;
}

std::vector<RNSolution> direct_search(const RNEquation& eq, std::uint64_t n_min, std::uint64_t n_max) {
    if (n_min > n_max) throw std::invalid_argument("direct_search needs n_min <= n_max");
    std::vector<RNSolution> found;
    BigInt target;
    BigInt power = power_of_two(n_min);
    for (std::uint64_t n = n_min; n <= n_max; ++n, power <<= 1) {
        target = power - eq.c();
        if (sgn(target) <= 0) continue;
        if (!mpz_divisible_p(target.get_mpz_t(), eq.d().get_mpz_t())) continue;
        mpz_divexact(target.get_mpz_t(), target.get_mpz_t(), eq.d().get_mpz_t());
        if (auto root = square_root(target)) found.push_back({std::move(*root), n});
        if (n == UINT64_MAX) break;
    }
    return found;
}

std::optional<AdjacentPowersRule> adjacent_powers(const RNEquation& eq) {
    if (eq.d() != 1 && eq.d() != 2) return std::nullopt;
    if (abs(eq.c()) != eq.d()) return std::nullopt;
    AdjacentPowersRule rule;
    rule.plus_one = eq.c() > 0;
    rule.shift = eq.d() == 2 ? 1 : 0;
    if (rule.plus_one) {
        rule.complete_set.push_back({BigInt(1), 1 + rule.shift});
    } else {
        rule.complete_set.push_back({BigInt(3), 3 + rule.shift});
    }
    return rule;
}

BranchStatus analyze(const RNEquation& eq, const AnalyzeOptions& options, const CompletenessTable& table) {
    if (options.moduli.empty()) throw std::invalid_argument("analyze needs at least one modulus");
    if (options.n_max < options.n_min) throw std::invalid_argument("analyze needs n_max >= n_min");

    BranchStatus result{eq, ClosureStatus::open, {}, {}};

    if (const TableEntry* entry = table.find(eq)) {
        result.status = ClosureStatus::closed_complete;
        result.solutions = filter_solutions(entry->complete_solutions, options.n_min, options.parity);
        result.rule_trace.emplace_back(TableCitation{entry->source, entry->complete_solutions});
        return result;
    }

    if (auto rule = adjacent_powers(eq)) {
        result.status = ClosureStatus::closed_complete;
        result.solutions = filter_solutions(rule->complete_set, options.n_min, options.parity);
        result.rule_trace.emplace_back(std::move(*rule));
        return result;
    }

    std::vector<SieveReport> reports;
    std::uint64_t n_from = options.n_min;
    std::uint64_t class_modulus = options.parity == NParity::odd ? 2 : 1;
    for (std::uint64_t m : options.moduli) {
        reports.push_back(sieve(eq, m, options.n_min, options.parity));
        n_from = std::max(n_from, reports.back().n_threshold);
        class_modulus = std::lcm(class_modulus, reports.back().class_modulus);
    }

    ClassIntersection combined{n_from, class_modulus, {}};
    for (std::uint64_t r = 0; r < class_modulus; ++r) {
        if (!parity_ok(r, options.parity)) continue;
        const bool survives = std::all_of(reports.begin(), reports.end(), [r](const SieveReport& rep) {
            return std::binary_search(rep.surviving_classes.begin(), rep.surviving_classes.end(),
                                      r % rep.class_modulus);
        });
        if (survives) combined.surviving_classes.push_back(r);
    }

    for (auto& rep : reports) result.rule_trace.emplace_back(std::move(rep));
    result.rule_trace.emplace_back(combined);

    // Exponents below every pre-period are checked one at a time.
    FiniteCheck small;
    for (std::uint64_t n = options.n_min; n < n_from; ++n) {
        if (!parity_ok(n, options.parity)) continue;
        small.n_values.push_back(n);
        for (auto& s : direct_search(eq, n, n)) small.solutions.push_back(std::move(s));
    }
    std::vector<RNSolution> solutions = small.solutions;
    if (!small.n_values.empty()) result.rule_trace.emplace_back(std::move(small));

    bool open = false;
    for (std::uint64_t r : combined.surviving_classes) {
        const std::uint64_t g = std::gcd(r, class_modulus);
        if (!options.primes_only || g == 1) {
            open = true;
            continue;
        }
        PrimeClassClosure closure{r, class_modulus, g, std::nullopt};
        if (g >= n_from && g % class_modulus == r && is_prime(g) == Primality::prime) {
            closure.checked_prime = g;
            for (auto& s : direct_search(eq, g, g)) solutions.push_back(std::move(s));
        }
        result.rule_trace.emplace_back(closure);
    }

    if (open) {
        SearchBound bound{options.n_min, options.n_max, {}};
        for (auto& s : direct_search(eq, options.n_min, options.n_max)) {
            if (parity_ok(s.n, options.parity)) bound.solutions.push_back(std::move(s));
        }
        result.status = ClosureStatus::open;
        result.solutions = bound.solutions;
        result.rule_trace.emplace_back(std::move(bound));
        return result;
    }

    std::sort(solutions.begin(), solutions.end());
    solutions.erase(std::unique(solutions.begin(), solutions.end()), solutions.end());
    result.status = ClosureStatus::closed_finite_n;
    result.solutions = std::move(solutions);
    return result;
}

}  // namespace perfgap
