#include "perfgap/decider.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace perfgap {

void DecideConfig::validate() const {
    budget.validate();
    if (moduli.empty()) throw std::invalid_argument("at least one sieve modulus is required");
    for (auto m : moduli) {
        if (m < 2) throw std::invalid_argument("sieve moduli must be >= 2");
    }
}

std::string_view to_string(Side s) {
    return s == Side::A ? "A" : "B";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::eliminated: return "eliminated";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::solution_found: return "solution_found";
        case Verdict::out_of_scope: return "out_of_scope";
    }
    return "?";
}

CaseAnalysis case_analysis(const BigInt& delta) {
    if (delta < 1 || mpz_even_p(delta.get_mpz_t())) {
        throw std::invalid_argument("delta must be a positive odd integer, got " + delta.get_str());
    }
    CaseAnalysis ca;
    ca.delta = delta;
    const unsigned long mod12 = mpz_fdiv_ui(delta.get_mpz_t(), 12);
    ca.touchard_blocked = mod12 == 1 || mod12 == 11;
    ca.mod4_class = static_cast<unsigned>(mpz_fdiv_ui(delta.get_mpz_t(), 4));
    ca.b = triangular_index(delta);
    ca.in_scope = ca.touchard_blocked || (ca.mod4_class == 3 && ca.b.has_value());
    return ca;
}

std::uint64_t minimal_exponent(const BigInt& delta) {
    for (std::uint64_t p = 2;; ++p) {
        if (is_prime(p) == Primality::prime && euclid_value(p) > delta) return p;
    }
}

BranchPlan generate_branches(const BigInt& b, const BudgetConfig& cfg) {
    if (b < 3) throw std::invalid_argument("triangular index must be >= 3, got " + b.get_str());
    const std::vector<BigInt> divisors = squarefree_divisors(2 * (2 * b - 1), cfg);

    BranchPlan plan;
    for (Side side : {Side::A, Side::B}) {
        const BigInt c = side == Side::A ? BigInt(1 - b) : b;
        const unsigned k = v2(c);
        for (const auto& d : divisors) {
            const unsigned d_val = mpz_even_p(d.get_mpz_t()) ? 1 : 0;
            if (d_val % 2 == k % 2) {
                plan.branches.push_back({side, d, c, BranchStatus{RNEquation(d, c), ClosureStatus::open, {}, {}}});
                continue;
            }
            // The valuation argument only covers p > k; smaller primes are
            // checked by substitution.
            PrunedBranch pruned{side, d, c, k, {}};
            bool hit = false;
            const RNEquation eq(d, c);
            for (std::uint64_t p = 2; p <= k; ++p) {
                if (is_prime(p) != Primality::prime) continue;
                pruned.checked_p.push_back(p);
                hit = hit || !direct_search(eq, p, p).empty();
            }
            if (hit) {
                plan.branches.push_back({side, d, c, BranchStatus{eq, ClosureStatus::open, {}, {}}});
            } else {
                plan.pruned.push_back(std::move(pruned));
            }
        }
    }
    auto key = [](const auto& br) { return std::tuple(br.side, br.d); };
    std::sort(plan.branches.begin(), plan.branches.end(),
              [&](const Branch& l, const Branch& r) { return key(l) < key(r); });
    std::sort(plan.pruned.begin(), plan.pruned.end(),
              [&](const PrunedBranch& l, const PrunedBranch& r) { return key(l) < key(r); });
    return plan;
}

PerfectnessCheck check_odd_perfectness(const BigInt& value, const BudgetConfig& cfg) {
    if (value < 1 || mpz_even_p(value.get_mpz_t())) {
        throw std::invalid_argument("check_odd_perfectness needs a positive odd value");
    }
    PerfectnessCheck check{value, EulerForm::impossible, Perfectness::not_perfect};
    if (mpz_fdiv_ui(value.get_mpz_t(), 4) != 1) return check;

    const Factorization f = factorize(value, cfg);
    check.euler_filter = euler_form_filter(f);
    // An odd number failing the Euler form is not perfect.
    check.perfect_status = check.euler_filter == EulerForm::impossible ? Perfectness::not_perfect : is_perfect(f);
    return check;
}

CandidateCheck check_candidate(std::uint64_t p, const BigInt& delta, const DecideConfig& cfg) {
    if (is_prime(p) != Primality::prime) throw std::invalid_argument("candidate exponent must be prime");
    CandidateCheck check;
    check.p = p;
    const MersenneCandidate mc = test_mersenne(p, cfg.mersenne_exponent_cap);
    check.mersenne_status = mc.status;
    if (mc.status != MersenneStatus::prime) return check;

    check.m = even_perfect(mc);
    check.n_candidate = *check.m - delta;
    if (*check.n_candidate < 1) return check;
    const PerfectnessCheck pc = check_odd_perfectness(*check.n_candidate, cfg.budget);
    check.euler_filter = pc.euler_filter;
    check.perfect_status = pc.perfect_status;
    return check;
}

DecisionReport decide(const BigInt& delta, const DecideConfig& cfg) {
    cfg.validate();
    DecisionReport report;
    report.delta = delta;
    report.case_analysis = case_analysis(delta);
    report.config = cfg;
    const CaseAnalysis& ca = report.case_analysis;

    if (ca.touchard_blocked) {
        report.verdict = Verdict::eliminated;
        report.notes.push_back("touchard: delta == " + std::string(mpz_fdiv_ui(delta.get_mpz_t(), 12) == 1 ? "1" : "-1") +
                               " (mod 12) cannot be the distance between two perfect numbers");
        return report;
    }
    if (!ca.in_scope) {
        report.verdict = Verdict::out_of_scope;
        if (ca.mod4_class == 1) {
            report.notes.push_back("delta == 1 (mod 4): the case odd perfect minus even perfect has no "
                                   "factorization into branch equations");
        } else {
            report.notes.push_back("delta == 3 (mod 4) but not triangular: no factorization 2n = A*B");
        }
        return report;
    }

    bool undecided = false;

    // n = 6 and m = delta + 6 odd.
    report.delta_plus_6_check = check_odd_perfectness(delta + 6, cfg.budget);
    switch (report.delta_plus_6_check->perfect_status) {
        case Perfectness::perfect:
            report.witness = std::pair(delta + 6, BigInt(6));
            break;
        case Perfectness::unknown:
            undecided = true;
            report.notes.push_back("delta + 6 = " + BigInt(delta + 6).get_str() + ": perfectness unknown within budget");
            break;
        case Perfectness::not_perfect:
            break;
    }

    report.p_min = minimal_exponent(delta);

    BranchPlan plan;
    try {
        plan = generate_branches(*ca.b, cfg.budget);
    } catch (const BudgetExhausted& e) {
        report.verdict = report.witness ? Verdict::solution_found : Verdict::inconclusive;
        report.notes.push_back(e.what());
        return report;
    }

    AnalyzeOptions options;
    options.n_min = report.p_min;
    options.parity = NParity::any;
    options.moduli = cfg.moduli;
    options.n_max = std::max(cfg.n_max, report.p_min);
    options.primes_only = true;

    std::set<std::uint64_t> exponents;
    for (auto& br : plan.branches) {
        br.status = analyze(br.status.equation, options, cfg.table);
        if (br.status.status == ClosureStatus::open) {
            undecided = true;
            report.notes.push_back("branch (" + std::string(to_string(br.side)) + ", d=" + br.d.get_str() +
                                   "): " + br.status.equation.to_string() + " left open");
        }
        for (const auto& s : br.status.solutions) {
            if (s.n >= report.p_min && is_prime(s.n) == Primality::prime) exponents.insert(s.n);
        }
    }
    report.branches = std::move(plan.branches);
    report.pruned = std::move(plan.pruned);

    for (std::uint64_t p : exponents) {
        CandidateCheck check = check_candidate(p, delta, cfg);
        if (check.mersenne_status == MersenneStatus::untested) {
            undecided = true;
            report.notes.push_back("p = " + std::to_string(p) + ": exponent above the Lucas-Lehmer cap");
        } else if (check.perfect_status == Perfectness::unknown) {
            undecided = true;
            report.notes.push_back("p = " + std::to_string(p) + ": perfectness of m - delta unknown within budget");
        } else if (check.perfect_status == Perfectness::perfect && !report.witness) {
            report.witness = std::pair(*check.m, *check.n_candidate);
        }
        report.candidates.push_back(std::move(check));
    }

    if (report.witness) {
        report.verdict = Verdict::solution_found;
    } else if (undecided) {
        report.verdict = Verdict::inconclusive;
    } else {
        report.verdict = Verdict::eliminated;
    }
    return report;
}

PairCheck verify_pair(const BigInt& x, const BigInt& y, const BudgetConfig& cfg) {
    if (x < 1 || y < 1) throw std::invalid_argument("verify_pair needs positive integers");
    PairCheck check;
    check.x_status = is_perfect(x, cfg);
    check.y_status = is_perfect(y, cfg);
    check.both_perfect = check.x_status == Perfectness::perfect && check.y_status == Perfectness::perfect;
    check.distance = abs(x - y);
    return check;
}

}  // namespace perfgap
