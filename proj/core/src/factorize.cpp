#include "perfgap/arith.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace perfgap {

namespace {

using FactorMap = std::map<BigInt, unsigned>;

// Divides out every p <= bound. Returns the last trial divisor tried, so
// callers know the remaining cofactor has no prime factor up to it.
std::uint64_t trial_divide(BigInt& cofactor, std::uint64_t bound, FactorMap& found) {
    if (cofactor > 1) {
        const auto twos = static_cast<unsigned>(mpz_scan1(cofactor.get_mpz_t(), 0));
        if (twos > 0) {
            found[2] += twos;
            cofactor >>= twos;
        }
    }
    std::uint64_t p = 3;
    for (; p <= bound && cofactor > 1; p += 2) {
        if (mpz_cmp_ui(cofactor.get_mpz_t(), p * p) < 0) {
            return UINT64_MAX;  // what remains is 1 or prime
        }
        if (mpz_fits_ulong_p(cofactor.get_mpz_t())) {
            unsigned long c = mpz_get_ui(cofactor.get_mpz_t());
            for (; p <= bound && p * p <= c; p += 2) {
                if (c % p != 0) continue;
                unsigned e = 0;
                while (c % p == 0) {
                    c /= p;
                    ++e;
                }
                found[BigInt(static_cast<unsigned long>(p))] += e;
            }
            cofactor = c;
            if (p * p > c) return UINT64_MAX;
            return bound;
        }
        if (mpz_divisible_ui_p(cofactor.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(cofactor.get_mpz_t(), p)) {
                mpz_divexact_ui(cofactor.get_mpz_t(), cofactor.get_mpz_t(), p);
                ++e;
            }
            found[BigInt(static_cast<unsigned long>(p))] += e;
        }
    }
    if (cofactor > 1 && mpz_cmp_ui(cofactor.get_mpz_t(), p * p) < 0) return UINT64_MAX;
    return bound;
}

// Pollard rho, Brent's cycle variant with batched gcds. Spends at most
// `budget` polynomial steps; returns a nontrivial factor or nullopt.
std::optional<BigInt> brent_rho(const BigInt& n, std::uint64_t& budget) {
    constexpr std::uint64_t kBatch = 128;
    for (unsigned long c = 1; budget > 0; ++c) {
        BigInt y = 2, x, ys, q = 1, g = 1;
        auto step = [&](BigInt& v) {
            v = (v * v + c) % n;
            --budget;
        };
        std::uint64_t r = 1;
        bool exhausted = false;
        while (g == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) {
                if (budget == 0) {
                    exhausted = true;
                    break;
                }
                step(y);
            }
            for (std::uint64_t k = 0; k < r && g == 1 && !exhausted; k += kBatch) {
                ys = y;
                const std::uint64_t limit = std::min(kBatch, r - k);
                for (std::uint64_t i = 0; i < limit; ++i) {
                    if (budget == 0) {
                        exhausted = true;
                        break;
                    }
                    step(y);
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            if (exhausted && g == 1) return std::nullopt;
            r *= 2;
        }
        if (g == n) {
            // The batch overshot; replay it one step at a time.
            do {
                if (budget == 0) return std::nullopt;
                step(ys);
                BigInt diff = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
    return std::nullopt;
}

// Returns (root, k) with n == root^k and k maximal, or (n, 1).
std::pair<BigInt, unsigned> perfect_power(const BigInt& n) {
    if (!mpz_perfect_power_p(n.get_mpz_t())) return {n, 1};
    const auto bits = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
    for (unsigned k = bits; k >= 2; --k) {
        BigInt root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0 && root > 1) return {root, k};
    }
    return {n, 1};
}

}  // namespace

Factorization factorize(const BigInt& n, const BudgetConfig& cfg) {
    if (n < 1) throw std::domain_error("factorize needs n >= 1");
    cfg.validate();

    Factorization result;
    result.value = n;

    FactorMap found;
    BigInt rest = n;
    const std::uint64_t bound = std::max<std::uint64_t>(2, std::min<std::uint64_t>(cfg.trial_division_bound, 4'000'000'000ULL));
    const std::uint64_t cleared = trial_divide(rest, bound, found);

    BigInt unfactored = 1;
    if (rest > 1) {
        if (cleared == UINT64_MAX) {
            found[rest] += 1;
        } else {
            std::uint64_t budget = cfg.rho_iteration_budget;
            std::vector<std::pair<BigInt, unsigned>> pending{{rest, 1}};
            while (!pending.empty()) {
                auto [value, mult] = std::move(pending.back());
                pending.pop_back();
                if (value == 1) continue;
                if (is_prime(value, cfg) != Primality::composite) {
                    found[value] += mult;
                    continue;
                }
                if (auto [root, k] = perfect_power(value); k > 1) {
                    pending.emplace_back(root, mult * k);
                    continue;
                }
                if (auto factor = brent_rho(value, budget)) {
                    pending.emplace_back(value / *factor, mult);
                    pending.emplace_back(std::move(*factor), mult);
                    continue;
                }
                BigInt power;
                mpz_pow_ui(power.get_mpz_t(), value.get_mpz_t(), mult);
                unfactored *= power;
            }
        }
    }

    // A prime split off by rho may also divide the unfactored remainder.
    for (auto& [p, e] : found) {
        while (unfactored > 1 && mpz_divisible_p(unfactored.get_mpz_t(), p.get_mpz_t())) {
            mpz_divexact(unfactored.get_mpz_t(), unfactored.get_mpz_t(), p.get_mpz_t());
            ++e;
        }
    }

    result.factors.reserve(found.size());
    for (auto& [p, e] : found) result.factors.push_back({p, e});
    result.cofactor = unfactored;
    result.complete = unfactored == 1;
    return result;
}

}  // namespace perfgap
