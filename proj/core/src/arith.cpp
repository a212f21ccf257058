#include "perfgap/arith.hpp"

#include <algorithm>

namespace perfgap {

void BudgetConfig::validate() const {
    if (trial_division_bound == 0 || rho_iteration_budget == 0 || primality_rounds == 0) {
        throw std::invalid_argument("budget fields must all be >= 1");
    }
}

std::string_view to_string(Primality p) {
    switch (p) {
        case Primality::composite: return "composite";
        case Primality::probably_prime: return "probably_prime";
        case Primality::prime: return "prime";
    }
    return "?";
}

std::string_view to_string(Perfectness p) {
    switch (p) {
        case Perfectness::perfect: return "perfect";
        case Perfectness::not_perfect: return "not_perfect";
        case Perfectness::unknown: return "unknown";
    }
    return "?";
}

std::string_view to_string(EulerForm e) {
    switch (e) {
        case EulerForm::possible: return "possible";
        case EulerForm::impossible: return "impossible";
        case EulerForm::unknown: return "unknown";
    }
    return "?";
}

BigInt integer_sqrt(const BigInt& n) {
    if (sgn(n) < 0) throw std::domain_error("integer_sqrt of a negative number");
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root;
}

std::optional<BigInt> square_root(const BigInt& n) {
    if (sgn(n) < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
    return integer_sqrt(n);
}

bool is_square(const BigInt& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

unsigned v2(const BigInt& n) {
    if (sgn(n) == 0) throw std::domain_error("v2 of zero");
    // mpz_scan1 works on the two's-complement view, which keeps the
    // trailing-zero count for negative values.
    return static_cast<unsigned>(mpz_scan1(n.get_mpz_t(), 0));
}

BigInt sigma(const Factorization& f) {
    if (!f.complete) throw std::invalid_argument("sigma needs a complete factorization");
    BigInt total = 1;
    for (const auto& [p, e] : f.factors) {
        BigInt power;
        mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), e + 1);
        total *= (power - 1) / (p - 1);
    }
    return total;
}

Perfectness is_perfect(const Factorization& f) {
    if (f.value == 1) return Perfectness::not_perfect;
    if (!f.complete) return Perfectness::unknown;
    return sigma(f) == 2 * f.value ? Perfectness::perfect : Perfectness::not_perfect;
}

Perfectness is_perfect(const BigInt& n, const BudgetConfig& cfg) {
    if (n < 1) throw std::domain_error("is_perfect needs n >= 1");
    if (n == 1) return Perfectness::not_perfect;
    return is_perfect(factorize(n, cfg));
}

std::optional<BigInt> triangular_index(const BigInt& delta) {
    if (delta < 1) return std::nullopt;
    // b(b-1)/2 = delta  <=>  (2b-1)^2 = 8 delta + 1
    const auto root = square_root(8 * delta + 1);
    if (!root) return std::nullopt;
    return (*root + 1) / 2;
}

bool is_squarefree(const Factorization& f) {
    if (!f.complete) throw std::invalid_argument("squarefree test needs a complete factorization");
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](const PrimeFactor& pf) { return pf.exponent == 1; });
}

std::vector<BigInt> squarefree_divisors(const BigInt& n, const BudgetConfig& cfg) {
    const Factorization f = factorize(n, cfg);
    if (!f.complete) {
        throw BudgetExhausted("cannot enumerate squarefree divisors of " + n.get_str() +
                              ": factorization budget exhausted");
    }
    std::vector<BigInt> divisors{1};
    for (const auto& pf : f.factors) {
        const std::size_t count = divisors.size();
        for (std::size_t i = 0; i < count; ++i) divisors.push_back(divisors[i] * pf.prime);
    }
    std::sort(divisors.begin(), divisors.end());
    return divisors;
}

EulerForm euler_form_filter(const Factorization& f) {
    if (mpz_even_p(f.value.get_mpz_t())) throw std::invalid_argument("euler_form_filter needs odd n");
    if (mpz_fdiv_ui(f.value.get_mpz_t(), 4) != 1) return EulerForm::impossible;
    if (!f.complete) return EulerForm::unknown;

    const PrimeFactor* special = nullptr;
    for (const auto& pf : f.factors) {
        if (pf.exponent % 2 == 0) continue;
        if (special != nullptr) return EulerForm::impossible;
        special = &pf;
    }
    if (special == nullptr) return EulerForm::impossible;
    if (mpz_fdiv_ui(special->prime.get_mpz_t(), 4) != 1 || special->exponent % 4 != 1) {
        return EulerForm::impossible;
    }
    return EulerForm::possible;
}

EulerForm euler_form_filter(const BigInt& n, const BudgetConfig& cfg) {
    if (n < 1) throw std::domain_error("euler_form_filter needs n >= 1");
    if (mpz_even_p(n.get_mpz_t())) throw std::invalid_argument("euler_form_filter needs odd n");
    if (mpz_fdiv_ui(n.get_mpz_t(), 4) != 1) return EulerForm::impossible;
    return euler_form_filter(factorize(n, cfg));
}

}  // namespace perfgap
