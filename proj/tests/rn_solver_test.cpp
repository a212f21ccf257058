#include <algorithm>
#include <fstream>

#include <gtest/gtest.h>

#include "perfgap/rn_solver.hpp"
#include "support/oracles.hpp"
#include "support/property_checks.hpp"

namespace perfgap {
namespace {

std::vector<RNSolution> sols(std::initializer_list<std::pair<long, std::uint64_t>> list) {
    std::vector<RNSolution> out;
    for (auto [x, n] : list) out.push_back({BigInt(x), n});
    return out;
}

template <typename T>
const T* find_cert(const BranchStatus& st) {
    for (const auto& c : st.rule_trace) {
        if (const T* p = std::get_if<T>(&c)) return p;
    }
    return nullptr;
}

const SieveReport* find_sieve(const BranchStatus& st, std::uint64_t modulus) {
    for (const auto& c : st.rule_trace) {
        if (const auto* s = std::get_if<SieveReport>(&c); s && s->modulus == modulus) return s;
    }
    return nullptr;
}

TEST(RNEquation, RejectsInvalidCoefficients) {
    EXPECT_THROW(RNEquation(0, 3), std::invalid_argument);
    EXPECT_THROW(RNEquation(-5, 3), std::invalid_argument);
    EXPECT_THROW(RNEquation(4, 3), std::invalid_argument);
    EXPECT_THROW(RNEquation(18, 3), std::invalid_argument);
    EXPECT_THROW(RNEquation(5, 0), std::invalid_argument);
    EXPECT_NO_THROW(RNEquation(1, -7));
    EXPECT_EQ(RNEquation(5, 3).to_string(), "5x^2 + 3 = 2^n");
    EXPECT_EQ(RNEquation(1, -5).to_string(), "x^2 - 5 = 2^n");
}

TEST(Sieve, ModThreeKillsOddExponentsForXSquaredPlusSix) {
    const SieveReport r = sieve(RNEquation(1, 6), 3, 0, NParity::odd);
    EXPECT_EQ(r.n_threshold, 0u);
    EXPECT_EQ(r.period, 2u);
    EXPECT_EQ(r.class_modulus, 2u);
    EXPECT_TRUE(r.surviving_classes.empty());
    EXPECT_TRUE(r.small_n_to_check.empty());
}

TEST(Sieve, ModEightKillsXSquaredMinusFive) {
    const SieveReport r = sieve(RNEquation(1, -5), 8, 3);
    EXPECT_EQ(r.n_threshold, 3u);
    EXPECT_EQ(r.period, 1u);
    EXPECT_TRUE(r.surviving_classes.empty());
    EXPECT_TRUE(r.small_n_to_check.empty());
}

TEST(Sieve, ModFourKillsElevenXSquaredPlusSix) {
    const SieveReport r = sieve(RNEquation(11, 6), 4, 2);
    EXPECT_TRUE(r.surviving_classes.empty());
}

TEST(Sieve, ModFourDoesNotKillTwentyTwoXSquaredPlusSixButModEightDoes) {
    EXPECT_FALSE(sieve(RNEquation(22, 6), 4, 2).surviving_classes.empty());
    EXPECT_TRUE(sieve(RNEquation(22, 6), 8, 3).surviving_classes.empty());
}

TEST(Sieve, ListsExponentsBelowThePrePeriod) {
    const SieveReport r = sieve(RNEquation(1, -5), 32, 1);
    EXPECT_EQ(r.n_threshold, 5u);
    EXPECT_EQ(r.small_n_to_check, (std::vector<std::uint64_t>{1, 2, 3, 4}));
    const SieveReport odd = sieve(RNEquation(1, -5), 32, 0, NParity::odd);
    EXPECT_EQ(odd.small_n_to_check, (std::vector<std::uint64_t>{1, 3}));
}

TEST(Sieve, RejectsBadModulus) {
    EXPECT_THROW(sieve(RNEquation(1, 1), 1), std::invalid_argument);
    EXPECT_THROW(sieve(RNEquation(1, 1), (1ULL << 24) + 1), std::invalid_argument);
}

TEST(Sieve, DetectedPeriodReproducesPowersOfTwo) {
    for (std::uint64_t m = 2; m <= 64; ++m) {
        const SieveReport r = sieve(RNEquation(1, 1), m);
        std::vector<std::uint64_t> pow(201);
        pow[0] = 1 % m;
        for (std::size_t n = 1; n <= 200; ++n) pow[n] = pow[n - 1] * 2 % m;
        for (std::uint64_t n = r.n_threshold; n + r.period <= 200; ++n) {
            ASSERT_EQ(pow[n], pow[n + r.period]) << "m=" << m << " n=" << n;
        }
        // Minimal: nothing shorter and nothing earlier repeats.
        for (std::uint64_t k = 1; k < r.period; ++k) {
            ASSERT_NE(pow[r.n_threshold], pow[r.n_threshold + k]) << "m=" << m;
        }
        if (r.n_threshold > 0) {
            ASSERT_NE(pow[r.n_threshold - 1], pow[r.n_threshold - 1 + r.period]) << "m=" << m;
        }
    }
}

TEST(Sieve, SoundOnRandomEquations) {
    const auto r = testing::check_sieve_soundness(testing::random_small_equations(150, 11));
    EXPECT_TRUE(r.ok) << r.failure;
}

TEST(DirectSearch, Examples) {
    EXPECT_EQ(direct_search(RNEquation(5, 3), 0, 200), sols({{1, 3}, {5, 7}}));
    EXPECT_EQ(direct_search(RNEquation(2, 6), 0, 100), sols({{1, 3}}));
    EXPECT_TRUE(testing::rn_solutions_by_x(5, 3, 1 << 20, 100).size() == 2);
    EXPECT_TRUE(direct_search(RNEquation(5, 3), 8, 100).empty());
}

TEST(DirectSearch, RamanujanNagell) {
    EXPECT_EQ(direct_search(RNEquation(1, 7), 0, 300), sols({{1, 3}, {3, 4}, {5, 5}, {11, 7}, {181, 15}}));
}

TEST(DirectSearch, RejectsReversedRange) {
    EXPECT_THROW(direct_search(RNEquation(1, 7), 5, 4), std::invalid_argument);
}

TEST(DirectSearch, MatchesEnumerationOnRandomEquations) {
    const auto r = testing::check_direct_search_equivalence(testing::random_small_equations(200, 12));
    EXPECT_TRUE(r.ok) << r.failure;
}

TEST(AdjacentPowers, Examples) {
    const auto minus = adjacent_powers(RNEquation(2, -2));
    ASSERT_TRUE(minus);
    EXPECT_FALSE(minus->plus_one);
    EXPECT_EQ(minus->shift, 1u);
    EXPECT_EQ(minus->complete_set, sols({{3, 4}}));

    const auto plus = adjacent_powers(RNEquation(1, 1));
    ASSERT_TRUE(plus);
    EXPECT_EQ(plus->complete_set, sols({{1, 1}}));

    EXPECT_FALSE(adjacent_powers(RNEquation(5, 3)));
    EXPECT_FALSE(adjacent_powers(RNEquation(2, 1)));
    EXPECT_FALSE(adjacent_powers(RNEquation(1, 2)));
}

TEST(AdjacentPowers, SetsSatisfyTheirEquations) {
    for (auto [d, c] : {std::pair{1, 1}, {1, -1}, {2, 2}, {2, -2}}) {
        const RNEquation eq(d, c);
        const auto rule = adjacent_powers(eq);
        ASSERT_TRUE(rule);
        for (const auto& s : rule->complete_set) EXPECT_TRUE(satisfies(eq, s));
        EXPECT_EQ(direct_search(eq, 0, 300), rule->complete_set);
    }
}

TEST(AdjacentPowers, ExhaustiveSmallScan) {
    const auto r = testing::check_adjacent_powers(100'000, 60);
    EXPECT_TRUE(r.ok) << r.failure;
}

TEST(Analyze, TableClosesFiveXSquaredPlusThree) {
    const BranchStatus st = analyze(RNEquation(5, 3), {}, CompletenessTable::builtin());
    EXPECT_EQ(st.status, ClosureStatus::closed_complete);
    EXPECT_EQ(st.solutions, sols({{1, 3}, {5, 7}}));
    ASSERT_NE(find_cert<TableCitation>(st), nullptr);
}

TEST(Analyze, PrimeClassClosureOnXSquaredPlusThree) {
    // 1 + 3 = 4 = 2^2 is the only prime-exponent solution.
    EXPECT_EQ(testing::rn_solutions_by_x(1, 3, 1 << 20, 40), (std::vector<std::pair<std::uint64_t, unsigned>>{{1, 2}}));
    AnalyzeOptions options;
    options.moduli = {3};
    options.primes_only = true;
    const BranchStatus st = analyze(RNEquation(1, 3), options);
    EXPECT_EQ(st.status, ClosureStatus::closed_finite_n);
    EXPECT_EQ(st.solutions, sols({{1, 2}}));
    const auto* closure = find_cert<PrimeClassClosure>(st);
    ASSERT_NE(closure, nullptr);
    EXPECT_EQ(closure->residue, 0u);
    EXPECT_EQ(closure->class_modulus, 2u);
    EXPECT_EQ(closure->checked_prime, std::optional<std::uint64_t>(2));
}

TEST(Analyze, SameEquationStaysOpenWithoutPrimeRestriction) {
    AnalyzeOptions options;
    options.moduli = {3};
    options.n_max = 50;
    const BranchStatus st = analyze(RNEquation(1, 3), options);
    EXPECT_EQ(st.status, ClosureStatus::open);
    EXPECT_EQ(st.solutions, sols({{1, 2}}));
    ASSERT_NE(find_cert<SearchBound>(st), nullptr);
}

TEST(Analyze, ModEightClosesTwentyTwoXSquaredPlusSix) {
    AnalyzeOptions options;
    options.moduli = {8};
    options.n_min = 3;
    const BranchStatus st = analyze(RNEquation(22, 6), options);
    EXPECT_EQ(st.status, ClosureStatus::closed_finite_n);
    EXPECT_TRUE(st.solutions.empty());
    const SieveReport* s8 = find_sieve(st, 8);
    ASSERT_NE(s8, nullptr);
    EXPECT_TRUE(s8->surviving_classes.empty());
    for (const auto& [x, n] : testing::rn_solutions_by_x(22, 6, 1 << 20, 40)) EXPECT_LT(n, 3u) << x;
}

TEST(Analyze, AdjacentPowersRespectsNMin) {
    AnalyzeOptions options;
    options.n_min = 5;
    const BranchStatus st = analyze(RNEquation(2, -2), options);
    EXPECT_EQ(st.status, ClosureStatus::closed_complete);
    EXPECT_TRUE(st.solutions.empty());
    ASSERT_NE(find_cert<AdjacentPowersRule>(st), nullptr);
}

TEST(Analyze, OddParityFoldsIntoClasses) {
    AnalyzeOptions options;
    options.moduli = {3};
    options.parity = NParity::odd;
    const BranchStatus st = analyze(RNEquation(1, 6), options);
    EXPECT_EQ(st.status, ClosureStatus::closed_finite_n);
    EXPECT_TRUE(st.solutions.empty());
}

TEST(Analyze, RejectsBadOptions) {
    AnalyzeOptions empty;
    empty.moduli.clear();
    EXPECT_THROW(analyze(RNEquation(1, 3), empty), std::invalid_argument);
    AnalyzeOptions reversed;
    reversed.n_min = 10;
    reversed.n_max = 5;
    EXPECT_THROW(analyze(RNEquation(1, 3), reversed), std::invalid_argument);
}

TEST(Analyze, NeverClosesOverAMissedSolution) {
    const auto r = testing::check_analyze_soundness(testing::random_small_equations(150, 13));
    EXPECT_TRUE(r.ok) << r.failure;
}

TEST(CompletenessTable, BuiltinEntries) {
    const CompletenessTable t = CompletenessTable::builtin();
    ASSERT_EQ(t.entries().size(), 2u);
    ASSERT_NE(t.find(RNEquation(5, 3)), nullptr);
    EXPECT_EQ(t.find(RNEquation(2, 6))->complete_solutions, sols({{1, 3}}));
    EXPECT_EQ(t.find(RNEquation(2, -2)), nullptr);
    for (const auto& e : t.entries()) {
        EXPECT_FALSE(e.source.empty());
        for (const auto& s : e.complete_solutions) EXPECT_TRUE(satisfies(e.equation, s));
    }
}

TEST(CompletenessTable, ParsesCommentsAndBothIntegerForms) {
    const auto t = CompletenessTable::parse(
        "# Ramanujan-Nagell\n"
        "\n"
        R"({"d": 1, "c": "7", "solutions": [[1,3],["3",4],[5,5],[11,7],[181,15]], "source": "Nagell 1948"})"
        "\n");
    ASSERT_EQ(t.entries().size(), 1u);
    EXPECT_EQ(t.entries()[0].complete_solutions.size(), 5u);
}

TEST(CompletenessTable, SerializeRoundTrips) {
    const CompletenessTable t = CompletenessTable::builtin();
    const CompletenessTable again = CompletenessTable::parse(t.serialize());
    EXPECT_EQ(again.serialize(), t.serialize());
}

TEST(CompletenessTable, RejectsWrongOrIncompleteEntries) {
    // Not a solution.
    EXPECT_THROW(CompletenessTable::parse(R"({"d":5,"c":3,"solutions":[[1,3],[2,7]],"source":"x"})"), std::runtime_error);
    // Missing (5,7).
    EXPECT_THROW(CompletenessTable::parse(R"({"d":5,"c":3,"solutions":[[1,3]],"source":"x"})"), std::runtime_error);
    // Non-squarefree d.
    EXPECT_THROW(CompletenessTable::parse(R"({"d":4,"c":3,"solutions":[],"source":"x"})"), std::runtime_error);
    // Missing citation.
    EXPECT_THROW(CompletenessTable::parse(R"({"d":5,"c":3,"solutions":[[1,3],[5,7]],"source":""})"), std::runtime_error);
    EXPECT_THROW(CompletenessTable::parse(R"({"d":5,"c":3,"solutions":[[1,3],[5,7]]})"), std::runtime_error);
    // Not JSON.
    EXPECT_THROW(CompletenessTable::parse("d=5 c=3"), std::runtime_error);
}

TEST(CompletenessTable, ErrorNamesTheLine) {
    try {
        CompletenessTable::parse("# header\n{\"d\":5,\"c\":3,\"solutions\":[[1,3]],\"source\":\"x\"}\n");
        FAIL() << "expected an error";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
    }
}

TEST(CompletenessTable, MergeRejectsConflicts) {
    CompletenessTable t = CompletenessTable::builtin();
    EXPECT_NO_THROW(t.merge(CompletenessTable::builtin()));
    EXPECT_EQ(t.entries().size(), 2u);
}

TEST(CompletenessTable, LoadFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "perfgap_table_test.jsonl";
    {
        std::ofstream out(path);
        out << R"({"d":1,"c":7,"solutions":[[1,3],[3,4],[5,5],[11,7],[181,15]],"source":"Nagell"})" << "\n";
    }
    const auto t = CompletenessTable::load(path);
    EXPECT_NE(t.find(RNEquation(1, 7)), nullptr);
    std::filesystem::remove(path);
    EXPECT_THROW(CompletenessTable::load(path), std::runtime_error);
}

}  // namespace
}  // namespace perfgap
