#include "cli.hpp"

#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "perfgap/decider.hpp"
#include "perfgap/report_json.hpp"
#include "perfgap/rn_solver.hpp"
#include "scan.hpp"

namespace perfgap::cli {

namespace {

BigInt parse_integer(const std::string& text, const std::string& what) {
    BigInt v;
    std::string digits = text;
    if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
    if (digits.empty() || v.set_str(digits, 10) != 0) {
        throw CLI::ValidationError(what, "not an integer: " + text);
    }
    return v;
}

std::vector<std::uint64_t> parse_moduli(const std::string& text) {
    std::vector<std::uint64_t> moduli;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        const BigInt m = parse_integer(item, "--moduli");
        if (m < 2 || !mpz_fits_ulong_p(m.get_mpz_t())) throw CLI::ValidationError("--moduli", "moduli must be >= 2");
        moduli.push_back(mpz_get_ui(m.get_mpz_t()));
    }
    if (moduli.empty()) throw CLI::ValidationError("--moduli", "empty list");
    return moduli;
}

// Flags shared by decide and scan; each mirrors a PERFGAP_* variable.
struct ConfigFlags {
    std::uint64_t n_max = kDefaultNMax;
    std::string moduli;
    std::uint64_t factor_budget = BudgetConfig{}.rho_iteration_budget;
    std::uint64_t trial_bound = BudgetConfig{}.trial_division_bound;
    unsigned primality_rounds = BudgetConfig{}.primality_rounds;
    std::uint64_t mersenne_cap = kDefaultMersenneExponentCap;
    std::string table_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--n-max", n_max, "Largest exponent searched on open branches")
            ->envname("PERFGAP_N_MAX")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--moduli", moduli, "Comma-separated sieve moduli")->envname("PERFGAP_MODULI");
        cmd->add_option("--factor-budget", factor_budget, "Pollard rho iteration budget per factorization")
            ->envname("PERFGAP_FACTOR_BUDGET")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--trial-bound", trial_bound, "Trial division bound")
            ->envname("PERFGAP_TRIAL_BOUND")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--primality-rounds", primality_rounds, "Miller-Rabin rounds above 2^64")
            ->envname("PERFGAP_PRIMALITY_ROUNDS")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--mersenne-cap", mersenne_cap, "Largest exponent given a Lucas-Lehmer test")
            ->envname("PERFGAP_MERSENNE_CAP");
        cmd->add_option("--table", table_path, "Extra completeness-table file (JSON lines)")
            ->envname("PERFGAP_TABLE")
            ->check(CLI::ExistingFile);
    }

    DecideConfig build() const {
        DecideConfig cfg;
        cfg.n_max = n_max;
        if (!moduli.empty()) cfg.moduli = parse_moduli(moduli);
        cfg.budget.rho_iteration_budget = factor_budget;
        cfg.budget.trial_division_bound = trial_bound;
        cfg.budget.primality_rounds = primality_rounds;
        cfg.mersenne_exponent_cap = mersenne_cap;
        if (!table_path.empty()) cfg.table.merge(CompletenessTable::load(table_path));
        cfg.validate();
        return cfg;
    }
};

int verdict_exit_code(Verdict v) {
    switch (v) {
        case Verdict::eliminated: return kExitOk;
        case Verdict::solution_found: return kExitSolutionFound;
        case Verdict::inconclusive:
        case Verdict::out_of_scope: return kExitUndecided;
    }
    return kExitUndecided;
}

std::string solution_lines(const std::vector<RNSolution>& sols) {
    std::string out;
    for (const auto& s : sols) out += "(" + s.x.get_str() + "," + std::to_string(s.n) + ")\n";
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decide whether an odd integer can be the distance between two perfect numbers"};
    app.name(args.empty() ? "perfgap" : args.front());
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Structured output")->envname("PERFGAP_JSON");

    int exit_code = kExitOk;

    // decide
    auto* decide_cmd = app.add_subcommand("decide", "Run the decision procedure for one delta");
    std::string delta_text;
    ConfigFlags decide_flags;
    decide_cmd->add_option("delta", delta_text, "Positive odd integer")->required();
    decide_cmd->add_flag("--json", json, "Structured output");
    decide_flags.attach(decide_cmd);
    decide_cmd->callback([&] {
        const BigInt delta = parse_integer(delta_text, "delta");
        if (delta < 1 || mpz_even_p(delta.get_mpz_t())) {
            throw CLI::ValidationError("delta", "must be a positive odd integer, got " + delta_text);
        }
        const DecisionReport report = decide(delta, decide_flags.build());
        out << (json ? to_json(report) + "\n" : render_text(report));
        exit_code = verdict_exit_code(report.verdict);
    });

    // rn solve | sieve | analyze
    auto* rn_cmd = app.add_subcommand("rn", "Tools for d*x^2 + c = 2^n");
    rn_cmd->require_subcommand(1);
    std::string d_text, c_text;
    std::uint64_t n_min = 0, n_max = kDefaultNMax, modulus = 8;
    std::string parity_text = "any";
    std::string rn_moduli, rn_table;
    bool primes_only = false;
    auto add_equation = [&](CLI::App* cmd) {
        cmd->add_option("d", d_text, "Positive squarefree coefficient")->required();
        cmd->add_option("c", c_text, "Nonzero constant (use -- before a negative value if needed)")->required();
        cmd->add_option("--n-min", n_min, "Smallest exponent considered");
        cmd->add_flag("--json", json, "Structured output");
    };
    auto equation = [&] { return RNEquation(parse_integer(d_text, "d"), parse_integer(c_text, "c")); };

    auto* solve_cmd = rn_cmd->add_subcommand("solve", "All solutions with n_min <= n <= n_max");
    add_equation(solve_cmd);
    solve_cmd->add_option("--n-max", n_max, "Largest exponent")->envname("PERFGAP_N_MAX");
    solve_cmd->callback([&] {
        if (n_max < n_min) throw CLI::ValidationError("--n-max", "must be >= --n-min");
        const RNEquation eq = equation();
        const auto sols = direct_search(eq, n_min, n_max);
        if (json) {
            out << nlohmann::ordered_json{{"equation", eq.to_string()},
                                          {"n_min", n_min},
                                          {"n_max", n_max},
                                          {"solutions", nlohmann::ordered_json::parse(to_json(sols))}}
                       .dump()
                << "\n";
        } else {
            out << solution_lines(sols);
        }
    });

    auto* sieve_cmd = rn_cmd->add_subcommand("sieve", "Residue-class sieve of the exponent n");
    add_equation(sieve_cmd);
    sieve_cmd->add_option("--modulus", modulus, "Sieve modulus (>= 2)")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 24));
    sieve_cmd->add_option("--n-parity", parity_text, "any or odd")->check(CLI::IsMember({"any", "odd"}));
    sieve_cmd->callback([&] {
        const auto report = sieve(equation(), modulus, n_min, parity_text == "odd" ? NParity::odd : NParity::any);
        out << (json ? to_json(report) + "\n" : render_text(report));
    });

    auto* analyze_cmd = rn_cmd->add_subcommand("analyze", "Full rule pipeline for one equation");
    add_equation(analyze_cmd);
    analyze_cmd->add_option("--n-max", n_max, "Search bound for open equations")->envname("PERFGAP_N_MAX");
    analyze_cmd->add_option("--n-parity", parity_text, "any or odd")->check(CLI::IsMember({"any", "odd"}));
    analyze_cmd->add_option("--moduli", rn_moduli, "Comma-separated sieve moduli")->envname("PERFGAP_MODULI");
    analyze_cmd->add_option("--table", rn_table, "Extra completeness-table file")->envname("PERFGAP_TABLE")->check(CLI::ExistingFile);
    analyze_cmd->add_flag("--primes-only", primes_only, "Only prime exponents matter");
    analyze_cmd->callback([&] {
        AnalyzeOptions options;
        options.n_min = n_min;
        options.n_max = std::max(n_max, n_min);
        options.parity = parity_text == "odd" ? NParity::odd : NParity::any;
        if (!rn_moduli.empty()) options.moduli = parse_moduli(rn_moduli);
        options.primes_only = primes_only;
        CompletenessTable table = CompletenessTable::builtin();
        if (!rn_table.empty()) table.merge(CompletenessTable::load(rn_table));
        const BranchStatus status = analyze(equation(), options, table);
        if (json) {
            out << to_json(status) << "\n";
        } else {
            out << status.equation.to_string() << ": " << to_string(status.status) << "\n" << solution_lines(status.solutions);
        }
    });

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "Decide every triangular delta == 3 (mod 4) for b in a range");
    ScanOptions scan_options;
    ConfigFlags scan_flags;
    std::string output_path = "scan.jsonl";
    scan_cmd->add_option("--b-from", scan_options.b_from, "First triangular index")->required();
    scan_cmd->add_option("--b-to", scan_options.b_to, "Last triangular index")->required();
    scan_cmd->add_option("--out", output_path, "Record log (JSON lines, appended)")->envname("PERFGAP_SCAN_OUT");
    scan_cmd->add_option("--jobs", scan_options.jobs, "Concurrent decisions")->envname("PERFGAP_JOBS")->check(CLI::PositiveNumber);
    scan_flags.attach(scan_cmd);
    scan_cmd->callback([&] {
        if (scan_options.b_from < 3 || scan_options.b_from > scan_options.b_to) {
            throw CLI::ValidationError("--b-from", "need 3 <= b-from <= b-to");
        }
        scan_options.output = output_path;
        const ScanSummary summary = run_scan(scan_options, scan_flags.build(), out);
        out << "computed " << summary.computed << ", skipped " << summary.skipped << ", log " << output_path << "\n";
        exit_code = summary.solutions_found > 0 ? kExitSolutionFound : kExitOk;
    });

    // verify-pair
    auto* pair_cmd = app.add_subcommand("verify-pair", "Check two integers for perfectness and report their distance");
    std::string x_text, y_text;
    pair_cmd->add_option("x", x_text, "Positive integer")->required();
    pair_cmd->add_option("y", y_text, "Positive integer")->required();
    pair_cmd->add_flag("--json", json, "Structured output");
    pair_cmd->callback([&] {
        const BigInt x = parse_integer(x_text, "x");
        const BigInt y = parse_integer(y_text, "y");
        if (x < 1 || y < 1) throw CLI::ValidationError("verify-pair", "arguments must be positive");
        const PairCheck check = verify_pair(x, y);
        if (json) {
            out << nlohmann::ordered_json{{"x", x.get_str()},
                                          {"x_status", to_string(check.x_status)},
                                          {"y", y.get_str()},
                                          {"y_status", to_string(check.y_status)},
                                          {"both_perfect", check.both_perfect},
                                          {"distance", check.distance.get_str()}}
                       .dump()
                << "\n";
        } else {
            out << x.get_str() << ": " << to_string(check.x_status) << "\n"
                << y.get_str() << ": " << to_string(check.y_status) << "\n"
                << "distance: " << check.distance.get_str() << "\n"
                << (check.both_perfect ? "both perfect\n" : "not both perfect\n");
        }
        exit_code = check.both_perfect ? kExitOk : kExitUndecided;
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}

}  // namespace perfgap::cli
