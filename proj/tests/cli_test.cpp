#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace perfgap {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "perfgap");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("perfgap_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

TEST(Cli, DecideExitCodes) {
    EXPECT_EQ(run({"decide", "15"}).code, cli::kExitOk);
    EXPECT_EQ(run({"decide", "11"}).code, cli::kExitOk);
    EXPECT_EQ(run({"decide", "10"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"decide", "abc"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"decide", "9"}).code, cli::kExitUndecided);
    EXPECT_EQ(run({}).code, cli::kExitUsage);
    EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
}

TEST(Cli, DecideTextNamesVerdict) {
    const CliResult r = run({"decide", "15"});
    EXPECT_NE(r.out.find("verdict: eliminated"), std::string::npos) << r.out;
}

TEST(Cli, DecideJsonRoundTrips) {
    const CliResult r = run({"decide", "15", "--json"});
    ASSERT_EQ(r.code, 0);
    const ordered_json j = ordered_json::parse(r.out);
    for (const char* key : {"delta", "verdict", "case_analysis", "p_min", "branches", "candidates", "certificates",
                            "notes", "config", "config_fingerprint"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["verdict"], "eliminated");
    EXPECT_EQ(j["delta"], 15);
    EXPECT_EQ(ordered_json::parse(j.dump()), j);
    std::string trimmed = r.out;
    while (!trimmed.empty() && trimmed.back() == '\n') trimmed.pop_back();
    EXPECT_EQ(j.dump(), trimmed);
}

TEST(Cli, DecideOptionsChangeFingerprint) {
    const auto a = ordered_json::parse(run({"decide", "15", "--json"}).out);
    const auto b = ordered_json::parse(run({"decide", "15", "--json", "--n-max", "300"}).out);
    EXPECT_NE(a["config_fingerprint"], b["config_fingerprint"]);
    EXPECT_EQ(b["config"]["n_max"], 300);
}

TEST(Cli, VerifyPair) {
    const CliResult bad = run({"verify-pair", "28", "27"});
    EXPECT_EQ(bad.code, cli::kExitUndecided);
    const CliResult good = run({"verify-pair", "8128", "28", "--json"});
    EXPECT_EQ(good.code, cli::kExitOk);
    const auto j = ordered_json::parse(good.out);
    EXPECT_EQ(j["distance"], "8100");
    EXPECT_EQ(j["both_perfect"], true);
    EXPECT_EQ(run({"verify-pair", "0", "6"}).code, cli::kExitUsage);
}

TEST(Cli, RnSolve) {
    const CliResult r = run({"rn", "solve", "5", "3", "--n-max", "200"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "(1,3)\n(5,7)\n");
    const auto j = ordered_json::parse(run({"rn", "solve", "5", "3", "--json"}).out);
    EXPECT_EQ(j["solutions"], ordered_json::parse("[[1,3],[5,7]]"));
    EXPECT_EQ(run({"rn", "solve", "2", "6", "--n-max", "100"}).out, "(1,3)\n");
    EXPECT_EQ(run({"rn", "solve", "4", "3"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"rn", "solve", "5", "0"}).code, cli::kExitUsage);
}

TEST(Cli, RnSieveAcceptsNegativeConstant) {
    const CliResult r = run({"rn", "sieve", "1", "-5", "--modulus", "8", "--n-min", "3", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = ordered_json::parse(r.out);
    EXPECT_TRUE(j["surviving_classes"].empty());
    EXPECT_EQ(j["modulus"], 8);
    EXPECT_EQ(run({"rn", "sieve", "1", "-5", "--modulus", "1"}).code, cli::kExitUsage);
}

TEST(Cli, RnSieveOddParity) {
    const CliResult r = run({"rn", "sieve", "1", "6", "--modulus", "3", "--n-parity", "odd", "--json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(ordered_json::parse(r.out)["surviving_classes"].empty());
    EXPECT_EQ(run({"rn", "sieve", "1", "6", "--modulus", "3", "--n-parity", "even"}).code, cli::kExitUsage);
}

TEST(Cli, RnAnalyzeWithTableFile) {
    TempDir dir;
    const fs::path table = dir.path() / "extra.jsonl";
    std::ofstream(table) << R"({"d":1,"c":7,"solutions":[[1,3],[3,4],[5,5],[11,7],[181,15]],"source":"Nagell"})"
                         << "\n";
    const CliResult without = run({"rn", "analyze", "1", "7", "--n-max", "100", "--json"});
    EXPECT_EQ(ordered_json::parse(without.out)["status"], "open");
    const CliResult with = run({"rn", "analyze", "1", "7", "--table", table.string(), "--json"});
    ASSERT_EQ(with.code, 0) << with.err;
    EXPECT_EQ(ordered_json::parse(with.out)["status"], "closed_complete");

    const fs::path broken = dir.path() / "broken.jsonl";
    std::ofstream(broken) << R"({"d":1,"c":7,"solutions":[[1,3]],"source":"x"})" << "\n";
    const CliResult bad = run({"rn", "analyze", "1", "7", "--table", broken.string()});
    EXPECT_EQ(bad.code, cli::kExitUsage);
    EXPECT_NE(bad.err.find("line 1"), std::string::npos) << bad.err;
}

TEST(Cli, EnvironmentSuppliesDefaults) {
    ::setenv("PERFGAP_N_MAX", "321", 1);
    const auto j = ordered_json::parse(run({"decide", "15", "--json"}).out);
    ::unsetenv("PERFGAP_N_MAX");
    EXPECT_EQ(j["config"]["n_max"], 321);
}

TEST(Cli, ScanWritesOneRecordPerDelta) {
    TempDir dir;
    const fs::path log = dir.path() / "scan.jsonl";
    const CliResult first = run({"scan", "--b-from", "3", "--b-to", "6", "--out", log.string()});
    ASSERT_EQ(first.code, cli::kExitOk) << first.err;
    const auto lines = read_lines(log);
    ASSERT_EQ(lines.size(), 2u);
    EXPECT_EQ(ordered_json::parse(lines[0])["delta"], 3);
    EXPECT_EQ(ordered_json::parse(lines[1])["delta"], 15);
    for (const auto& line : lines) {
        const auto j = ordered_json::parse(line);
        for (const char* key : {"b", "delta", "verdict", "branches", "elapsed_ms", "config_fingerprint"}) {
            EXPECT_TRUE(j.contains(key)) << key;
        }
    }

    const std::string before = slurp(log);
    const CliResult second = run({"scan", "--b-from", "3", "--b-to", "6", "--out", log.string()});
    EXPECT_EQ(second.code, cli::kExitOk);
    EXPECT_EQ(slurp(log), before);
}

TEST(Cli, ScanSingleIndex) {
    TempDir dir;
    const fs::path log = dir.path() / "scan.jsonl";
    ASSERT_EQ(run({"scan", "--b-from", "11", "--b-to", "11", "--out", log.string()}).code, cli::kExitOk);
    const auto lines = read_lines(log);
    ASSERT_EQ(lines.size(), 1u);
    EXPECT_EQ(ordered_json::parse(lines[0])["delta"], 55);
}

TEST(Cli, ScanResumesAndKeepsOrder) {
    TempDir dir;
    const fs::path log = dir.path() / "scan.jsonl";
    ASSERT_EQ(run({"scan", "--b-from", "10", "--b-to", "15", "--out", log.string()}).code, cli::kExitOk);
    ASSERT_EQ(run({"scan", "--b-from", "3", "--b-to", "15", "--out", log.string(), "--jobs", "3"}).code, cli::kExitOk);
    std::vector<long> deltas;
    for (const auto& line : read_lines(log)) deltas.push_back(ordered_json::parse(line)["delta"].get<long>());
    EXPECT_EQ(deltas, (std::vector<long>{3, 15, 55, 91}));
}

TEST(Cli, ScanFreshRunsAgreeApartFromTiming) {
    TempDir dir;
    auto strip = [](const fs::path& p) {
        std::string all;
        for (const auto& line : read_lines(p)) {
            auto j = ordered_json::parse(line);
            j.erase("elapsed_ms");
            all += j.dump() + "\n";
        }
        return all;
    };
    const fs::path a = dir.path() / "a.jsonl";
    const fs::path b = dir.path() / "b.jsonl";
    run({"scan", "--b-from", "3", "--b-to", "20", "--out", a.string(), "--jobs", "1"});
    run({"scan", "--b-from", "3", "--b-to", "20", "--out", b.string(), "--jobs", "4"});
    EXPECT_EQ(strip(a), strip(b));
}

TEST(Cli, ScanRejectsUnwritableOutput) {
    TempDir dir;
    const fs::path log = dir.path() / "missing" / "dir" / "scan.jsonl";
    const CliResult r = run({"scan", "--b-from", "3", "--b-to", "6", "--out", log.string()});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, ScanRejectsCorruptLog) {
    TempDir dir;
    const fs::path log = dir.path() / "scan.jsonl";
    std::ofstream(log) << "not json\n";
    EXPECT_EQ(run({"scan", "--b-from", "3", "--b-to", "6", "--out", log.string()}).code, cli::kExitUsage);
}

}  // namespace
}  // namespace perfgap
