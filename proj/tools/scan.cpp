#include "scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "perfgap/report_json.hpp"

namespace perfgap::cli {

namespace {

using Json = nlohmann::ordered_json;

struct LogLine {
    BigInt delta;
    std::string fingerprint;
    std::string text;
};

BigInt json_integer(const Json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
    if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
    throw std::runtime_error("expected an integer, got " + j.dump());
}

Json json_of_big(const BigInt& v) {
    if (mpz_fits_slong_p(v.get_mpz_t())) return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
    return v.get_str();
}

std::vector<LogLine> read_log(const std::filesystem::path& path) {
    std::vector<LogLine> lines;
    std::ifstream in(path);
    if (!in) return lines;
    std::string text;
    for (std::size_t line_no = 1; std::getline(in, text); ++line_no) {
        if (text.empty()) continue;
        try {
            const Json j = Json::parse(text);
            lines.push_back({json_integer(j.at("delta")), j.at("config_fingerprint").get<std::string>(), text});
        } catch (const std::exception& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed scan record (" +
                                     e.what() + ")");
        }
    }
    return lines;
}

void rewrite_sorted(const std::filesystem::path& path) {
    std::vector<LogLine> lines = read_log(path);
    std::stable_sort(lines.begin(), lines.end(), [](const LogLine& a, const LogLine& b) { return a.delta < b.delta; });
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        for (const auto& l : lines) out << l.text << '\n';
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

std::string scan_record(const BigInt& b, const DecisionReport& report, std::int64_t elapsed_ms,
                        const std::string& fingerprint) {
    Json branches = Json::array();
    for (const auto& br : report.branches) {
        branches.push_back(Json{{"side", to_string(br.side)},
                                {"d", json_of_big(br.d)},
                                {"c", json_of_big(br.c)},
                                {"status", to_string(br.status.status)}});
    }
    Json j{{"b", json_of_big(b)},
           {"delta", json_of_big(report.delta)},
           {"verdict", to_string(report.verdict)},
           {"branches", std::move(branches)},
           {"elapsed_ms", elapsed_ms},
           {"config_fingerprint", fingerprint}};
    return j.dump();
}

ScanSummary run_scan(const ScanOptions& options, const DecideConfig& cfg, std::ostream& progress) {
    if (options.b_from < 3 || options.b_from > options.b_to) {
        throw std::invalid_argument("scan needs 3 <= b-from <= b-to");
    }
    const std::string fingerprint = config_fingerprint(cfg);

    std::set<BigInt> done;
    for (const auto& line : read_log(options.output)) {
        if (line.fingerprint == fingerprint) done.insert(line.delta);
    }

    std::ofstream log(options.output, std::ios::app);
    if (!log) throw std::runtime_error("cannot open " + options.output.string() + " for appending");

    ScanSummary summary;
    std::vector<BigInt> work;
    for (std::uint64_t b = options.b_from; b <= options.b_to; ++b) {
        const BigInt big_b(std::to_string(b));
        const BigInt delta = big_b * (big_b - 1) / 2;
        if (mpz_fdiv_ui(delta.get_mpz_t(), 4) != 3) continue;
        if (done.contains(delta)) {
            ++summary.skipped;
            continue;
        }
        work.push_back(big_b);
        if (b == UINT64_MAX) break;
    }

    std::mutex writer;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t i = next++; i < work.size(); i = next++) {
            const BigInt& b = work[i];
            const BigInt delta = b * (b - 1) / 2;
            const auto start = std::chrono::steady_clock::now();
            DecisionReport report;
            try {
                report = decide(delta, cfg);
            } catch (...) {
                std::scoped_lock lock(writer);
                if (!failure) failure = std::current_exception();
                return;
            }
            const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start);
            const std::string record = scan_record(b, report, elapsed.count(), fingerprint);

            std::scoped_lock lock(writer);
            log << record << '\n' << std::flush;
            ++summary.computed;
            if (report.verdict == Verdict::solution_found) ++summary.solutions_found;
            progress << "delta " << delta.get_str() << ": " << to_string(report.verdict) << '\n';
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(work.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t + 1 < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    log.close();
    if (failure) std::rethrow_exception(failure);
    if (!log) throw std::runtime_error("write failed for " + options.output.string());

    rewrite_sorted(options.output);
    return summary;
}

}  // namespace perfgap::cli
