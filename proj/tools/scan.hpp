#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "perfgap/decider.hpp"

namespace perfgap::cli {

struct ScanOptions {
    std::uint64_t b_from = 3;
    std::uint64_t b_to = 3;
    std::filesystem::path output;
    unsigned jobs = 1;
};

struct ScanSummary {
    std::size_t computed = 0;
    std::size_t skipped = 0;
    std::size_t solutions_found = 0;
};

/// One line of the scan log.
std::string scan_record(const BigInt& b, const DecisionReport& report, std::int64_t elapsed_ms,
                        const std::string& fingerprint);

/// Runs decide for every b in [b_from, b_to] with b(b-1)/2 == 3 (mod 4),
/// appending one record per line to options.output. Records already present
/// with the same config fingerprint are skipped; the file is re-sorted by
/// delta at the end. Throws std::runtime_error on I/O failure or a malformed
/// existing log.
ScanSummary run_scan(const ScanOptions& options, const DecideConfig& cfg, std::ostream& progress);

}  // namespace perfgap::cli
