#pragma once

// Structured (JSON) and plain-text renderings of solver results. The JSON
// layout is documented in docs/formats.md. Integers are JSON numbers when
// they fit in int64 and decimal strings otherwise.

#include <string>
#include <vector>

#include "perfgap/decider.hpp"
#include "perfgap/rn_solver.hpp"

namespace perfgap {

/// indent < 0 gives a single line.
std::string to_json(const DecisionReport& report, int indent = -1);
std::string to_json(const SieveReport& report, int indent = -1);
std::string to_json(const BranchStatus& status, int indent = -1);
std::string to_json(const std::vector<RNSolution>& solutions);

/// Canonical single-line form of the effective configuration.
std::string config_json(const DecideConfig& cfg);

/// 16 hex digits of FNV-1a over config_json(cfg).
std::string config_fingerprint(const DecideConfig& cfg);

std::string render_text(const DecisionReport& report);
std::string render_text(const SieveReport& report);

}  // namespace perfgap
