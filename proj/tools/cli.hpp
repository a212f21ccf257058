#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace perfgap::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;            // eliminated / both perfect
inline constexpr int kExitUsage = 1;         // malformed input, I/O failure
inline constexpr int kExitUndecided = 2;     // inconclusive / out_of_scope / not both perfect
inline constexpr int kExitSolutionFound = 3;

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit code. Output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace perfgap::cli
