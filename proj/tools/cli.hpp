#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ivcheck::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,         // no violation / feasible / success
  kViolation = 1,  // inequality violated / infeasible
  kFailure = 2,    // malformed input or any other error
};

/// Runs `ivcheck` with argv-style arguments (args[0] is the program name).
/// The JSON run report goes to `out`; diagnostics go to `err`. When a data
/// product (table, CSV) is written to stdout instead of a file, the report
/// moves to `err` so stdout stays machine-readable.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ivcheck::cli
