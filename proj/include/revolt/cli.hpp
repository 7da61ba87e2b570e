#pragma once

// The `revolt` command-line tool: classify, simulate, sweep, basin and
// conjecture subcommands.

#include <ostream>
#include <string>
#include <vector>

namespace revolt {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitModelDomain = 2,
  kExitNumerical = 3,
  /// The conjecture harness found a counterexample.
  kExitDisagreement = 4,
};

/// Runs the tool with `args` (excluding the program name). Normal output
/// goes to `out` and diagnostics to `err`; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revolt
