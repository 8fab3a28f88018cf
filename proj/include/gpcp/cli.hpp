#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gpcp {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitSolverFailure = 1,
  kExitUsage = 2,
  kExitBadInput = 3,
};

/// Runs the `gpcp` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gpcp
