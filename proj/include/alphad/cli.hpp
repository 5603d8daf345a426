#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alphad {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitSolve = 3,
  kExitInternal = 4,
};

/// Runs the command line (args excludes the program name). Reports go to
/// `out`, diagnostics to `err`. Never throws.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alphad
