#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace surreal {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // golden/oracle mismatch or internal error
  kExitUsage = 2,    // parse, usage and domain errors
  kExitUnsupported = 3,
  kExitDivergence = 4,
};

/// Runs one CLI invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace surreal
