#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dechyp::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 2,
  kExitNotConverged = 3,
  kExitUsage = 64,
  kExitFile = 66,
};

// argv excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dechyp::cli
