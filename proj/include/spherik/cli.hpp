#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spherik {

/// Exit codes beyond the verdict codes 0 / 1 / 2.
enum ExitCode : int {
  kExitUsage = 64,
  kExitData = 65,
  kExitNoInput = 66,
  kExitNotApplicable = 69,
};

/// spherik <command> <input.json> [options]; writes the report to `out` and
/// diagnostics to `err`, returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spherik
