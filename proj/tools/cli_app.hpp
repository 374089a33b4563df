#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tpbvp::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  /// The computation ran but did not deliver: solve did not converge, or a
  /// verify-green inequality failed.
  kNotAchieved = 2,
};

/// Runs the tool with `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tpbvp::cli
