#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shellsat::cli {

enum ExitCode : int {
  kHolds = 0,
  kRefuted = 1,
  kBudgetExceeded = 2,
  kInputError = 3,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shellsat::cli
