#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fuzzmap::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kQuery = 3,
};

/// Runs one command. `args` excludes the program name. Machine-readable
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzmap::cli
