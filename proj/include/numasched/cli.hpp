#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace numasched::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kInputFormatError = 2,
  kBoundsError = 3,
};

/// Entry point behind the numa_sched binary. `args` excludes the program
/// name. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace numasched::cli
