#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rsafix {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 2,
  kExitFactoringFailed = 3,
  kExitCapExceeded = 4,
};

/// Runs one CLI invocation. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rsafix
