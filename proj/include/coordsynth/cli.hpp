#pragma once

#include <iosfwd>

namespace coordsynth {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFalse = 1,  ///< usage error, or a check/verification answered false
  kExitPrecondition = 2,
  kExitResource = 3,
  kExitInternal = 4,
};

/// Full command-line front end; writes results to `out` and diagnostics to
/// `err`, and returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coordsynth
