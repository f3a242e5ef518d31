#pragma once

// Command-line front end: `force`, `check` and `propagator`.
//
// Exit codes:
//   0  success
//   1  malformed input (flags, config file, medium file, environment)
//   2  the medium is unstable or outside the valid regime of the formula
//   3  an integral did not converge, or a propagator row hit a pole
//   4  a self-check failed

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace casimir::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitInstability = 2,
  kExitUnconverged = 3,
  kExitCheckFailed = 4,
};

/// Process environment seen by the CLI, injectable for tests.
struct Environment {
  std::optional<std::string> medium_reltol;  // CASIMIR_MEDIUM_RELTOL

  static Environment from_process();
};

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace casimir::cli
