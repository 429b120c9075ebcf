#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isoconv {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitAssertion = 1,
  kExitUsage = 2,
  kExitRuntime = 3,
};

/// Parses `args` (without the program name), runs the command and returns
/// the exit code. Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isoconv
