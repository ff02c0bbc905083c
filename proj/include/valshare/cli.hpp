#pragma once

#include <iosfwd>

namespace valshare {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitMismatch = 3,
  kExitNumeric = 4,
  kExitBattery = 5,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace valshare
