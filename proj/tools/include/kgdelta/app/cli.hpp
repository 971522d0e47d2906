#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kgdelta::app {

/// Exit codes of the kgdelta binary.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 1,
  kExitUsage = 2,
  kExitBlowUp = 3,
};

/// Runs the CLI with `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kgdelta::app
