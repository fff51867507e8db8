#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bpdmn {

/// Stable process exit codes.
enum ExitCode : int {
  exit_ok = 0,
  exit_model_error = 1,
  exit_io_error = 2,
  exit_deadlock = 3,
  exit_step_limit = 4,
};

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bpdmn
