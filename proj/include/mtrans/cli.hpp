#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mtrans {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_parse = 1,
  exit_construct = 2,
  exit_verify = 3,
  exit_scale = 4,
};

/// Runs the tool on `args` (program name excluded), writing reports to `out`
/// and diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtrans
