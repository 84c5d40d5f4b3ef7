#pragma once

#include <iosfwd>

namespace resest::app {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_check_failed = 1,
  exit_input_error = 2,
  exit_synthesis_failure = 3,
  exit_inconsistent_artifacts = 4,
};

/// Parses and runs one `resest` invocation.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace resest::app
