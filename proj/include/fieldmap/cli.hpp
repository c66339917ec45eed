#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fieldmap::cli {

enum ExitCode : int {
  ok = 0,
  runtime_failure = 1,  // I/O or numerical failure while running
  usage_error = 2,      // unknown subcommand or flag, missing required flag
  config_unreadable = 3,
  bad_override = 4,
  invalid_config = 5,
};

/// Entry point behind the fieldmap executable. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fieldmap::cli
