#pragma once

#include <string>
#include <vector>

namespace gkmcoh::cli {

enum ExitCode : int {
  ok = 0,
  check_failed = 1,
  input_error = 2,
  invalid_graph = 3,
  localization_failed = 4,
};

struct CommandResult {
  int exit_code = ok;
  std::string out;
  std::string err;
};

/// Runs one command line (without the program name), e.g.
/// {"fgl", "--theory", "morava", "--p", "2", "--n", "1", "--ell", "2"}.
CommandResult run(const std::vector<std::string> &args);

} // namespace gkmcoh::cli
