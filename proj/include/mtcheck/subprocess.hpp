#pragma once

#include <string>
#include <vector>

namespace mtcheck::proc {

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs argv[0] with execvp semantics (no shell), feeding stdin_data and
// capturing both output streams. extra_env entries are added to the inherited
// environment. Throws std::runtime_error when the process cannot be spawned.
CommandResult run(const std::vector<std::string>& argv,
                  const std::string& stdin_data = {},
                  const std::vector<std::pair<std::string, std::string>>& extra_env = {});

} // namespace mtcheck::proc
