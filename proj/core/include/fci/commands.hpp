#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fci/specfile.hpp"

namespace fci {

struct CommandOptions {
  std::optional<int> level;
  std::optional<std::pair<int, int>> levels;
  std::optional<int> window;
  std::optional<std::int64_t> cap;
  std::string element;
  std::string family;  ///< classify: "thm32", "thm36" or empty for the spec's own kind
  bool machine = false;
};

/// Exit codes: 0 Pass/True, 1 Fail/False, 2 Undecidable/Inconclusive,
/// 3 unreadable or invalid spec, 4 any other error.
struct CommandResult {
  int exit_code = 0;
  std::string output;
};

const std::vector<std::string>& command_names();

CommandResult run_command(const std::string& command, const GroupSpecFile& spec, const CommandOptions& opt);

/// Runs on one spec file, or on every *.json file of a directory in name order.
CommandResult run_on_path(const std::string& command, const std::string& path, const CommandOptions& opt);

int exit_code_for(ErrorCode code);

}  // namespace fci
