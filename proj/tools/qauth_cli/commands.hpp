#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qauth::cli {

enum ExitCode : int { kOk = 0, kRejected = 1, kUsage = 2, kUnsupported = 3 };

struct Options {
  std::size_t n = 4;
  std::size_t m = 4;
  std::size_t s = 0;
  std::size_t k = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string adversary = "none";
  std::string format = "text";
  bool deterministic = false;
};

/// Fills every option not named in `given` from a JSON object with the same
/// keys as the long flags. Unknown keys or wrong types are usage errors.
void apply_config(Options& opts, const nlohmann::json& config, const std::vector<std::string>& given);

struct CommandResult {
  int exit_code = kOk;
  std::string output;
};

/// Each command throws qauth::Error subclasses for bad input; see exit_code_for.
CommandResult cmd_run(const std::string& id, const Options& opts);
CommandResult cmd_analyze(const std::string& id, const Options& opts);
CommandResult cmd_compare(const std::vector<std::string>& ids, const Options& opts);
CommandResult cmd_table(const Options& opts);

int exit_code_for(const std::exception& e);

}  // namespace qauth::cli
