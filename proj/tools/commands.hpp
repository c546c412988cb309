#pragma once

#include <vector>

#include "output.hpp"

namespace linc::cli {

struct CommandResult {
  std::vector<Table> tables;
  std::vector<std::string> diagnostics;
};

CommandResult static_sweep(const RunConfig& rc);
CommandResult driven_sweep(const RunConfig& rc);
CommandResult purity_map(const RunConfig& rc);
CommandResult asymmetry_map(const RunConfig& rc);
CommandResult parasitics(const RunConfig& rc);
CommandResult noise_report(const RunConfig& rc);

// Fast internal consistency checks; returns the failures.
std::vector<std::string> self_test();

}  // namespace linc::cli
