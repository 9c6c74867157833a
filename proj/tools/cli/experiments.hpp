#pragma once

#include <string>

#include "commands.hpp"

namespace tat::cli {

/// Canned experiments: "counterexample", "exterior-source", "partial-data".
/// Each writes its images and `metrics.json` under `out`; the report carries
/// one {name, value, threshold, pass} entry per check.
Outcome cmd_experiment(const json& cfg, const std::string& name, const fs::path& out);

}  // namespace tat::cli
