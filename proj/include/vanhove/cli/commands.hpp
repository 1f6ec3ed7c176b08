#pragma once

#include <string>
#include <vector>

#include "vanhove/cli/config.hpp"
#include "vanhove/cli/report.hpp"

namespace vanhove::cli {

const std::vector<std::string>& command_names();

/// Runs one workflow and returns its artifacts and assertion results.
/// Throws ConfigError for unusable configurations.
Report run_command(const std::string& name, const RunConfig& config);

}  // namespace vanhove::cli
