#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vanhove/cli/config.hpp"

namespace vanhove::cli {

using Cell = std::variant<double, long long, std::string>;

/// One command's artifacts: a CSV table and a flat JSON summary, plus the
/// assertions that decide the exit code.
class Report {
 public:
  Report(std::string command, const RunConfig& config);

  void columns(std::vector<std::string> names);
  void row(std::vector<Cell> cells);
  nlohmann::json& summary() { return summary_; }

  /// Records a named invariant; the JSON gets "<name>": true/false.
  bool check(const std::string& name, bool passed, const std::string& detail = "");
  bool passed() const;
  std::vector<std::string> failures() const;

  std::string csv() const;
  std::string json() const;
  /// Writes <dir>/<command>.csv and <dir>/<command>.json.
  void write(const std::string& dir) const;

 private:
  std::string command_;
  const RunConfig& config_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  nlohmann::json summary_ = nlohmann::json::object();
  std::vector<std::pair<std::string, std::string>> failed_;
};

/// %.17g, with "nan"/"inf" spelled out.
std::string format_number(double v);

}  // namespace vanhove::cli
