#include "vanhove/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vanhove::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Report::Report(std::string command, const RunConfig& config) : command_(std::move(command)), config_(config) {
  summary_["command"] = command_;
  summary_["config_hash"] = config_.hash_hex();
  summary_["seed"] = config_.seed();
}

void Report::columns(std::vector<std::string> names) { columns_ = std::move(names); }

void Report::row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("row width does not match the header");
  rows_.push_back(std::move(cells));
}

bool Report::check(const std::string& name, bool passed, const std::string& detail) {
  summary_[name] = passed;
  if (!passed) failed_.emplace_back(name, detail);
  return passed;
}

bool Report::passed() const { return failed_.empty(); }

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const auto& [name, detail] : failed_) out.push_back(detail.empty() ? name : name + ": " + detail);
  return out;
}

std::string Report::csv() const {
  std::ostringstream out;
  out << "# command=" << command_ << "\n";
  out << "# config_hash=" << config_.hash_hex() << "\n";
  for (const auto& [k, v] : config_.values()) out << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << "\n";
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << ",";
      std::visit(
          [&out](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) out << format_number(v);
            else out << v;
          },
          r[i]);
    }
    out << "\n";
  }
  return out.str();
}

std::string Report::json() const {
  nlohmann::json j = summary_;
  j["passed"] = passed();
  std::string joined;
  for (const auto& f : failures()) joined += (joined.empty() ? "" : "; ") + f;
  j["failures"] = joined;
  return j.dump(2);
}

void Report::write(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  std::ofstream(base / (command_ + ".csv")) << csv();
  std::ofstream(base / (command_ + ".json")) << json() << "\n";
}

}  // namespace vanhove::cli
