#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vanhove/grid.hpp"
#include "vanhove/sources.hpp"

namespace vanhove::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key=value run configuration. Every key has a default; unknown keys
/// are errors.
class RunConfig {
 public:
  RunConfig();

  static const std::map<std::string, std::string>& defaults();
  /// Reads an optional file, then applies "key=value" overrides in order.
  static RunConfig load(const std::optional<std::string>& path, const std::vector<std::string>& overrides);

  void set(const std::string& key, const std::string& value);
  void apply_line(const std::string& line, const std::string& where);

  const std::map<std::string, std::string>& values() const { return values_; }
  const std::string& str(const std::string& key) const;
  double num(const std::string& key) const;
  int integer(const std::string& key) const;
  std::vector<double> num_list(const std::string& key) const;
  std::vector<int> int_list(const std::string& key) const;
  std::uint64_t seed() const;

  /// FNV-1a over the canonical "key=value\n" listing.
  std::uint64_t hash() const;
  std::string hash_hex() const;

  GridOptions grid_options() const;
  GridPtr grid() const;
  SourceSpec source(const GridPtr& grid) const;
  /// 2^{-hbar_kmin} ... 2^{-hbar_kmax}
  std::vector<double> hbar_ladder(const std::string& prefix = "hbar") const;

 private:
  std::map<std::string, std::string> values_;
};

double parse_double(const std::string& text, const std::string& key);
long long parse_integer(const std::string& text, const std::string& key);

}  // namespace vanhove::cli
