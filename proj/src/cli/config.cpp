#include "vanhove/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vanhove::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

}  // namespace

double parse_double(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError("key '" + key + "': '" + text + "' is not a number");
  return v;
}

long long parse_integer(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError("key '" + key + "': '" + text + "' is not an integer");
  return v;
}

const std::map<std::string, std::string>& RunConfig::defaults() {
  static const std::map<std::string, std::string> d = {
      // grid
      {"d", "3"},
      {"mu", "0"},
      {"r_min", "1e-6"},
      {"r_max", "12"},
      {"panels", "16"},
      {"points", "32"},
      // source
      {"source", "gaussian"},
      {"gamma", "0"},
      {"cutoff", "0"},
      // semiclassical ladders and regimes
      {"hbar", "0.1"},
      {"hbar_kmin", "3"},
      {"hbar_kmax", "12"},
      {"beta", "2"},
      {"regime", "linear"},
      {"c", "1"},
      {"eps", "0.5"},
      {"sigmas", "0.5,1,2,4"},
      {"t_list", "0,1,10,100"},
      // KMS and ground-state windows
      {"betas", "0.5,1,4"},
      {"t_min", "-5"},
      {"t_max", "5"},
      {"t_samples", "11"},
      {"window_lo", "-3"},
      {"window_hi", "-1"},
      {"control_lo", "1"},
      {"control_hi", "3"},
      {"window_dt", "0.05"},
      // scattering
      {"decay_t", "10,100,1000"},
      // Fock
      {"omega", "1"},
      {"coupling_re", "0.5"},
      {"coupling_im", "0"},
      {"fock_cutoff", "60"},
      {"ladder_s", "1.7"},
      {"cutoffs", "4096,8192,16384,32768,65536,131072,262144,524288"},
      {"garding_kmin", "3"},
      {"garding_kmax", "10"},
      // run
      {"seed", "20240601"},
      {"trials", "20"},
  };
  return d;
}

RunConfig::RunConfig() : values_(defaults()) {}

void RunConfig::set(const std::string& key, const std::string& value) {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second = trim(value);
}

void RunConfig::apply_line(const std::string& line, const std::string& where) {
  const std::string t = trim(line);
  if (t.empty() || t[0] == '#') return;
  const auto eq = t.find('=');
  if (eq == std::string::npos) throw ConfigError(where + ": expected key=value, got '" + t + "'");
  set(trim(t.substr(0, eq)), t.substr(eq + 1));
}

RunConfig RunConfig::load(const std::optional<std::string>& path, const std::vector<std::string>& overrides) {
  RunConfig cfg;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot read config file '" + *path + "'");
    std::string line;
    int n = 0;
    while (std::getline(in, line)) cfg.apply_line(line, *path + ":" + std::to_string(++n));
  }
  for (const auto& o : overrides) cfg.apply_line(o, "override");
  // validate everything numeric up front so errors surface as config errors
  cfg.grid_options();
  return cfg;
}

const std::string& RunConfig::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown config key '" + key + "'");
  return it->second;
}

double RunConfig::num(const std::string& key) const { return parse_double(str(key), key); }

int RunConfig::integer(const std::string& key) const { return static_cast<int>(parse_integer(str(key), key)); }

std::vector<double> RunConfig::num_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& part : split(str(key), ',')) out.push_back(parse_double(part, key));
  return out;
}

std::vector<int> RunConfig::int_list(const std::string& key) const {
  std::vector<int> out;
  for (const auto& part : split(str(key), ',')) out.push_back(static_cast<int>(parse_integer(part, key)));
  return out;
}

std::uint64_t RunConfig::seed() const {
  const long long s = parse_integer(str("seed"), "seed");
  return static_cast<std::uint64_t>(s);
}

std::uint64_t RunConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& [k, v] : values_) {
    for (char ch : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::string RunConfig::hash_hex() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

GridOptions RunConfig::grid_options() const {
  GridOptions o;
  o.dim = integer("d");
  o.mass = num("mu");
  o.r_min = num("r_min");
  o.r_max = num("r_max");
  o.panels = integer("panels");
  o.points = integer("points");
  return o;
}

GridPtr RunConfig::grid() const {
  try {
    return MomentumGrid::make(grid_options());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

SourceSpec RunConfig::source(const GridPtr& grid) const {
  const std::string& kind = str("source");
  SourceSpec s;
  if (kind == "gaussian")
    s = SourceSpec::gaussian(grid);
  else if (kind == "powerlaw")
    s = SourceSpec::power_law(grid, num("gamma"));
  else
    throw ConfigError("source must be 'gaussian' or 'powerlaw', got '" + kind + "'");
  const int n = integer("cutoff");
  if (n < 0) throw ConfigError("cutoff must be >= 0 (0 = none)");
  if (n > 0) s = s.with_cutoff(n);
  return s;
}

std::vector<double> RunConfig::hbar_ladder(const std::string& prefix) const {
  const int lo = integer(prefix + "_kmin"), hi = integer(prefix + "_kmax");
  if (lo > hi || lo < 0 || hi > 60) throw ConfigError(prefix + " ladder needs 0 <= kmin <= kmax <= 60");
  std::vector<double> out;
  for (int k = lo; k <= hi; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

}  // namespace vanhove::cli
