#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vanhove/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace vanhove::cli;
  CLI::App app{"van Hove field-theory workbench"};
  std::string command;
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::string names;
  for (const auto& n : command_names()) names += (names.empty() ? "" : ", ") + n;
  app.add_option("command", command, "one of: " + names)->required();
  app.add_option("overrides", overrides, "key=value settings applied after the config file");
  app.add_option("-c,--config", config_path, "key=value config file");
  app.add_option("-o,--out", out_dir, "directory for <command>.csv and <command>.json");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const RunConfig config =
        RunConfig::load(config_path.empty() ? std::nullopt : std::optional<std::string>(config_path), overrides);
    const Report report = run_command(command, config);
    if (!out_dir.empty()) report.write(out_dir);
    std::cout << report.json() << "\n";
    if (!report.passed()) {
      for (const auto& f : report.failures()) std::cerr << "assertion failed: " << f << "\n";
      return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
