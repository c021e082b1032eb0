#include <CLI11.hpp>
#include <iostream>

#include "lsharm/config.hpp"
#include "lsharm/errors.hpp"
#include "lsharm/runner.hpp"

namespace {

lsharm::RunConfig load_config(const std::string& path) {
  return lsharm::RunConfig::parse_file(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral Lippmann-Schwinger scattering solver"};
  app.require_subcommand(1);

  std::string config_path;

  auto* solve_cmd = app.add_subcommand("solve", "run one configuration");
  solve_cmd->add_option("config", config_path, "configuration file")->required();

  auto* sweep_cmd =
      app.add_subcommand("sweep", "run a convergence study over Ni or F");
  sweep_cmd->add_option("config", config_path, "configuration file")->required();

  auto* cache_cmd = app.add_subcommand(
      "cache-moments", "precompute and store the moment table");
  cache_cmd->add_option("config", config_path, "configuration file")->required();

  auto* self_cmd =
      app.add_subcommand("selftest", "run the built-in oracle checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (self_cmd->parsed()) return lsharm::selftest(std::cout);
    lsharm::RunConfig cfg;
    try {
      cfg = load_config(config_path);
    } catch (const lsharm::InvalidConfig& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    if (solve_cmd->parsed()) return lsharm::run_single(cfg, std::cout);
    if (sweep_cmd->parsed()) return lsharm::run_sweep(cfg, std::cout);
    if (cache_cmd->parsed()) return lsharm::cache_moments(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
