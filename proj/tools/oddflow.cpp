// oddflow: run, verify, lifespan and lp-check subcommands.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "oddflow/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"odd-viscosity pseudo-spectral simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  int jobs = 1;
  std::optional<std::uint64_t> seed;

  auto common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "override, section.key=value (repeatable)");
    sub->add_option("--seed", seed, "random seed for scenario data");
    if (with_out) sub->add_option("--out", out_dir, "output directory (default ./out; lp-check writes only to stdout without it)");
  };

  CLI::App* run = app.add_subcommand("run", "run one simulation");
  common(run, true);
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  common(verify, false);
  CLI::App* lifespan = app.add_subcommand("lifespan", "epsilon sweep of the norm-doubling time");
  common(lifespan, true);
  lifespan->add_option("--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber);
  CLI::App* lp = app.add_subcommand("lp-check", "Littlewood-Paley calibration report");
  common(lp, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? oddflow::kExitOk : oddflow::kExitUsage;
  }

  oddflow::Config cfg;
  try {
    if (seed) overrides.push_back("scenario.seed=" + std::to_string(*seed));
    cfg = oddflow::load_config(config_path, overrides);
  } catch (const oddflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return oddflow::kExitUsage;
  }

  try {
    if (*run) return oddflow::cmd_run(cfg, out_dir.empty() ? "out" : out_dir, std::cout);
    if (*verify) return oddflow::cmd_verify(cfg, std::cout);
    if (*lifespan) return oddflow::cmd_lifespan(cfg, out_dir.empty() ? "out" : out_dir, jobs, std::cout);
    if (*lp) return oddflow::cmd_lp_check(cfg.n, cfg.length, out_dir, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return oddflow::kExitFailure;
  }
  return oddflow::kExitUsage;
}
