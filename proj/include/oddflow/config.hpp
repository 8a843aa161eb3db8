#pragma once

// INI configuration for the command-line tool.
//
//   [grid]      n, length
//   [physics]   nu0, formulation
//   [time]      t_end, dt_max, cfl_adv, cfl_odd, fixed_dt, reproject_every, rho_floor, rtol, max_iters
//   [scenario]  family, amplitude, epsilon, m1, m2, seed, slope, cutoff, shear_width
//   [output]    sample_every, snapshot_every, besov_s, besov_r
//   [sweep]     epsilons, t_max, K, stop_ratio
//
// Unknown sections or keys are errors. Overrides use "section.key=value".

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "oddflow/diagnostics.hpp"
#include "oddflow/scenarios.hpp"

namespace oddflow {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  double sample_every = 0.01;
  /// 0 writes only the initial and final snapshots.
  double snapshot_every = 0.0;
  double besov_s = 1.0;
  double besov_r = 1.0;
};

struct SweepOptions {
  std::vector<double> epsilons = {0.4, 0.2, 0.1, 0.05};
  double t_max = 4.0;
  double K = 1.0;
  /// Runs stop once E_lower reaches this multiple of its initial value.
  double stop_ratio = 2.0;
};

struct Config {
  std::size_t n = 64;
  double length = 6.283185307179586;
  double nu0 = 0.1;
  SolverConfig solver;
  ScenarioSpec scenario;
  OutputOptions output;
  SweepOptions sweep;

  void validate() const;
};

/// Defaults, then the file (if path is nonempty), then the overrides in order.
Config load_config(const std::string& path, const std::vector<std::string>& overrides = {});
Config parse_config_text(const std::string& text, const std::vector<std::string>& overrides = {});

/// Every key in a fixed order with round-trippable values; used for hashing and manifests.
std::string canonical_text(const Config& c);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

}  // namespace oddflow
