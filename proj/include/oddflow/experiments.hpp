#pragma once

// The four subcommands of the command-line tool. Each returns a process exit
// status: 0 pass, 1 runtime or check failure, 2 usage or configuration error.

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "oddflow/config.hpp"

namespace oddflow {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// One simulation: timeseries.csv, snapshot_*.oddf and manifest.json under out_dir.
int cmd_run(const Config& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// Prints a PASS/FAIL table of the invariant suite on the configured grid.
int cmd_verify(const Config& cfg, std::ostream& out);

struct LifespanSweep {
  std::vector<LifespanStudyRow> rows;  // in sweep order
  int inversions = 0;
  bool t_double_monotone = false;
  bool t_bound_monotone = false;
};

/// Runs both formulations for every epsilon of cfg.sweep, up to `jobs` at a time.
/// Per-run time series go to out_dir when it is nonempty.
LifespanSweep lifespan_sweep(const Config& cfg, int jobs, const std::filesystem::path& out_dir);

/// T_double strictly increasing as epsilon decreases, with at most one
/// inversion no larger than `tolerance`; censored rows count as +inf.
bool lifespan_monotone(const std::vector<LifespanStudyRow>& rows, double tolerance, int* inversions = nullptr);

int cmd_lifespan(const Config& cfg, const std::filesystem::path& out_dir, int jobs, std::ostream& log);

/// Littlewood-Paley calibration report as CSV on `out` (and lp_check.csv if out_dir is nonempty).
int cmd_lp_check(std::size_t n, double length, const std::filesystem::path& out_dir, std::ostream& out);

}  // namespace oddflow
