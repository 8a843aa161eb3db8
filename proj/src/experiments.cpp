#include "oddflow/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "oddflow/io.hpp"
#include "oddflow/spectral.hpp"
#include "oddflow/verification.hpp"

namespace oddflow {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

MonitorOptions monitor_options(const Config& cfg) {
  MonitorOptions m;
  m.sample_every = cfg.output.sample_every;
  m.diagnostics.besov_s = cfg.output.besov_s;
  m.diagnostics.besov_r = cfg.output.besov_r;
  return m;
}

SolverConfig solver_for(const Config& cfg) {
  SolverConfig s = cfg.solver;
  return s;
}

}  // namespace

int cmd_run(const Config& cfg, const fs::path& out_dir, std::ostream& log) {
  fs::create_directories(out_dir);
  const fs::path manifest_path = out_dir / "manifest.json";
  RunManifest manifest;
  manifest.config_text = canonical_text(cfg);
  manifest.config_hash = hex64(fnv1a64(manifest.config_text));
  manifest.version = library_version();
  manifest.command = "run";
  manifest.started = utc_now();
  write_manifest(manifest_path, manifest);

  auto add_output = [&](const fs::path& p) {
    manifest.outputs.push_back(p.filename().string());
    write_manifest(manifest_path, manifest);
  };

  auto finish = [&](Outcome outcome, const std::string& message) {
    manifest.outcome = to_string(outcome);
    manifest.message = message;
    manifest.finished = utc_now();
    write_manifest(manifest_path, manifest);
  };

  try {
    const GridPtr grid = Grid::create(cfg.n, cfg.length);
    const State initial = build_initial_state(grid, cfg.scenario, cfg.nu0);
    write_snapshot(out_dir / "snapshot_initial.oddf", snapshot_of(initial));
    add_output(out_dir / "snapshot_initial.oddf");

    CsvWriter csv(out_dir / "timeseries.csv", diagnostics_columns());
    add_output(out_dir / "timeseries.csv");

    int snapshot_index = 0;
    double next_snapshot = cfg.output.snapshot_every > 0.0 ? initial.t + cfg.output.snapshot_every : INFINITY;
    auto on_record = [&](const State& s, const DiagnosticsRecord& rec) {
      csv.row(diagnostics_values(rec));
      if (s.t >= next_snapshot - 1e-12) {
        char name[40];
        std::snprintf(name, sizeof name, "snapshot_%04d.oddf", ++snapshot_index);
        write_snapshot(out_dir / name, snapshot_of(s));
        add_output(out_dir / name);
        while (next_snapshot <= s.t + 1e-12) next_snapshot += cfg.output.snapshot_every;
      }
    };

    const Trajectory traj = run(solver_for(cfg), initial, monitor_options(cfg), on_record);
    write_snapshot(out_dir / "snapshot_final.oddf", snapshot_of(traj.run.final_state));
    add_output(out_dir / "snapshot_final.oddf");
    finish(traj.run.outcome, traj.run.message);

    log << "outcome " << to_string(traj.run.outcome) << " at t = " << fixed(traj.run.final_state.t) << " after "
        << traj.run.steps << " steps\n";
    if (!traj.records.empty()) {
      const double e0 = traj.records.front().kinetic_energy;
      const double e1 = traj.records.back().kinetic_energy;
      log << "kinetic energy " << fixed(e0, 12) << " -> " << fixed(e1, 12) << " (relative drift "
          << fixed(e0 > 0.0 ? std::abs(e1 - e0) / e0 : std::abs(e1 - e0), 3) << ")\n";
      log << "integral of A(t): " << fixed(traj.blowup_integral) << "\n";
    }
    if (!traj.run.message.empty()) log << traj.run.message << "\n";
    return traj.run.outcome == Outcome::completed ? kExitOk : kExitFailure;
  } catch (const std::exception& e) {
    finish(Outcome::elliptic_failure, e.what());
    log << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  const std::vector<CheckResult> checks = verification_suite(cfg.n, cfg.nu0, 20, cfg.scenario.seed + 1);
  bool all = true;
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%s  %-*s  %.3e  (<= %.1e)\n", c.pass ? "PASS" : "FAIL", static_cast<int>(width),
                  c.name.c_str(), c.value, c.tolerance);
    out << line;
    all = all && c.pass;
  }
  out << (all ? "all checks passed\n" : "some checks FAILED\n");
  return all ? kExitOk : kExitFailure;
}

bool lifespan_monotone(const std::vector<LifespanStudyRow>& rows, double tolerance, int* inversions) {
  std::vector<LifespanStudyRow> sorted = rows;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.epsilon > b.epsilon; });
  auto value = [](const LifespanStudyRow& r) { return r.censored ? INFINITY : r.T_double; };
  int count = 0;
  bool small = true;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double prev = value(sorted[i - 1]);
    const double next = value(sorted[i]);
    // Two censored runs both outlive the horizon; their order is unknown, not inverted.
    if (next > prev || (std::isinf(prev) && std::isinf(next))) continue;
    ++count;
    if (!(std::isfinite(prev) && prev - next <= tolerance)) small = false;
  }
  if (inversions != nullptr) *inversions = count;
  return count == 0 || (count == 1 && small);
}

LifespanSweep lifespan_sweep(const Config& cfg, int jobs, const fs::path& out_dir) {
  struct Task {
    std::size_t row;
    Formulation formulation;
  };
  LifespanSweep sweep;
  sweep.rows.resize(cfg.sweep.epsilons.size());
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < cfg.sweep.epsilons.size(); ++i) {
    sweep.rows[i].epsilon = cfg.sweep.epsilons[i];
    tasks.push_back({i, Formulation::elsasser});
    tasks.push_back({i, Formulation::original});
  }
  if (!out_dir.empty()) fs::create_directories(out_dir);

  const GridPtr grid = Grid::create(cfg.n, cfg.length);
  const DyadicCutoffs cutoffs(grid);
  for (auto& row : sweep.rows) {
    ScenarioSpec spec = cfg.scenario;
    spec.epsilon = row.epsilon;
    const State s0 = build_initial_state(grid, spec, cfg.nu0);
    row.T_bound = lifespan_lower_bound(curl2d(s0.u), s0.rho, cfg.sweep.K, cutoffs);
  }

  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  const int threads_each = std::max(1, omp_get_max_threads() / workers);

  auto worker = [&] {
    omp_set_num_threads(threads_each);
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      try {
        const Task& task = tasks[k];
        Config c = cfg;
        c.scenario.epsilon = sweep.rows[task.row].epsilon;
        c.solver.formulation = task.formulation;
        c.solver.t_end = cfg.sweep.t_max;
        MonitorOptions m = monitor_options(c);
        m.stop_ratio = cfg.sweep.stop_ratio;
        const Trajectory traj = run(c.solver, build_initial_state(grid, c.scenario, c.nu0), m);

        std::vector<double> times;
        std::vector<double> energy;
        for (const auto& r : traj.records) {
          times.push_back(r.t);
          energy.push_back(r.E_lower);
        }
        DoublingTime d = doubling_time(times, energy);
        // A run that stopped early without doubling (blow-up, solver failure) stays censored
        // at the last time reached.
        const double t_double = d.censored ? traj.run.final_state.t : d.t;

        if (!out_dir.empty()) {
          CsvWriter csv(out_dir / ("lifespan_eps" + format_number(c.scenario.epsilon) + "_" +
                                   to_string(task.formulation) + ".csv"),
                        diagnostics_columns());
          for (const auto& r : traj.records) csv.row(diagnostics_values(r));
        }
        std::lock_guard<std::mutex> lock(mu);
        LifespanStudyRow& row = sweep.rows[task.row];
        if (task.formulation == Formulation::elsasser) {
          row.T_double = t_double;
          row.censored = d.censored;
        } else {
          row.T_double_original = t_double;
          row.censored_original = d.censored;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  sweep.t_double_monotone = lifespan_monotone(sweep.rows, cfg.output.sample_every, &sweep.inversions);
  std::vector<LifespanStudyRow> by_eps = sweep.rows;
  std::sort(by_eps.begin(), by_eps.end(), [](const auto& a, const auto& b) { return a.epsilon > b.epsilon; });
  sweep.t_bound_monotone = true;
  for (std::size_t i = 1; i < by_eps.size(); ++i) {
    if (!(by_eps[i].T_bound > by_eps[i - 1].T_bound)) sweep.t_bound_monotone = false;
  }
  return sweep;
}

int cmd_lifespan(const Config& cfg, const fs::path& out_dir, int jobs, std::ostream& log) {
  fs::create_directories(out_dir);
  const fs::path manifest_path = out_dir / "manifest.json";
  RunManifest manifest;
  manifest.config_text = canonical_text(cfg);
  manifest.config_hash = hex64(fnv1a64(manifest.config_text));
  manifest.version = library_version();
  manifest.command = "lifespan";
  manifest.started = utc_now();
  write_manifest(manifest_path, manifest);

  LifespanSweep sweep;
  try {
    sweep = lifespan_sweep(cfg, jobs, out_dir);
  } catch (const std::exception& e) {
    manifest.outcome = "elliptic_failure";
    manifest.message = e.what();
    manifest.finished = utc_now();
    write_manifest(manifest_path, manifest);
    log << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  CsvWriter csv(out_dir / "lifespan.csv",
                {"epsilon", "T_double", "T_bound", "censored", "T_double_original", "censored_original"});
  for (const auto& r : sweep.rows) {
    csv.row({format_number(r.epsilon), format_number(r.T_double), format_number(r.T_bound), r.censored ? "1" : "0",
             format_number(r.T_double_original), r.censored_original ? "1" : "0"});
    log << "epsilon " << fixed(r.epsilon) << "  T_double " << fixed(r.T_double) << (r.censored ? " (censored)" : "")
        << "  original " << fixed(r.T_double_original) << (r.censored_original ? " (censored)" : "") << "  T_bound "
        << fixed(r.T_bound) << "\n";
  }
  const bool ok = sweep.t_double_monotone && sweep.t_bound_monotone;
  log << "T_double monotone in epsilon: " << (sweep.t_double_monotone ? "yes" : "no") << " (" << sweep.inversions
      << " inversions)\n";
  log << "T_bound monotone in epsilon: " << (sweep.t_bound_monotone ? "yes" : "no") << "\n";

  manifest.outputs = {"lifespan.csv"};
  for (const auto& entry : fs::directory_iterator(out_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("lifespan_eps", 0) == 0) manifest.outputs.push_back(name);
  }
  std::sort(manifest.outputs.begin() + 1, manifest.outputs.end());
  manifest.outcome = "completed";
  manifest.message = ok ? "monotone" : "not monotone";
  manifest.finished = utc_now();
  write_manifest(manifest_path, manifest);
  return ok ? kExitOk : kExitFailure;
}

int cmd_lp_check(std::size_t n, double length, const fs::path& out_dir, std::ostream& out) {
  const GridPtr grid = Grid::create(n, length);
  const LittlewoodPaleyReport r = littlewood_paley_report(grid, 50);
  const std::vector<CheckResult> checks = {
      check_at_most("partition_of_unity", r.partition, 1e-12),
      check_at_most("reconstruction", r.reconstruction, 1e-11),
      check_at_most("bony_sum", r.bony, 1e-10),
      check_at_most("quasi_orthogonality", r.quasi_orthogonality, 0.0),
      check_at_most("bernstein_constant", r.bernstein_constant, 8.0),
      check_at_most("commutator_constant_field", r.commutator_constant_field, 1e-12),
      check_at_most("commutator_closed_form", r.commutator_two_path, 1e-11),
  };
  std::vector<std::vector<std::string>> rows;
  bool all = true;
  for (const auto& c : checks) {
    rows.push_back({c.name, format_number(c.value), format_number(c.tolerance), c.pass ? "1" : "0"});
    all = all && c.pass;
  }
  rows.push_back({"bernstein_min_ratio", format_number(r.bernstein_min), "", ""});
  rows.push_back({"bernstein_max_ratio", format_number(r.bernstein_max), "", ""});
  out << "check,value,tolerance,pass\n";
  for (const auto& row : rows) out << row[0] << ',' << row[1] << ',' << row[2] << ',' << row[3] << '\n';
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    CsvWriter csv(out_dir / "lp_check.csv", {"check", "value", "tolerance", "pass"});
    for (const auto& row : rows) csv.row(row);
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace oddflow
