#pragma once

// Monitored functionals: energies, Besov energies, the blow-up integrand,
// the lifespan lower bound and the stability distance, plus a monitored run
// that samples them along a trajectory.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "oddflow/dynamics.hpp"
#include "oddflow/littlewood_paley.hpp"

namespace oddflow {

struct DiagnosticsRecord {
  double t = 0.0;
  double kinetic_energy = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double u_L2 = 0.0;
  double grad_u_inf = 0.0;
  double hess_rho_inf = 0.0;
  double div_u_inf = 0.0;
  double div_w_inf = 0.0;
  double compat_inf = 0.0;
  double E_s = 0.0;
  double E_lower = 0.0;
  double H_upper = 0.0;
  double A_t = 0.0;
  double grad_pi0_L2 = 0.0;
  double grad_pi0_inf = 0.0;
  /// Relative residual of the omega equation over the last step; NaN when not available.
  double vorticity_residual = std::numeric_limits<double>::quiet_NaN();
};

/// Column names in CSV order.
const std::vector<std::string>& diagnostics_columns();
std::vector<double> diagnostics_values(const DiagnosticsRecord& r);

/// (1/2) int rho |u|^2
double kinetic_energy(const State& s);

/// ||u||_L2 + ||rho||_inf + ||omega||_{B^{s-1}_{inf,r}} + ||zeta_eff||_{B^{s-1}_{inf,r}}
double energy_functional(const State& s, double sigma, double r, const DyadicCutoffs& cutoffs);
/// The lower energy: s = 1, r = 1 (omega and zeta_eff in B^0_{inf,1}).
double lower_energy(const State& s, const DyadicCutoffs& cutoffs);
/// The higher energy: omega and zeta_eff in B^1_{inf,1}.
double upper_energy(const State& s, const DyadicCutoffs& cutoffs);

struct BlowupIntegrand {
  /// 1 + ||grad rho||^5 + ||grad u||^{5/2} + ||hess rho||^{5/2}
  double full = 1.0;
  /// ||grad u||^{5/2} + ||hess rho||^{5/2}
  double reduced = 0.0;
};

BlowupIntegrand blowup_integrand(const State& s);
BlowupIntegrand blowup_integrand(double grad_rho_inf, double grad_u_inf, double hess_rho_inf);

/// K / (1 + N1) * Phi^4(1 / ||grad rho0||_{B^1_{inf,1}}), Phi(z) = log(1 + K z / (1 + N1)^3),
/// N1 = ||omega0||_{B^1_{inf,1}} + ||lap log rho0||_{B^1_{inf,1}}. +inf when grad rho0 vanishes.
double lifespan_lower_bound(const ScalarField& omega0, const ScalarField& rho0, double K, const DyadicCutoffs& cutoffs);
/// The same formula from the three norms.
double lifespan_lower_bound(double n1, double grad_rho_b1, double K);

/// ||rho_a - rho_b||_L2 + ||u_a - u_b||_L2 + ||W_a - W_b||_L2
double stability_distance(const State& a, const State& b);

/// ||f||_{B^0_{inf,1}} for each entry.
std::vector<double> b0_norm_history(const std::vector<ScalarField>& history, const DyadicCutoffs& cutoffs);

struct DoublingTime {
  double t = std::numeric_limits<double>::infinity();
  bool censored = true;
};

/// First time series[i] >= 2 series[0], linearly interpolated between samples.
DoublingTime doubling_time(const std::vector<double>& times, const std::vector<double>& values);

struct LifespanStudyRow {
  double epsilon = 0.0;
  double T_double = 0.0;
  double T_bound = 0.0;
  bool censored = false;
  double T_double_original = 0.0;
  bool censored_original = false;
};

struct DiagnosticsOptions {
  /// Regularity s and summation r of E_s.
  double besov_s = 1.0;
  double besov_r = 1.0;
};

/// Everything except vorticity_residual, which needs two time levels.
DiagnosticsRecord diagnose(const State& s, const ScalarField& pi0, const DyadicCutoffs& cutoffs,
                           const DiagnosticsOptions& opts = {});

/// ||(omega1 - omega0)/dt - (R0 + R1)/2||_inf divided by max(||R0||_inf, ||R1||_inf, ||d omega/dt||_inf).
double vorticity_residual(const ScalarField& omega0, const ScalarField& omega1, double dt, const ScalarField& r0,
                          const ScalarField& r1);

struct MonitorOptions {
  /// Sampling interval in time; 0 samples every step.
  double sample_every = 0.0;
  DiagnosticsOptions diagnostics;
  /// Stop once E_lower reaches stop_ratio times its initial value (0 disables).
  double stop_ratio = 0.0;
  /// Keep copies of the sampled states.
  bool keep_states = false;
};

struct Trajectory {
  RunResult run;
  std::vector<DiagnosticsRecord> records;
  std::vector<State> states;
  double blowup_integral = 0.0;
};

using RecordObserver = std::function<void(const State&, const DiagnosticsRecord&)>;

/// integrate() with diagnostics sampled at the configured cadence, plus the final state.
Trajectory run(const SolverConfig& cfg, State initial, const MonitorOptions& opts = {},
               const RecordObserver& observer = {});

}  // namespace oddflow
