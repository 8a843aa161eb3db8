#pragma once

// Time integration of the odd-viscosity system in either formulation.
//
//   original:  d_t rho = -u.grad rho
//              d_t u   = -u.grad u - (1/rho) grad Pi - (1/rho) nu0 div(rho(grad u^perp + grad^perp u))
//   elsasser:  d_t rho = -u.grad rho
//              d_t u   = -W.grad u - (1/rho) grad Pi0
//              d_t W   = -u.grad W - (1/rho) grad Pi0
//
// Products are dealiased; 1/rho and log rho are formed pointwise and then
// truncated. In the original formulation W_eff is carried along as a derived
// field and recomputed after every step; in the Elsasser formulation it is an
// independent unknown and compatibility with (rho, u) is only monitored.

#include <functional>
#include <string>
#include <vector>

#include "oddflow/pressure.hpp"

namespace oddflow {

enum class Formulation { original, elsasser };

std::string to_string(Formulation f);
/// Throws std::invalid_argument for unknown names.
Formulation parse_formulation(const std::string& name);

struct SolverConfig {
  Formulation formulation = Formulation::elsasser;
  double cfl_adv = 0.5;
  double cfl_odd = 1.0;
  double t_end = 1.0;
  double dt_max = 1e-2;
  /// When positive, every step uses this dt (the last one is clipped to t_end).
  double fixed_dt = 0.0;
  int reproject_every = 1;
  double rho_floor = kDefaultDensityFloor;
  EllipticOptions elliptic;

  /// Throws std::invalid_argument on nonpositive or inconsistent values.
  void validate() const;
};

struct Tendency {
  ScalarField rho;
  VectorField u;
  /// Zero in the original formulation.
  VectorField w_eff;
  /// Pi0 (elsasser) or Pi (original) of this evaluation.
  ScalarField pressure;
  EllipticSolveReport report;
};

Tendency rhs_original(const State& s, const EllipticOptions& opts = {});
Tendency rhs_elsasser(const State& s, const EllipticOptions& opts = {});
Tendency rhs(const State& s, Formulation f, const EllipticOptions& opts = {});

/// min(dt_max, cfl_adv dx / max(|u|, |W|, eps), cfl_odd 2 sqrt2 / (2 |nu0| k_max^2 rho_max / rho_min)).
double stable_dt(const State& s, const SolverConfig& cfg);

struct StepResult {
  State state;
  double dt = 0.0;
  /// Worst stage report.
  EllipticSolveReport elliptic;
  double div_u = 0.0;
  double div_w = 0.0;
  double compat = 0.0;
  /// Pressure of the first stage, i.e. at the start of the step.
  ScalarField pressure_start;
};

/// Raised when the density leaves (floor, inf) or any field stops being finite.
class BlowupSuspected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One classical RK4 step of size dt. `step_index` drives reproject_every.
StepResult step_rk4(const State& s, const SolverConfig& cfg, double dt, long step_index = 0);
/// Same, with dt from stable_dt (or fixed_dt), clipped to t_end.
StepResult step_rk4(const State& s, const SolverConfig& cfg, long step_index = 0);

enum class Outcome { running, completed, blowup_suspected, elliptic_failure };
std::string to_string(Outcome o);

/// Called with the state after every accepted step (and once for the initial state, with
/// step == nullptr). Returning false stops the run early with outcome completed.
using StepObserver = std::function<bool(const State& state, const StepResult* step)>;

struct RunResult {
  Outcome outcome = Outcome::running;
  State final_state;
  long steps = 0;
  std::string message;
};

/// Integrates to cfg.t_end. Errors end the run with the last valid state kept.
RunResult integrate(const SolverConfig& cfg, State initial, const StepObserver& observer = {});

}  // namespace oddflow
