#include "oddflow/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oddflow/spectral.hpp"

namespace oddflow {

std::string to_string(Formulation f) { return f == Formulation::original ? "original" : "elsasser"; }

Formulation parse_formulation(const std::string& name) {
  if (name == "original" || name == "A") return Formulation::original;
  if (name == "elsasser" || name == "B") return Formulation::elsasser;
  throw std::invalid_argument("unknown formulation '" + name + "' (expected original or elsasser)");
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::running: return "running";
    case Outcome::completed: return "completed";
    case Outcome::blowup_suspected: return "blowup_suspected";
    case Outcome::elliptic_failure: return "elliptic_failure";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(cfl_adv, "cfl_adv");
  positive(cfl_odd, "cfl_odd");
  positive(t_end, "t_end");
  positive(dt_max, "dt_max");
  positive(rho_floor, "rho_floor");
  positive(elliptic.rtol, "rtol");
  if (fixed_dt < 0.0 || !std::isfinite(fixed_dt)) throw std::invalid_argument("fixed_dt must be >= 0");
  if (reproject_every < 1) throw std::invalid_argument("reproject_every must be >= 1");
  if (elliptic.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
}

Tendency rhs_original(const State& s, const EllipticOptions& opts) {
  const ScalarField a = inverse_density(s.rho);
  const VectorField transport = advect(s.u, s.u);
  const VectorField odd = product(a, odd_tensor_divergence(s.rho, s.u, s.nu0));
  PressureSolution pi = solve_elliptic(a, divergence(transport + odd), opts);

  VectorField du = transport + odd;
  du += product(a, grad(pi.field));
  du *= -1.0;
  return Tendency{-advect(s.u, s.rho), std::move(du), VectorField(s.grid_ptr()), std::move(pi.field), pi.report};
}

Tendency rhs_elsasser(const State& s, const EllipticOptions& opts) {
  const ScalarField a = inverse_density(s.rho);
  PressureSolution pi0 = solve_elliptic(a, pi0_rhs(s.u, s.w_eff), opts);
  const VectorField g = product(a, grad(pi0.field));

  VectorField du = advect(s.w_eff, s.u) + g;
  du *= -1.0;
  VectorField dw = advect(s.u, s.w_eff) + g;
  dw *= -1.0;
  return Tendency{-advect(s.u, s.rho), std::move(du), std::move(dw), std::move(pi0.field), pi0.report};
}

Tendency rhs(const State& s, Formulation f, const EllipticOptions& opts) {
  return f == Formulation::original ? rhs_original(s, opts) : rhs_elsasser(s, opts);
}

double stable_dt(const State& s, const SolverConfig& cfg) {
  const Grid& g = s.rho.grid();
  const double speed = std::max({s.u.max_norm(), s.w_eff.max_norm(), 1e-12});
  const double dt_adv = cfg.cfl_adv * g.dx() / speed;
  const double contrast = s.rho.max() / s.rho.min();
  const double kmax = g.k_max();
  const double dt_odd = cfg.cfl_odd * 2.0 * std::numbers::sqrt2 / (2.0 * std::abs(s.nu0) * kmax * kmax * contrast);
  return std::min({cfg.dt_max, dt_adv, dt_odd});
}

namespace {

State advance(const State& base, const Tendency& k, double h) {
  State out = base;
  out.rho.add_scaled(h, k.rho);
  out.u.add_scaled(h, k.u);
  out.w_eff.add_scaled(h, k.w_eff);
  out.t = base.t + h;
  return out;
}

void accumulate(State& acc, const Tendency& k, double h) {
  acc.rho.add_scaled(h, k.rho);
  acc.u.add_scaled(h, k.u);
  acc.w_eff.add_scaled(h, k.w_eff);
}

bool finite(const State& s) {
  return s.rho.all_finite() && s.u.x.all_finite() && s.u.y.all_finite() && s.w_eff.x.all_finite() &&
         s.w_eff.y.all_finite();
}

void note_report(EllipticSolveReport& worst, const EllipticSolveReport& r) {
  worst.iterations = std::max(worst.iterations, r.iterations);
  worst.relative_residual = std::max(worst.relative_residual, r.relative_residual);
  worst.converged = worst.converged && r.converged;
}

Tendency evaluate(const State& s, const SolverConfig& cfg) {
  try {
    require_positive_density(s.rho, cfg.rho_floor);
    return rhs(s, cfg.formulation, cfg.elliptic);
  } catch (const DensityError& e) {
    throw BlowupSuspected(std::string("stage density: ") + e.what());
  }
}

}  // namespace

StepResult step_rk4(const State& s, const SolverConfig& cfg, double dt, long step_index) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("step_rk4: dt must be positive");
  StepResult res{s, dt, EllipticSolveReport{0, 0.0, true}, 0.0, 0.0, 0.0, ScalarField(s.grid_ptr())};

  const Tendency k1 = evaluate(s, cfg);
  note_report(res.elliptic, k1.report);
  res.pressure_start = k1.pressure;
  const Tendency k2 = evaluate(advance(s, k1, 0.5 * dt), cfg);
  note_report(res.elliptic, k2.report);
  const Tendency k3 = evaluate(advance(s, k2, 0.5 * dt), cfg);
  note_report(res.elliptic, k3.report);
  const Tendency k4 = evaluate(advance(s, k3, dt), cfg);
  note_report(res.elliptic, k4.report);

  State next = s;
  accumulate(next, k1, dt / 6.0);
  accumulate(next, k2, dt / 3.0);
  accumulate(next, k3, dt / 3.0);
  accumulate(next, k4, dt / 6.0);
  next.t = s.t + dt;

  if (!finite(next)) throw BlowupSuspected("non-finite values after step at t = " + std::to_string(next.t));
  if (!(next.rho.min() > cfg.rho_floor)) {
    throw BlowupSuspected("density minimum " + std::to_string(next.rho.min()) + " reached the floor at t = " +
                          std::to_string(next.t));
  }

  if (step_index % cfg.reproject_every == 0) {
    next.u = leray_project(next.u);
    if (cfg.formulation == Formulation::elsasser) next.w_eff = leray_project(next.w_eff);
  }
  if (cfg.formulation == Formulation::original) next.w_eff = effective_velocity(next.rho, next.u, next.nu0);

  res.div_u = divergence(next.u).max_abs();
  res.div_w = divergence(next.w_eff).max_abs();
  res.compat = compatibility_residual(next);
  res.state = std::move(next);
  return res;
}

StepResult step_rk4(const State& s, const SolverConfig& cfg, long step_index) {
  double dt = cfg.fixed_dt > 0.0 ? cfg.fixed_dt : stable_dt(s, cfg);
  const double remaining = cfg.t_end - s.t;
  // Clip to t_end; absorb a sliver rather than leaving a tiny final step.
  if (dt >= remaining * (1.0 - 1e-12)) dt = remaining;
  return step_rk4(s, cfg, dt, step_index);
}

RunResult integrate(const SolverConfig& cfg, State initial, const StepObserver& observer) {
  cfg.validate();
  RunResult out{Outcome::running, std::move(initial), 0, ""};
  if (observer && !observer(out.final_state, nullptr)) {
    out.outcome = Outcome::completed;
    return out;
  }
  const double t_tol = 1e-12 * std::max(1.0, cfg.t_end);
  try {
    while (out.final_state.t < cfg.t_end - t_tol) {
      StepResult step = step_rk4(out.final_state, cfg, out.steps);
      ++out.steps;
      out.final_state = step.state;
      if (observer && !observer(out.final_state, &step)) break;
    }
    out.outcome = Outcome::completed;
  } catch (const BlowupSuspected& e) {
    out.outcome = Outcome::blowup_suspected;
    out.message = e.what();
  } catch (const DensityError& e) {
    out.outcome = Outcome::blowup_suspected;
    out.message = e.what();
  } catch (const EllipticFailure& e) {
    out.outcome = Outcome::elliptic_failure;
    out.message = e.what();
  }
  return out;
}

}  // namespace oddflow
