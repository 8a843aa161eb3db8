#include "oddflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "oddflow/spectral.hpp"

namespace oddflow {

const std::vector<std::string>& diagnostics_columns() {
  static const std::vector<std::string> cols = {
      "t",          "kinetic_energy", "rho_min",  "rho_max",     "u_L2",        "grad_u_inf",
      "hess_rho_inf", "div_u_inf",    "div_w_inf", "compat_inf", "E_s",         "E_lower",
      "H_upper",    "A_t",            "grad_pi0_L2", "grad_pi0_inf", "vorticity_residual"};
  return cols;
}

std::vector<double> diagnostics_values(const DiagnosticsRecord& r) {
  return {r.t,         r.kinetic_energy, r.rho_min, r.rho_max,       r.u_L2,         r.grad_u_inf,
          r.hess_rho_inf, r.div_u_inf,   r.div_w_inf, r.compat_inf,  r.E_s,          r.E_lower,
          r.H_upper,   r.A_t,            r.grad_pi0_L2, r.grad_pi0_inf, r.vorticity_residual};
}

double kinetic_energy(const State& s) {
  ScalarField speed2(s.grid_ptr());
  auto out = speed2.values();
  const auto r = s.rho.values();
  const auto ux = s.u.x.values();
  const auto uy = s.u.y.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = r[i] * (ux[i] * ux[i] + uy[i] * uy[i]);
  return 0.5 * speed2.integral();
}

double energy_functional(const State& s, double sigma, double r, const DyadicCutoffs& cutoffs) {
  const BesovIndex idx{sigma - 1.0, Lebesgue::infinity, r};
  return s.u.l2_norm() + s.rho.max_abs() + besov_norm(curl2d(s.u), idx, cutoffs) +
         besov_norm(curl2d(s.w_eff), idx, cutoffs);
}

double lower_energy(const State& s, const DyadicCutoffs& cutoffs) { return energy_functional(s, 1.0, 1.0, cutoffs); }

double upper_energy(const State& s, const DyadicCutoffs& cutoffs) { return energy_functional(s, 2.0, 1.0, cutoffs); }

BlowupIntegrand blowup_integrand(double grad_rho_inf, double grad_u_inf, double hess_rho_inf) {
  BlowupIntegrand out;
  out.reduced = std::pow(grad_u_inf, 2.5) + std::pow(hess_rho_inf, 2.5);
  out.full = 1.0 + std::pow(grad_rho_inf, 5.0) + out.reduced;
  return out;
}

BlowupIntegrand blowup_integrand(const State& s) {
  return blowup_integrand(grad(s.rho).max_norm(), jacobian_T(s.u).max_abs(), hessian(s.rho).max_abs());
}

double lifespan_lower_bound(double n1, double grad_rho_b1, double K) {
  if (!(K > 0.0)) throw std::invalid_argument("lifespan bound: K must be positive");
  if (!(n1 >= 0.0) || !(grad_rho_b1 >= 0.0)) throw std::invalid_argument("lifespan bound: norms must be >= 0");
  if (grad_rho_b1 == 0.0) return std::numeric_limits<double>::infinity();
  const double c = K / std::pow(1.0 + n1, 3);
  double z = 1.0 / grad_rho_b1;
  for (int i = 0; i < 4; ++i) z = std::log1p(c * z);
  return K / (1.0 + n1) * z;
}

double lifespan_lower_bound(const ScalarField& omega0, const ScalarField& rho0, double K, const DyadicCutoffs& cutoffs) {
  const BesovIndex b1{1.0, Lebesgue::infinity, 1.0};
  const double n1 = besov_norm(omega0, b1, cutoffs) + besov_norm(laplacian(log_density(rho0)), b1, cutoffs);
  return lifespan_lower_bound(n1, besov_norm(grad(rho0), b1, cutoffs), K);
}

double stability_distance(const State& a, const State& b) {
  require_same_grid(a.rho.grid(), b.rho.grid());
  return (a.rho - b.rho).l2_norm() + (a.u - b.u).l2_norm() + (a.w_eff - b.w_eff).l2_norm();
}

std::vector<double> b0_norm_history(const std::vector<ScalarField>& history, const DyadicCutoffs& cutoffs) {
  const BesovIndex b0{0.0, Lebesgue::infinity, 1.0};
  std::vector<double> out;
  out.reserve(history.size());
  for (const auto& f : history) out.push_back(besov_norm(f, b0, cutoffs));
  return out;
}

DoublingTime doubling_time(const std::vector<double>& times, const std::vector<double>& values) {
  if (times.size() != values.size()) throw std::invalid_argument("doubling_time: length mismatch");
  DoublingTime out;
  if (values.empty()) return out;
  const double target = 2.0 * values.front();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < target) continue;
    out.censored = false;
    if (i == 0) {
      out.t = times[0];
    } else {
      const double frac = (target - values[i - 1]) / (values[i] - values[i - 1]);
      out.t = times[i - 1] + frac * (times[i] - times[i - 1]);
    }
    return out;
  }
  return out;
}

DiagnosticsRecord diagnose(const State& s, const ScalarField& pi0, const DyadicCutoffs& cutoffs,
                           const DiagnosticsOptions& opts) {
  DiagnosticsRecord r;
  r.t = s.t;
  r.kinetic_energy = kinetic_energy(s);
  r.rho_min = s.rho.min();
  r.rho_max = s.rho.max();
  r.u_L2 = s.u.l2_norm();
  r.grad_u_inf = jacobian_T(s.u).max_abs();
  r.hess_rho_inf = hessian(s.rho).max_abs();
  r.div_u_inf = divergence(s.u).max_abs();
  r.div_w_inf = divergence(s.w_eff).max_abs();
  r.compat_inf = compatibility_residual(s);

  const ScalarField omega = curl2d(s.u);
  const ScalarField zeta = curl2d(s.w_eff);
  const LPDecomposition lo = decompose(omega, cutoffs);
  const LPDecomposition lz = decompose(zeta, cutoffs);
  const double base = r.u_L2 + s.rho.max_abs();
  auto energy = [&](double sigma, double rr) {
    const BesovIndex idx{sigma - 1.0, Lebesgue::infinity, rr};
    return base + besov_norm(lo, idx) + besov_norm(lz, idx);
  };
  r.E_s = energy(opts.besov_s, opts.besov_r);
  r.E_lower = energy(1.0, 1.0);
  r.H_upper = energy(2.0, 1.0);
  r.A_t = blowup_integrand(grad(s.rho).max_norm(), r.grad_u_inf, r.hess_rho_inf).full;

  const VectorField gp = grad(pi0);
  r.grad_pi0_L2 = gp.l2_norm();
  r.grad_pi0_inf = gp.max_norm();
  return r;
}

double vorticity_residual(const ScalarField& omega0, const ScalarField& omega1, double dt, const ScalarField& r0,
                          const ScalarField& r1) {
  ScalarField rate = omega1 - omega0;
  rate *= 1.0 / dt;
  ScalarField res = rate;
  res.add_scaled(-0.5, r0);
  res.add_scaled(-0.5, r1);
  const double scale = std::max({r0.max_abs(), r1.max_abs(), rate.max_abs()});
  return scale > 0.0 ? res.max_abs() / scale : res.max_abs();
}

namespace {

ScalarField pi0_for(const State& s, const SolverConfig& cfg) {
  return solve_pi0(s.rho, s.u, s.w_eff, cfg.elliptic).field;
}

}  // namespace

Trajectory run(const SolverConfig& cfg, State initial, const MonitorOptions& opts, const RecordObserver& observer) {
  const DyadicCutoffs cutoffs(initial.grid_ptr());
  Trajectory traj{RunResult{Outcome::running, initial, 0, {}}, {}, {}, 0.0};
  std::optional<State> previous;
  double next_sample = initial.t;
  double e0 = 0.0;

  auto record = [&](const State& s, const ScalarField& pi0, double vres) {
    DiagnosticsRecord rec = diagnose(s, pi0, cutoffs, opts.diagnostics);
    rec.vorticity_residual = vres;
    if (!traj.records.empty()) {
      const DiagnosticsRecord& last = traj.records.back();
      traj.blowup_integral += 0.5 * (last.A_t + rec.A_t) * (rec.t - last.t);
    } else {
      e0 = rec.E_lower;
    }
    traj.records.push_back(rec);
    if (opts.keep_states) traj.states.push_back(s);
    if (observer) observer(s, rec);
    return rec;
  };

  const double t_tol = 1e-12 * std::max(1.0, cfg.t_end);
  auto observe = [&](const State& s, const StepResult* step) -> bool {
    const bool last = s.t >= cfg.t_end - t_tol;
    const bool due = step == nullptr || last || opts.sample_every <= 0.0 || s.t >= next_sample - t_tol;
    bool keep_going = true;
    if (due) {
      const ScalarField pi0 = pi0_for(s, cfg);
      double vres = std::numeric_limits<double>::quiet_NaN();
      if (step != nullptr && previous) {
        const ScalarField pi0_start = cfg.formulation == Formulation::elsasser ? step->pressure_start
                                                                               : pi0_for(*previous, cfg);
        vres = vorticity_residual(curl2d(previous->u), curl2d(s.u), step->dt, vorticity_tendency(*previous, pi0_start),
                                  vorticity_tendency(s, pi0));
      }
      const DiagnosticsRecord rec = record(s, pi0, vres);
      if (opts.sample_every > 0.0) {
        while (next_sample <= s.t + t_tol) next_sample += opts.sample_every;
      }
      if (opts.stop_ratio > 0.0 && rec.E_lower >= opts.stop_ratio * e0) keep_going = false;
    }
    previous = s;
    return keep_going;
  };

  traj.run = integrate(cfg, std::move(initial), observe);
  // A failed run still reports its last valid state.
  if (traj.run.outcome != Outcome::completed && !traj.records.empty() &&
      traj.records.back().t < traj.run.final_state.t) {
    try {
      record(traj.run.final_state, pi0_for(traj.run.final_state, cfg), std::numeric_limits<double>::quiet_NaN());
    } catch (const std::exception&) {
    }
  }
  return traj;
}

}  // namespace oddflow
