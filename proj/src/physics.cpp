#include "oddflow/physics.hpp"

#include <cmath>
#include <string>

#include "oddflow/kernels.hpp"
#include "oddflow/spectral.hpp"

namespace oddflow {

namespace {

ScalarField pointwise(const ScalarField& f, double (*op)(double)) {
  ScalarField out(f.grid_ptr());
  const auto in = f.values();
  auto o = out.values();
  for (std::size_t i = 0; i < in.size(); ++i) o[i] = op(in[i]);
  return out;
}

double reciprocal(double x) { return 1.0 / x; }
double natural_log(double x) { return std::log(x); }

// a * b accumulated into out without dealiasing; the caller truncates once.
void accumulate_product(double sign, const ScalarField& a, const ScalarField& b, ScalarField& out, ScalarField& scratch) {
  kernels::multiply(a.values(), b.values(), scratch.values());
  out.add_scaled(sign, scratch);
}

}  // namespace

void require_positive_density(const ScalarField& rho, double floor) {
  const double lo = rho.min();
  if (!rho.all_finite() || !(lo > floor)) {
    throw DensityError("density minimum " + std::to_string(lo) + " at or below floor " + std::to_string(floor), lo);
  }
}

ScalarField log_density(const ScalarField& rho) {
  require_positive_density(rho);
  return dealias(pointwise(rho, natural_log));
}

ScalarField inverse_density(const ScalarField& rho) {
  require_positive_density(rho);
  return dealias(pointwise(rho, reciprocal));
}

VectorField effective_velocity(const ScalarField& rho, const VectorField& u, double nu0) {
  VectorField w = u;
  w.add_scaled(-2.0 * nu0, perp_grad(log_density(rho)));
  return w;
}

State make_state(ScalarField rho, VectorField u, double nu0, double t) {
  if (nu0 == 0.0 || !std::isfinite(nu0)) throw std::invalid_argument("nu0 must be finite and nonzero");
  VectorField w = effective_velocity(rho, u, nu0);
  return State{t, std::move(rho), std::move(u), std::move(w), nu0};
}

double compatibility_residual(const State& s) {
  VectorField r = s.w_eff - s.u;
  r.add_scaled(2.0 * s.nu0, perp_grad(log_density(s.rho)));
  return r.max_abs();
}

VectorField odd_tensor_divergence(const ScalarField& rho, const VectorField& u, double nu0) {
  MatrixField m = jacobian_T(u.perp());
  m += perp_jacobian_T(u);
  VectorField out = matrix_divergence(m, rho);
  out *= nu0;
  return out;
}

VectorField odd_tensor_divergence_split(const ScalarField& rho, const VectorField& u, double nu0) {
  VectorField out = matrix_divergence(jacobian_T(u.perp()), rho);
  out *= 2.0 * nu0;
  out.add_scaled(nu0, grad(product(rho, curl2d(u))));
  return out;
}

double skew_part_identity_residual(const ScalarField& rho, const VectorField& u, double nu0) {
  // 2 nu0 div(rho A u) with 2 A u = Du - grad u.
  VectorField lhs = matrix_divergence(jacobian(u) - jacobian_T(u), rho);
  lhs *= nu0;
  VectorField rhs = perp_grad(product(rho, curl2d(u)));
  rhs *= -nu0;
  return (lhs - rhs).max_abs();
}

ScalarField operator_l(const MatrixField& grad_f, const MatrixField& grad_g) {
  // jacobian_T layout: (j, i) = d_j v_i.
  const ScalarField& d1f1 = grad_f(0, 0);
  const ScalarField& d1f2 = grad_f(0, 1);
  const ScalarField& d2f1 = grad_f(1, 0);
  const ScalarField& d1g2 = grad_g(0, 1);
  const ScalarField& d2g1 = grad_g(1, 0);
  const ScalarField& d2g2 = grad_g(1, 1);
  ScalarField out(grad_f.grid_ptr());
  ScalarField scratch(grad_f.grid_ptr());
  accumulate_product(1.0, d1f1, d1g2 + d2g1, out, scratch);
  accumulate_product(1.0, d2g2, d1f2 + d2f1, out, scratch);
  return dealias(out);
}

ScalarField operator_b(const MatrixField& grad_u, const MatrixField& hess_alpha) {
  ScalarField out(grad_u.grid_ptr());
  ScalarField scratch(grad_u.grid_ptr());
  accumulate_product(1.0, grad_u(0, 0), hess_alpha(0, 0) - hess_alpha(1, 1), out, scratch);
  accumulate_product(1.0, hess_alpha(0, 1), grad_u(0, 1) + grad_u(1, 0), out, scratch);
  return dealias(out);
}

VorticitySources vorticity_sources(const State& s, const ScalarField& pi0) {
  ScalarField f = dot(perp_grad(inverse_density(s.rho)), grad(pi0));
  ScalarField g = operator_b(jacobian_T(s.u), hessian(log_density(s.rho)));
  return VorticitySources{std::move(f), std::move(g)};
}

ScalarField vorticity_tendency(const State& s, const ScalarField& pi0) {
  const VorticitySources src = vorticity_sources(s, pi0);
  ScalarField out = -advect(s.w_eff, curl2d(s.u));
  out -= src.f;
  out.add_scaled(-2.0 * s.nu0, src.g);
  return out;
}

}  // namespace oddflow
