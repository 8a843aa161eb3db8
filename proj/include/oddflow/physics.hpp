#pragma once

// The dynamical state (rho, u, W_eff) and the algebra of the odd-viscosity
// system: effective velocity, the odd stress divergence in its two forms,
// and the source terms of the vorticity pair (omega, zeta_eff).

#include <stdexcept>

#include "oddflow/field.hpp"

namespace oddflow {

inline constexpr double kDefaultDensityFloor = 1e-6;

/// Raised when min rho drops to the floor or the density stops being finite.
class DensityError : public std::domain_error {
 public:
  DensityError(const std::string& what, double rho_min) : std::domain_error(what), rho_min_(rho_min) {}
  double rho_min() const { return rho_min_; }

 private:
  double rho_min_;
};

struct State {
  double t = 0.0;
  ScalarField rho;
  VectorField u;
  VectorField w_eff;
  double nu0 = 1.0;

  const GridPtr& grid_ptr() const { return rho.grid_ptr(); }
};

void require_positive_density(const ScalarField& rho, double floor = kDefaultDensityFloor);

/// Pointwise log rho and 1/rho, truncated to the retained modes.
ScalarField log_density(const ScalarField& rho);
ScalarField inverse_density(const ScalarField& rho);

/// W_eff = u - 2 nu0 perp_grad(log rho).
VectorField effective_velocity(const ScalarField& rho, const VectorField& u, double nu0);

/// State with W_eff derived from (rho, u). nu0 must be nonzero.
State make_state(ScalarField rho, VectorField u, double nu0, double t = 0.0);

/// || W_eff - u + 2 nu0 perp_grad(log rho) ||_inf
double compatibility_residual(const State& s);

/// nu0 div(rho (grad u^perp + grad^perp u)).
VectorField odd_tensor_divergence(const ScalarField& rho, const VectorField& u, double nu0);
/// 2 nu0 div(rho grad u^perp) + nu0 grad(rho omega); equals the above for div-free u.
VectorField odd_tensor_divergence_split(const ScalarField& rho, const VectorField& u, double nu0);

/// max-norm residual of 2 nu0 div(rho A u) = -nu0 perp_grad(rho omega), A u = (Du - grad u) / 2.
double skew_part_identity_residual(const ScalarField& rho, const VectorField& u, double nu0);

/// L(grad f, grad g) = d1 f1 (d1 g2 + d2 g1) + d2 g2 (d1 f2 + d2 f1).
/// Both arguments in jacobian_T layout; dealiased.
ScalarField operator_l(const MatrixField& grad_f, const MatrixField& grad_g);
/// B(grad u, hess a) = d1 u1 (d11 a - d22 a) + d12 a (d1 u2 + d2 u1); dealiased.
ScalarField operator_b(const MatrixField& grad_u, const MatrixField& hess_alpha);

struct VorticitySources {
  ScalarField f;  // perp_grad(1/rho) . grad Pi0
  ScalarField g;  // B(grad u, hess log rho)
};

VorticitySources vorticity_sources(const State& s, const ScalarField& pi0);

/// Right side of the omega equation as the discrete Elsasser system produces it:
/// d_t omega = -W_eff . grad omega - F - 2 nu0 G.
ScalarField vorticity_tendency(const State& s, const ScalarField& pi0);

}  // namespace oddflow
