#pragma once

// Invariant checks shared by `oddflow verify` and the acceptance program.
// Each helper returns raw residuals; callers decide tolerances and reporting.

#include <cstdint>
#include <string>
#include <vector>

#include "oddflow/diagnostics.hpp"
#include "oddflow/scenarios.hpp"

namespace oddflow {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// value <= tolerance (NaN fails).
CheckResult check_at_most(std::string name, double value, double tolerance);

/// Max-norm residuals of the algebraic identities on one state (u, W_eff must be div-free).
struct IdentityResiduals {
  double o_diff = 0.0;        // perp_jacobian_T(u) - jacobian_T(u^perp) - omega Id
  double odd_split = 0.0;     // odd tensor divergence vs its split form
  double skew_part = 0.0;     // 2 nu0 div(rho A u) + nu0 perp_grad(rho omega)
  double b_equals_l = 0.0;    // B(grad u, hess a) - L(grad u, grad perp_grad a), a = log rho
  double l_skew = 0.0;        // L(grad u, grad W) + L(grad W, grad u)
  double div_uw = 0.0;        // div(u.grad W), grad u : grad W, div(W.grad u) pairwise
  double zeta = 0.0;          // curl W - (omega - 2 nu0 lap log rho)
  double f_commutator = 0.0;  // perp_grad(1/rho).grad Pi0 - curl((1/rho) grad Pi0)

  double worst() const;
};

IdentityResiduals identity_residuals(const State& s, const ScalarField& pi0);

struct LittlewoodPaleyReport {
  double partition = 0.0;
  double reconstruction = 0.0;
  double bony = 0.0;
  double quasi_orthogonality = 0.0;
  /// Smallest C with ratio in [1/C, C] over every nonzero annulus block of the corpus.
  double bernstein_constant = 0.0;
  double bernstein_min = 0.0;
  double bernstein_max = 0.0;
  double commutator_constant_field = 0.0;
  double commutator_two_path = 0.0;
  int corpus_size = 0;
};

/// Random corpus of `corpus` fields on an n x n grid.
LittlewoodPaleyReport littlewood_paley_report(const GridPtr& grid, int corpus, std::uint64_t seed = 1);

struct EllipticReport {
  double solve_residual = 0.0;        // independent re-application, relative 2-norm
  double taylor_green_error = 0.0;    // vs +1/4 (cos 2x + cos 2y)
  double taylor_green_momentum = 0.0; // || u.grad u + grad Pi0 ||_inf
  double laplacian_identity = 0.0;         // unit density, random u and W
  double laplacian_identity_random = 0.0;  // random density; reported only
  double self_adjointness = 0.0;
  double pressure_consistency = 0.0;  // || grad(Pi - nu0 rho omega) - grad Pi0 ||_inf
  double density_scaling = 0.0;       // || Pi0(c rho) - c Pi0(rho) ||_inf
  double symmetric_rhs = 0.0;         // Pi0 from div(u.grad W) vs div(W.grad u)
  int iterations_coarse = 0;
  int iterations_fine = 0;
};

EllipticReport elliptic_report(std::size_t n, int states, std::uint64_t seed = 7, double rtol = 1e-10);

/// Leray-projected du/dt of the two formulations on one admissible state, max norm.
double formulation_rhs_gap(const State& s, const EllipticOptions& opts = {});

/// The full table printed by `oddflow verify`.
std::vector<CheckResult> verification_suite(std::size_t n, double nu0, int random_states, std::uint64_t seed);

}  // namespace oddflow
