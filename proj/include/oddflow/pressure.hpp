#pragma once

// Variable-coefficient pressure problems -div(a grad p) = b on the torus.
//
// The solver is preconditioned conjugate gradients in spectral space, on the
// subspace of retained, zero-mean modes. The operator is applied as
// -div(dealias(a grad p)), which is symmetric and positive definite there,
// and the preconditioner is (mean a)^-1 (-laplacian)^-1.

#include <optional>
#include <stdexcept>

#include "oddflow/physics.hpp"

namespace oddflow {

struct EllipticOptions {
  double rtol = 1e-10;
  /// Right sides with RMS norm below this are treated as zero.
  double atol = 1e-14;
  int max_iters = 500;
};

struct EllipticSolveReport {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

class EllipticFailure : public std::runtime_error {
 public:
  EllipticFailure(const std::string& what, EllipticSolveReport report)
      : std::runtime_error(what), report_(report) {}
  const EllipticSolveReport& report() const { return report_; }

 private:
  EllipticSolveReport report_;
};

struct PressureSolution {
  ScalarField field;
  EllipticSolveReport report;
};

/// -div(dealias(a grad p)).
ScalarField apply_elliptic(const ScalarField& a, const ScalarField& p);

/// Zero-mean p with -div(a grad p) = b (b is projected to zero mean and the
/// retained modes first). Throws EllipticFailure without convergence.
PressureSolution solve_elliptic(const ScalarField& a, const ScalarField& b, const EllipticOptions& opts = {},
                                const ScalarField* initial_guess = nullptr);

/// div(u . grad W_eff)
ScalarField pi0_rhs(const VectorField& u, const VectorField& w_eff);

/// -div((1/rho) grad Pi0) = div(u . grad W_eff).
PressureSolution solve_pi0(const ScalarField& rho, const VectorField& u, const VectorField& w_eff,
                           const EllipticOptions& opts = {});

/// -div((1/rho) grad Pi) = div(u . grad u + (1/rho) odd_tensor_divergence), so that
/// the original momentum equation keeps div u = 0.
PressureSolution solve_pi_original(const ScalarField& rho, const VectorField& u, double nu0,
                                   const EllipticOptions& opts = {});

/// max-norm residual of -lap Pi0 = -grad log rho . grad Pi0 + rho (grad u : grad W_eff).
double pi0_laplacian_identity_residual(const ScalarField& rho, const VectorField& u, const VectorField& w_eff,
                                       const ScalarField& pi0);

struct DerivedFields {
  ScalarField omega;
  ScalarField zeta_eff;
  ScalarField pi0;
  /// Pi = Pi0 + nu0 rho omega, less its mean.
  ScalarField pi;
  /// Pi~ = Pi0 + 2 nu0 rho omega, less its mean.
  ScalarField pi_tilde;
  EllipticSolveReport report;
};

DerivedFields derive_fields(const State& s, const EllipticOptions& opts = {});

}  // namespace oddflow
