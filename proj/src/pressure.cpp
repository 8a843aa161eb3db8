#include "oddflow/pressure.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "oddflow/kernels.hpp"
#include "oddflow/spectral.hpp"

namespace oddflow {

namespace {

// Spectral-space CG workspace. Vectors hold half-spectrum coefficients
// restricted to retained modes with the (0,0) mode pinned to zero.
class SpectralCG {
 public:
  explicit SpectralCG(const ScalarField& a) : a_(a), grid_(a.grid_ptr()) {
    const Grid& g = *grid_;
    const std::size_t nx = g.spectral_nx();
    weight_.assign(g.spectral_size(), 0.0);
    precond_.assign(g.spectral_size(), 0.0);
    const double abar = a.mean();
    if (!(abar > 0.0)) throw std::invalid_argument("elliptic coefficient must have positive mean");
    const auto kx = g.kx();
    const auto ky = g.ky();
    for (std::size_t j = 0; j < g.n(); ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        const std::size_t idx = i + nx * j;
        const double k2 = kx[i] * kx[i] + ky[j] * ky[j];
        if (!g.retained(idx) || k2 == 0.0) continue;
        // Parseval: interior columns of the half spectrum stand for two modes.
        weight_[idx] = (i == 0 || i == g.n() / 2) ? 1.0 : 2.0;
        precond_[idx] = 1.0 / (abar * k2);
      }
    }
  }

  double inner(const std::vector<Complex>& x, const std::vector<Complex>& y) const {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (weight_[i] != 0.0) s += weight_[i] * (x[i].real() * y[i].real() + x[i].imag() * y[i].imag());
    }
    return s;
  }

  void restrict_to_space(std::vector<Complex>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (weight_[i] == 0.0) x[i] = 0.0;
    }
  }

  std::vector<Complex> apply(const std::vector<Complex>& p) const {
    Spectrum ps(grid_);
    ps.modes = p;
    ScalarField flux_x = product(a_, fft_inverse(derivative(ps, 0)));
    ScalarField flux_y = product(a_, fft_inverse(derivative(ps, 1)));
    Spectrum dx = derivative(fft_forward(flux_x), 0);
    Spectrum dy = derivative(fft_forward(flux_y), 1);
    std::vector<Complex> out(p.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -(dx.modes[i] + dy.modes[i]);
    restrict_to_space(out);
    return out;
  }

  std::vector<Complex> precondition(const std::vector<Complex>& r) const {
    std::vector<Complex> z(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) z[i] = precond_[i] * r[i];
    return z;
  }

 private:
  const ScalarField& a_;
  GridPtr grid_;
  std::vector<double> weight_;
  std::vector<double> precond_;
};

void axpy(double alpha, const std::vector<Complex>& x, std::vector<Complex>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

ScalarField zero_mean(ScalarField f) {
  const double m = f.mean();
  for (double& v : f.values()) v -= m;
  return f;
}

}  // namespace

ScalarField apply_elliptic(const ScalarField& a, const ScalarField& p) {
  require_same_grid(a.grid(), p.grid());
  return -divergence(product(a, grad(p)));
}

PressureSolution solve_elliptic(const ScalarField& a, const ScalarField& b, const EllipticOptions& opts,
                                const ScalarField* initial_guess) {
  require_same_grid(a.grid(), b.grid());
  SpectralCG cg(a);
  std::vector<Complex> rhs = fft_forward(b).modes;
  cg.restrict_to_space(rhs);

  PressureSolution sol{ScalarField(a.grid_ptr()), EllipticSolveReport{}};
  const double n2 = static_cast<double>(a.grid().size());
  const double bnorm = std::sqrt(cg.inner(rhs, rhs));
  // RMS norm of the right side in physical space is bnorm / n^2.
  if (bnorm / n2 <= opts.atol) {
    sol.report.converged = true;
    return sol;
  }

  std::vector<Complex> x(rhs.size(), Complex(0.0));
  if (initial_guess != nullptr) {
    require_same_grid(a.grid(), initial_guess->grid());
    x = fft_forward(*initial_guess).modes;
    cg.restrict_to_space(x);
  }

  const double target = opts.rtol * bnorm;
  int iters = 0;
  double rel = 1.0;
  // Outer loop restarts from the true residual so the reported value is never
  // just the recurrence estimate.
  while (true) {
    std::vector<Complex> r = rhs;
    axpy(-1.0, cg.apply(x), r);
    double rnorm = std::sqrt(cg.inner(r, r));
    rel = rnorm / bnorm;
    if (rnorm <= target || iters >= opts.max_iters) break;
    const int iters_before = iters;

    std::vector<Complex> z = cg.precondition(r);
    std::vector<Complex> p = z;
    double rz = cg.inner(r, z);
    while (iters < opts.max_iters) {
      const std::vector<Complex> ap = cg.apply(p);
      const double pap = cg.inner(p, ap);
      if (!(pap > 0.0)) break;
      const double alpha = rz / pap;
      axpy(alpha, p, x);
      axpy(-alpha, ap, r);
      ++iters;
      rnorm = std::sqrt(cg.inner(r, r));
      if (rnorm <= 0.5 * target) break;
      z = cg.precondition(r);
      const double rz_new = cg.inner(r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    }
    if (iters == iters_before) break;
  }

  sol.report.iterations = iters;
  sol.report.relative_residual = rel;
  sol.report.converged = rel <= opts.rtol;
  if (!sol.report.converged) {
    throw EllipticFailure("elliptic solve stalled at relative residual " + std::to_string(rel) + " after " +
                              std::to_string(iters) + " iterations",
                          sol.report);
  }
  Spectrum xs(a.grid_ptr());
  xs.modes = std::move(x);
  sol.field = fft_inverse(xs);
  return sol;
}

ScalarField pi0_rhs(const VectorField& u, const VectorField& w_eff) { return divergence(advect(u, w_eff)); }

PressureSolution solve_pi0(const ScalarField& rho, const VectorField& u, const VectorField& w_eff,
                           const EllipticOptions& opts) {
  return solve_elliptic(inverse_density(rho), pi0_rhs(u, w_eff), opts);
}

PressureSolution solve_pi_original(const ScalarField& rho, const VectorField& u, double nu0,
                                   const EllipticOptions& opts) {
  const ScalarField a = inverse_density(rho);
  VectorField forcing = advect(u, u);
  forcing += product(a, odd_tensor_divergence(rho, u, nu0));
  return solve_elliptic(a, divergence(forcing), opts);
}

double pi0_laplacian_identity_residual(const ScalarField& rho, const VectorField& u, const VectorField& w_eff,
                                       const ScalarField& pi0) {
  ScalarField lhs = -laplacian(pi0);
  ScalarField rhs = -dot(grad(log_density(rho)), grad(pi0));
  rhs += product(rho, double_contraction(jacobian_T(u), jacobian_T(w_eff)));
  return (lhs - rhs).max_abs();
}

DerivedFields derive_fields(const State& s, const EllipticOptions& opts) {
  PressureSolution p0 = solve_pi0(s.rho, s.u, s.w_eff, opts);
  ScalarField omega = curl2d(s.u);
  ScalarField zeta = curl2d(s.w_eff);
  const ScalarField rho_omega = product(s.rho, omega);
  ScalarField pi = p0.field;
  pi.add_scaled(s.nu0, rho_omega);
  ScalarField pi_tilde = p0.field;
  pi_tilde.add_scaled(2.0 * s.nu0, rho_omega);
  return DerivedFields{std::move(omega), std::move(zeta), std::move(p0.field), zero_mean(std::move(pi)),
                       zero_mean(std::move(pi_tilde)), p0.report};
}

}  // namespace oddflow
