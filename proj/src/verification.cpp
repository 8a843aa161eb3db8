#include "oddflow/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oddflow/kernels.hpp"
#include "oddflow/spectral.hpp"

namespace oddflow {

namespace {

double max_of(std::initializer_list<double> v) { return std::max(v); }

double block_weight(int j, double xi) {
  return j < 0 ? DyadicCutoffs::chi(xi) : DyadicCutoffs::phi(std::ldexp(xi, -j));
}

ScalarField zero_mean(ScalarField f) {
  const double m = f.mean();
  for (double& v : f.values()) v -= m;
  return f;
}

}  // namespace

CheckResult check_at_most(std::string name, double value, double tolerance) {
  return CheckResult{std::move(name), value, tolerance, value <= tolerance};
}

double IdentityResiduals::worst() const {
  return max_of({o_diff, odd_split, skew_part, b_equals_l, l_skew, div_uw, zeta, f_commutator});
}

IdentityResiduals identity_residuals(const State& s, const ScalarField& pi0) {
  IdentityResiduals r;
  const ScalarField omega = curl2d(s.u);

  MatrixField o = perp_jacobian_T(s.u) - jacobian_T(s.u.perp());
  o(0, 0) -= omega;
  o(1, 1) -= omega;
  r.o_diff = o.max_abs();

  r.odd_split = (odd_tensor_divergence(s.rho, s.u, s.nu0) - odd_tensor_divergence_split(s.rho, s.u, s.nu0)).max_abs();
  r.skew_part = skew_part_identity_residual(s.rho, s.u, s.nu0);

  const ScalarField alpha = log_density(s.rho);
  const MatrixField grad_u = jacobian_T(s.u);
  const MatrixField grad_w = jacobian_T(s.w_eff);
  r.b_equals_l = (operator_b(grad_u, hessian(alpha)) - operator_l(grad_u, jacobian_T(perp_grad(alpha)))).max_abs();
  r.l_skew = (operator_l(grad_u, grad_w) + operator_l(grad_w, grad_u)).max_abs();

  const ScalarField d1 = divergence(advect(s.u, s.w_eff));
  const ScalarField d2 = double_contraction(grad_u, grad_w);
  const ScalarField d3 = divergence(advect(s.w_eff, s.u));
  r.div_uw = max_of({(d1 - d2).max_abs(), (d2 - d3).max_abs(), (d1 - d3).max_abs()});

  ScalarField zeta_expected = omega;
  zeta_expected.add_scaled(-2.0 * s.nu0, laplacian(alpha));
  r.zeta = (curl2d(s.w_eff) - zeta_expected).max_abs();

  const ScalarField a = inverse_density(s.rho);
  r.f_commutator = (dot(perp_grad(a), grad(pi0)) - curl2d(product(a, grad(pi0)))).max_abs();
  return r;
}

LittlewoodPaleyReport littlewood_paley_report(const GridPtr& grid, int corpus, std::uint64_t seed) {
  const DyadicCutoffs cut(grid);
  LittlewoodPaleyReport rep;
  rep.corpus_size = corpus;
  rep.partition = cut.partition_residual();
  rep.bernstein_min = std::numeric_limits<double>::infinity();
  const double full_cutoff = static_cast<double>(grid->n()) / 3.0;

  for (int c = 0; c < corpus; ++c) {
    // Alternate between broadband and steep spectra so both ends of each annulus get weight.
    const double slope = (c % 2 == 0) ? -1.0 : 0.0;
    const ScalarField f = random_scalar(grid, seed + 2 * static_cast<std::uint64_t>(c), slope, full_cutoff);
    const ScalarField g = random_scalar(grid, seed + 2 * static_cast<std::uint64_t>(c) + 1, -1.5, full_cutoff);

    const LPDecomposition lp = decompose(f, cut);
    rep.reconstruction = std::max(rep.reconstruction, (lp.sum() - f).max_abs());

    const BonyDecomposition b = bony_decompose(f, g, cut);
    rep.bony = std::max(rep.bony, (b.paraproduct_fg + b.paraproduct_gf + b.remainder - product(f, g)).max_abs());

    // Delta_k Delta_j composed on the spectrum, so disjoint annuli give exact zeros.
    const Spectrum fh = fft_forward(f);
    for (int j = -1; j <= cut.j_max(); ++j) {
      for (int k = j + 2; k <= cut.j_max(); ++k) {
        Spectrum jk = fh;
        kernels::apply_weights(cut.weights(j), jk.modes);
        kernels::apply_weights(cut.weights(k), jk.modes);
        rep.quasi_orthogonality = std::max(rep.quasi_orthogonality, fft_inverse(jk).max_abs());
      }
    }

    for (int j = 0; j <= cut.j_max(); ++j) {
      if (lp.block(j).max_abs() <= 1e-12 * f.max_abs()) continue;
      const BernsteinRatio br = bernstein_ratio(f, j, cut);
      if (br.degenerate) continue;
      rep.bernstein_min = std::min(rep.bernstein_min, br.ratio);
      rep.bernstein_max = std::max(rep.bernstein_max, br.ratio);
    }
  }
  rep.bernstein_constant = std::max(rep.bernstein_max, 1.0 / rep.bernstein_min);

  // Constant transport field: the commutator vanishes.
  const ScalarField f = random_scalar(grid, seed + 1000, -1.0, full_cutoff);
  const VectorField v(ScalarField(grid, 0.7), ScalarField(grid, -1.3));
  for (int j = -1; j <= cut.j_max(); ++j) {
    rep.commutator_constant_field = std::max(rep.commutator_constant_field, transport_commutator(v, f, j, cut).max_abs());
  }

  // Taylor-Green transport of cos(7x) in closed form: the commutator only
  // moves weight between |xi| = 7 and the product modes |xi| = sqrt(37), sqrt(65).
  if (grid->n() >= 32) {
    const double c = 2.0 * std::numbers::pi / grid->length();
    const VectorField tg = taylor_green(grid);
    const ScalarField f7 = ScalarField::sample(grid, [=](double x, double) { return std::cos(7 * c * x); });
    for (int j = -1; j <= cut.j_max(); ++j) {
      const double w7 = block_weight(j, 7 * c);
      const double w37 = block_weight(j, std::sqrt(37.0) * c);
      const double w65 = block_weight(j, std::sqrt(65.0) * c);
      const ScalarField expected = ScalarField::sample(grid, [=](double x, double y) {
        return -3.5 * c * (w7 - w37) * std::cos(6 * c * x) * std::cos(c * y) +
               3.5 * c * (w7 - w65) * std::cos(8 * c * x) * std::cos(c * y);
      });
      rep.commutator_two_path =
          std::max(rep.commutator_two_path, (transport_commutator(tg, f7, j, cut) - expected).max_abs());
    }
  }
  return rep;
}

EllipticReport elliptic_report(std::size_t n, int states, std::uint64_t seed, double rtol) {
  const GridPtr grid = Grid::create(n);
  const EllipticOptions opts{rtol, 1e-14, 500};
  EllipticReport rep;

  for (int k = 0; k < states; ++k) {
    const State s = random_state(grid, seed + static_cast<std::uint64_t>(k), 1.0);
    const ScalarField a = inverse_density(s.rho);
    const ScalarField rhs = zero_mean(pi0_rhs(s.u, s.w_eff));
    const PressureSolution p0 = solve_pi0(s.rho, s.u, s.w_eff, opts);
    rep.solve_residual = std::max(rep.solve_residual, (apply_elliptic(a, p0.field) - rhs).l2_norm() / rhs.l2_norm());
    rep.laplacian_identity_random =
        std::max(rep.laplacian_identity_random, pi0_laplacian_identity_residual(s.rho, s.u, s.w_eff, p0.field));
    {
      // At unit density the identity is exact in the discrete setting.
      const ScalarField one(grid, 1.0);
      const VectorField w = random_divfree(grid, seed + 300 + static_cast<std::uint64_t>(k), -1.0, 5.0, 1.0);
      const PressureSolution q = solve_pi0(one, s.u, w, opts);
      rep.laplacian_identity =
          std::max(rep.laplacian_identity, pi0_laplacian_identity_residual(one, s.u, w, q.field));
    }

    const PressureSolution p = solve_pi_original(s.rho, s.u, s.nu0, opts);
    ScalarField shifted = p.field;
    shifted.add_scaled(-s.nu0, product(s.rho, curl2d(s.u)));
    rep.pressure_consistency = std::max(rep.pressure_consistency, (grad(shifted) - grad(p0.field)).max_abs());

    const double c = 2.5;
    const PressureSolution scaled = solve_pi0(c * s.rho, s.u, s.w_eff, opts);
    rep.density_scaling = std::max(rep.density_scaling, (scaled.field - c * p0.field).max_abs());

    const PressureSolution swapped = solve_elliptic(a, divergence(advect(s.w_eff, s.u)), opts);
    rep.symmetric_rhs = std::max(rep.symmetric_rhs, (swapped.field - p0.field).max_abs());

    // Self-adjointness on random zero-mean, resolved f and g.
    const ScalarField f = random_scalar(grid, seed + 500 + static_cast<std::uint64_t>(k), -1.0, n / 3.0);
    const ScalarField g = random_scalar(grid, seed + 900 + static_cast<std::uint64_t>(k), -1.0, n / 3.0);
    const double lhs = inner(apply_elliptic(a, f), g);
    const double rhs_ip = inner(f, apply_elliptic(a, g));
    rep.self_adjointness = std::max(rep.self_adjointness, std::abs(lhs - rhs_ip));
  }

  // Steady Euler pressure of Taylor-Green at unit density.
  {
    const VectorField u = taylor_green(grid);
    const ScalarField rho(grid, 1.0);
    const PressureSolution p0 = solve_pi0(rho, u, u, opts);
    const ScalarField expected =
        ScalarField::sample(grid, [](double x, double y) { return 0.25 * (std::cos(2 * x) + std::cos(2 * y)); });
    rep.taylor_green_error = (p0.field - expected).max_abs();
    rep.taylor_green_momentum = (advect(u, u) + grad(p0.field)).max_abs();
  }

  // Mesh robustness: same smooth density and flow at n and 2n.
  auto iterations = [&](std::size_t m) {
    const GridPtr g = Grid::create(m);
    const ScalarField rho = density_bump(g, 0.5, 1, 2);
    const VectorField u = taylor_green(g);
    return solve_pi0(rho, u, effective_velocity(rho, u, 1.0), opts).report.iterations;
  };
  rep.iterations_coarse = iterations(n);
  rep.iterations_fine = iterations(2 * n);
  return rep;
}

double formulation_rhs_gap(const State& s, const EllipticOptions& opts) {
  const VectorField a = leray_project(rhs_original(s, opts).u);
  const VectorField b = leray_project(rhs_elsasser(s, opts).u);
  return (a - b).max_abs();
}

std::vector<CheckResult> verification_suite(std::size_t n, double nu0, int random_states, std::uint64_t seed) {
  const GridPtr grid = Grid::create(n);
  std::vector<CheckResult> out;

  {
    const ScalarField f = random_scalar(grid, seed, 0.0, static_cast<double>(n));
    out.push_back(check_at_most("fft round trip", (fft_inverse(fft_forward(f)) - f).max_abs(), 1e-12));
    const VectorField v = random_divfree(grid, seed, -1.0, n / 3.0, 1.0);
    out.push_back(check_at_most("leray idempotent", (leray_project(leray_project(v)) - v).max_abs(), 1e-12));
  }

  IdentityResiduals worst;
  double gap = 0.0;
  for (int k = 0; k < random_states; ++k) {
    const State s = random_state(grid, seed + static_cast<std::uint64_t>(k), nu0);
    const IdentityResiduals r = identity_residuals(s, solve_pi0(s.rho, s.u, s.w_eff).field);
    worst.o_diff = std::max(worst.o_diff, r.o_diff);
    worst.odd_split = std::max(worst.odd_split, r.odd_split);
    worst.skew_part = std::max(worst.skew_part, r.skew_part);
    worst.b_equals_l = std::max(worst.b_equals_l, r.b_equals_l);
    worst.l_skew = std::max(worst.l_skew, r.l_skew);
    worst.div_uw = std::max(worst.div_uw, r.div_uw);
    worst.zeta = std::max(worst.zeta, r.zeta);
    worst.f_commutator = std::max(worst.f_commutator, r.f_commutator);
    gap = std::max(gap, formulation_rhs_gap(s));
  }
  out.push_back(check_at_most("grad-perp u - grad u-perp = omega Id", worst.o_diff, 1e-11));
  out.push_back(check_at_most("odd tensor split form", worst.odd_split, 1e-10));
  out.push_back(check_at_most("skew part identity", worst.skew_part, 1e-10));
  out.push_back(check_at_most("B = L(grad u, grad grad-perp a)", worst.b_equals_l, 1e-10));
  out.push_back(check_at_most("L skew-symmetry", worst.l_skew, 1e-11));
  out.push_back(check_at_most("div(u.grad W) = grad u : grad W = div(W.grad u)", worst.div_uw, 1e-10));
  out.push_back(check_at_most("zeta = omega - 2 nu0 lap log rho", worst.zeta, 1e-10));
  out.push_back(check_at_most("F commutator form", worst.f_commutator, 1e-10));
  out.push_back(check_at_most("original vs Elsasser du/dt", gap, 1e-8));

  const LittlewoodPaleyReport lp = littlewood_paley_report(grid, 10, seed);
  out.push_back(check_at_most("LP partition of unity", lp.partition, 1e-12));
  out.push_back(check_at_most("LP reconstruction", lp.reconstruction, 1e-11));
  out.push_back(check_at_most("Bony sum identity", lp.bony, 1e-10));
  out.push_back(check_at_most("LP quasi-orthogonality", lp.quasi_orthogonality, 0.0));
  out.push_back(check_at_most("Bernstein constant", lp.bernstein_constant, 8.0));
  out.push_back(check_at_most("commutator, constant field", lp.commutator_constant_field, 1e-12));
  out.push_back(check_at_most("commutator, closed form", lp.commutator_two_path, 1e-11));

  const EllipticReport el = elliptic_report(n, std::max(1, random_states / 2), seed);
  out.push_back(check_at_most("Pi0 solve residual", el.solve_residual, 1e-10));
  out.push_back(check_at_most("Taylor-Green pressure", el.taylor_green_error, 1e-9));
  out.push_back(check_at_most("Pi0 laplacian identity", el.laplacian_identity, 1e-9));
  out.push_back(check_at_most("elliptic self-adjointness", el.self_adjointness, 1e-10));
  out.push_back(check_at_most("Pi - nu0 rho omega = Pi0", el.pressure_consistency, 1e-8));
  out.push_back(check_at_most("Pi0(c rho) = c Pi0(rho)", el.density_scaling, 1e-9));
  out.push_back(check_at_most("CG iterations 2n / n", static_cast<double>(el.iterations_fine) /
                                                          std::max(1, el.iterations_coarse), 2.0));
  return out;
}

}  // namespace oddflow
