#include <doctest.h>

#include "oddflow/physics.hpp"
#include "oddflow/pressure.hpp"
#include "oddflow/scenarios.hpp"
#include "oddflow/spectral.hpp"
#include "test_util.hpp"

using namespace oddflow;
using testutil::max_diff;
using testutil::sample;

TEST_CASE("Taylor-Green steady pressure at unit density") {
  auto g = Grid::create(64);
  const VectorField u = taylor_green(g);
  const PressureSolution p = solve_pi0(ScalarField(g, 1.0), u, u);
  CHECK(p.report.converged);
  const ScalarField expected = sample(g, [](double x, double y) { return 0.25 * (std::cos(2 * x) + std::cos(2 * y)); });
  CHECK(max_diff(p.field, expected) <= 1e-9);
  CHECK((advect(u, u) + grad(p.field)).max_abs() <= 1e-9);
}

TEST_CASE("zero flow gives zero pressure") {
  auto g = Grid::create(32);
  const ScalarField rho = density_bump(g, 0.3);
  const PressureSolution p = solve_pi0(rho, VectorField(g), VectorField(g));
  CHECK(p.field.max_abs() == 0.0);
  CHECK(p.report.converged);
  CHECK(p.report.iterations == 0);
  CHECK(solve_pi_original(rho, VectorField(g), 1.0).field.max_abs() == 0.0);
  CHECK(pi0_laplacian_identity_residual(rho, VectorField(g), VectorField(g), ScalarField(g)) == 0.0);
}

TEST_CASE("random resolved states: residual by re-application") {
  auto g = Grid::create(64);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const State s = random_state(g, seed, 0.5);
    const PressureSolution p = solve_pi0(s.rho, s.u, s.w_eff);
    CHECK(p.report.converged);
    CHECK(p.report.relative_residual <= 1e-10);
    CHECK(std::abs(p.field.mean()) < 1e-14);
    ScalarField b = pi0_rhs(s.u, s.w_eff);
    b.add_scaled(-b.mean(), ScalarField(g, 1.0));
    const ScalarField r = apply_elliptic(inverse_density(s.rho), p.field) - b;
    CHECK(r.l2_norm() <= 1e-10 * b.l2_norm());

    const PressureSolution swapped = solve_elliptic(inverse_density(s.rho), divergence(advect(s.w_eff, s.u)));
    CHECK(max_diff(swapped.field, p.field) <= 1e-9 * p.field.max_abs());
  }
}

TEST_CASE("Pi0 from the original pressure") {
  auto g = Grid::create(64);
  const EllipticOptions opts;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const State s = random_state(g, seed, 1.0);
    const PressureSolution p0 = solve_pi0(s.rho, s.u, s.w_eff, opts);
    const PressureSolution p = solve_pi_original(s.rho, s.u, s.nu0, opts);
    ScalarField shifted = p.field;
    shifted.add_scaled(-s.nu0, product(s.rho, curl2d(s.u)));
    const double scale = grad(p0.field).max_abs();
    CHECK((grad(shifted) - grad(p0.field)).max_abs() <= 10 * opts.rtol * scale);

    const DerivedFields d = derive_fields(s);
    ScalarField rw = product(s.rho, d.omega);
    rw.add_scaled(-rw.mean(), ScalarField(g, 1.0));
    CHECK(max_diff(d.pi - d.pi0, s.nu0 * rw) < 1e-13);
    CHECK(max_diff(d.pi_tilde - d.pi0, 2.0 * s.nu0 * rw) < 1e-13);
    CHECK(max_diff(d.zeta_eff, curl2d(s.w_eff)) == 0.0);
  }
}

TEST_CASE("Laplacian identity for Pi0") {
  auto g = Grid::create(64);
  const ScalarField one(g, 1.0);
  const VectorField u = random_divfree(g, 1, -1.0, 6.0, 1.0);
  const VectorField w = random_divfree(g, 2, -1.0, 6.0, 1.0);
  CHECK(pi0_laplacian_identity_residual(one, u, w, solve_pi0(one, u, w).field) <= 1e-9);
  // With variable density the residual is the truncation error of rho * dealias(1/rho) - 1.
  const State s = random_state(g, 3, 0.3, 0.1);
  CHECK(pi0_laplacian_identity_residual(s.rho, s.u, s.w_eff, solve_pi0(s.rho, s.u, s.w_eff).field) <= 1e-6);
}

TEST_CASE("density scaling and self-adjointness") {
  auto g = Grid::create(64);
  const State s = random_state(g, 11, 0.4);
  const ScalarField p = solve_pi0(s.rho, s.u, s.w_eff).field;
  const ScalarField pc = solve_pi0(2.5 * s.rho, s.u, s.w_eff).field;
  CHECK(max_diff(pc, 2.5 * p) <= 1e-9);

  const ScalarField a = inverse_density(s.rho);
  const ScalarField f = random_scalar(g, 1, -1.0, 21.0);
  const ScalarField h = random_scalar(g, 2, -1.0, 21.0);
  CHECK(std::abs(inner(apply_elliptic(a, f), h) - inner(f, apply_elliptic(a, h))) <= 1e-10);
  CHECK(inner(apply_elliptic(a, f), f) > 0.0);
}

TEST_CASE("CG iteration count is mesh robust") {
  auto count = [](std::size_t n) {
    auto g = Grid::create(n);
    const ScalarField rho = density_bump(g, 0.5, 1, 2);
    const VectorField u = taylor_green(g);
    return solve_pi0(rho, u, effective_velocity(rho, u, 1.0)).report.iterations;
  };
  const int coarse = count(64);
  const int fine = count(128);
  CHECK(coarse > 0);
  CHECK(fine <= 2 * coarse);
}

TEST_CASE("non-convergence is reported") {
  auto g = Grid::create(64);
  const ScalarField rho = density_bump(g, 0.8, 3, 2);
  const VectorField u = random_divfree(g, 4, -1.0, 8.0, 1.0);
  EllipticOptions opts;
  opts.rtol = 1e-15;
  opts.max_iters = 2;
  try {
    solve_pi0(rho, u, effective_velocity(rho, u, 1.0), opts);
    FAIL("expected EllipticFailure");
  } catch (const EllipticFailure& e) {
    CHECK_FALSE(e.report().converged);
    CHECK(e.report().iterations >= 2);
    CHECK(e.report().relative_residual > 1e-15);
  }
  CHECK_THROWS_AS(solve_pi0(ScalarField(g, 0.0), u, u), DensityError);
}
