#include <doctest.h>

#include "oddflow/diagnostics.hpp"
#include "oddflow/experiments.hpp"
#include "oddflow/scenarios.hpp"
#include "oddflow/spectral.hpp"
#include "test_util.hpp"

using namespace oddflow;
using testutil::pi;

TEST_CASE("energy functional") {
  auto g = Grid::create(64);
  const DyadicCutoffs cut(g);
  const State rest = make_state(ScalarField(g, 1.0), VectorField(g), 0.1);
  CHECK(energy_functional(rest, 1.0, 1.0, cut) == doctest::Approx(1.0));
  CHECK(energy_functional(rest, 2.0, BesovIndex::inf, cut) == doctest::Approx(1.0));

  // omega = 2 sin x sin y splits between blocks 0 and 1 with weights summing to 1.
  const State tg = make_state(ScalarField(g, 1.0), taylor_green(g), 0.1);
  CHECK(lower_energy(tg, cut) == doctest::Approx(pi * std::sqrt(2.0) + 5.0));
  CHECK(upper_energy(tg, cut) >= lower_energy(tg, cut));

  const State tg2 = make_state(ScalarField(g, 1.0), taylor_green(g, 2.0), 0.1);
  CHECK(lower_energy(tg2, cut) - 1.0 == doctest::Approx(2.0 * (lower_energy(tg, cut) - 1.0)));

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const State s = random_state(g, seed, 0.2);
    CHECK(upper_energy(s, cut) >= lower_energy(s, cut));
    CHECK(energy_functional(s, 1.0, 1.0, cut) == lower_energy(s, cut));
  }
}

TEST_CASE("blow-up integrand") {
  auto g = Grid::create(64);
  const State rest = make_state(ScalarField(g, 1.0), VectorField(g), 0.1);
  CHECK(blowup_integrand(rest).full == doctest::Approx(1.0));
  CHECK(blowup_integrand(rest).reduced == doctest::Approx(0.0));
  const State bump = make_state(density_bump(g, 0.1, 1, 0), VectorField(g), 0.1);
  CHECK(blowup_integrand(bump).full == doctest::Approx(1.0 + 1e-5 + std::pow(0.1, 2.5)).epsilon(1e-12));
  const BlowupIntegrand a = blowup_integrand(0.2, 0.3, 0.4);
  CHECK(blowup_integrand(0.25, 0.3, 0.4).full > a.full);
  CHECK(blowup_integrand(0.2, 0.35, 0.4).full > a.full);
  CHECK(blowup_integrand(0.2, 0.3, 0.45).reduced > a.reduced);
  CHECK(a.full >= 1.0);
}

TEST_CASE("lifespan lower bound") {
  CHECK(std::isinf(lifespan_lower_bound(1.0, 0.0, 1.0)));
  CHECK_THROWS_AS(lifespan_lower_bound(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lifespan_lower_bound(-1.0, 1.0, 1.0), std::invalid_argument);
  const double base = lifespan_lower_bound(2.0, 0.5, 1.0);
  CHECK(base > 0.0);
  CHECK(lifespan_lower_bound(2.0, 0.25, 1.0) > base);
  CHECK(lifespan_lower_bound(3.0, 0.5, 1.0) < base);
  CHECK(lifespan_lower_bound(2.0, 0.5, 2.0) >= base);
  // Four nested logarithms: the explicit formula.
  double z = 1.0 / 0.5;
  for (int i = 0; i < 4; ++i) z = std::log(1.0 + z / 27.0);
  CHECK(base == doctest::Approx(z / 3.0));

  auto g = Grid::create(64);
  const DyadicCutoffs cut(g);
  const ScalarField omega0 = curl2d(taylor_green(g));
  double prev = 0.0;
  for (double eps : {0.4, 0.2, 0.1, 0.05, 0.025}) {
    const double t = lifespan_lower_bound(omega0, density_bump(g, eps), 1.0, cut);
    CHECK(t > prev);
    prev = t;
  }
  CHECK(std::isinf(lifespan_lower_bound(omega0, ScalarField(g, 1.0), 1.0, cut)));
  // omega0 = 0 and rho0 -> 1: the bound passes a fixed cap once eps is small enough.
  // Four nested logarithms grow very slowly, so the cap is modest.
  const double cap = 0.8;
  CHECK(lifespan_lower_bound(ScalarField(g), density_bump(g, 0.1), 1.0, cut) < cap);
  CHECK(lifespan_lower_bound(ScalarField(g), density_bump(g, 1e-12), 1.0, cut) > cap);
}

TEST_CASE("stability distance and B0 history") {
  auto g = Grid::create(32);
  const DyadicCutoffs cut(g);
  const State a = random_state(g, 1, 0.1);
  CHECK(stability_distance(a, a) == 0.0);
  State b = a;
  const VectorField du = random_divfree(g, 9, -1.0, 5.0, 1.0);
  b.u += 1e-3 * du;
  State c = a;
  c.u += 2e-3 * du;
  CHECK(stability_distance(a, c) == doctest::Approx(2.0 * stability_distance(a, b)));

  const std::vector<double> h = b0_norm_history({ScalarField(g, 2.0), ScalarField(g, 2.0), ScalarField(g)}, cut);
  CHECK(h[0] == doctest::Approx(2.0));
  CHECK(h[1] == h[0]);
  CHECK(h[2] == 0.0);
}

TEST_CASE("doubling time") {
  CHECK(doubling_time({}, {}).censored);
  CHECK_THROWS_AS(doubling_time({0.0}, {1.0, 2.0}), std::invalid_argument);
  const DoublingTime d = doubling_time({0.0, 1.0, 2.0, 3.0}, {1.0, 1.5, 2.5, 4.0});
  CHECK_FALSE(d.censored);
  CHECK(d.t == doctest::Approx(1.5));
  const DoublingTime c = doubling_time({0.0, 1.0}, {1.0, 1.9});
  CHECK(c.censored);
  CHECK(std::isinf(c.t));
  CHECK(doubling_time({0.0, 1.0}, {1.0, 2.0}).t == doctest::Approx(1.0));
}

TEST_CASE("vorticity residual of exact data") {
  auto g = Grid::create(16);
  const ScalarField r0 = testutil::sample(g, [](double x, double) { return std::sin(x); });
  const ScalarField r1 = testutil::sample(g, [](double x, double) { return std::sin(x) + 0.2; });
  // omega1 - omega0 = dt (r0 + r1) / 2 exactly.
  const ScalarField w0 = testutil::sample(g, [](double, double y) { return std::cos(y); });
  ScalarField w1 = w0;
  w1.add_scaled(0.05, r0);
  w1.add_scaled(0.05, r1);
  CHECK(vorticity_residual(w0, w1, 0.1, r0, r1) < 1e-14);
  CHECK(vorticity_residual(w0, w0, 0.1, r0, r1) == doctest::Approx(1.1 / 1.2));
}

TEST_CASE("monitored run: cadence, records and stopping") {
  auto g = Grid::create(32);
  const State s0 = make_state(density_bump(g, 0.2), taylor_green(g), 0.05);
  SolverConfig c;
  c.t_end = 0.1;
  c.fixed_dt = 0.01;
  MonitorOptions opts;
  opts.sample_every = 0.05;
  opts.keep_states = true;
  int observed = 0;
  const Trajectory t = run(c, s0, opts, [&](const State&, const DiagnosticsRecord&) { ++observed; });
  CHECK(t.run.outcome == Outcome::completed);
  REQUIRE(t.records.size() == 3);
  CHECK(observed == 3);
  CHECK(t.states.size() == 3);
  CHECK(t.records[0].t == 0.0);
  CHECK(t.records[1].t == doctest::Approx(0.05));
  CHECK(t.records[2].t == doctest::Approx(0.1));
  CHECK(std::isnan(t.records[0].vorticity_residual));
  CHECK(t.records[2].vorticity_residual < 1e-4);
  CHECK(t.blowup_integral > 0.1 * 0.99);
  for (const auto& r : t.records) {
    CHECK(r.E_s == r.E_lower);
    CHECK(r.H_upper >= r.E_lower);
    CHECK(r.A_t >= 1.0);
    CHECK(r.div_u_inf < 1e-10);
  }
  CHECK(diagnostics_values(t.records[0]).size() == diagnostics_columns().size());

  opts.stop_ratio = 1.0 + 1e-12;  // any growth of E_lower stops the run
  opts.sample_every = 0.0;
  const Trajectory early = run(c, s0, opts);
  CHECK(early.run.final_state.t < 0.1);
}

TEST_CASE("lifespan monotonicity rule") {
  auto row = [](double eps, double t, bool censored = false) {
    LifespanStudyRow r;
    r.epsilon = eps;
    r.T_double = t;
    r.censored = censored;
    return r;
  };
  int inv = -1;
  CHECK(lifespan_monotone({row(0.4, 1.0), row(0.2, 1.5), row(0.1, 2.0), row(0.05, 3.0)}, 0.05, &inv));
  CHECK(inv == 0);
  CHECK(lifespan_monotone({row(0.4, 1.0), row(0.2, 1.5), row(0.1, 1.48), row(0.05, 3.0)}, 0.05, &inv));
  CHECK(inv == 1);
  CHECK_FALSE(lifespan_monotone({row(0.4, 1.0), row(0.2, 1.5), row(0.1, 1.2), row(0.05, 3.0)}, 0.05));
  CHECK_FALSE(lifespan_monotone({row(0.4, 2.0), row(0.2, 1.9), row(0.1, 1.8), row(0.05, 3.0)}, 0.5));
  CHECK(lifespan_monotone({row(0.4, 1.0), row(0.2, 1.5), row(0.1, 4.0, true), row(0.05, 4.0, true)}, 0.05));
  CHECK(lifespan_monotone({row(0.05, 3.0), row(0.4, 1.0), row(0.1, 2.0), row(0.2, 1.5)}, 0.05));
}
