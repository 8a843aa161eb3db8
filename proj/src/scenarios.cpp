#include "oddflow/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oddflow/spectral.hpp"

namespace oddflow {

namespace {

// Gaussian coefficients on lattice modes 0 < |k| <= cutoff, weighted by |k|^slope.
// The half spectrum is filled in a fixed order, so the result depends only on
// the seed and the lattice, and the inverse transform takes care of Hermitian symmetry.
Spectrum random_spectrum(const GridPtr& grid, std::mt19937_64& rng, double slope, double cutoff) {
  const Grid& g = *grid;
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum s(grid);
  const std::size_t nx = g.spectral_nx();
  for (std::size_t j = 0; j < g.n(); ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      const double k = std::hypot(static_cast<double>(g.k1(i)), static_cast<double>(g.k2(j)));
      const std::size_t idx = i + nx * j;
      if (k == 0.0 || k > cutoff || !g.retained(idx)) continue;
      s.modes[idx] = std::pow(k, slope) * Complex(re, im);
    }
  }
  return s;
}

}  // namespace

void ScenarioSpec::validate() const {
  if (family != "taylor_green" && family != "shear_layer" && family != "random_divfree" && family != "density_bump") {
    throw std::invalid_argument("unknown scenario family '" + family + "'");
  }
  if (!(epsilon >= 0.0 && epsilon <= 0.9)) throw std::invalid_argument("epsilon must lie in [0, 0.9]");
  if (!std::isfinite(amplitude)) throw std::invalid_argument("amplitude must be finite");
  if (!(cutoff >= 1.0)) throw std::invalid_argument("cutoff must be >= 1");
  if (!(shear_width > 0.0)) throw std::invalid_argument("shear_width must be positive");
}

VectorField taylor_green(const GridPtr& grid, double amplitude) {
  const double c = 2.0 * std::numbers::pi / grid->length();
  return VectorField(
      ScalarField::sample(grid, [=](double x, double y) { return amplitude * std::sin(c * x) * std::cos(c * y); }),
      ScalarField::sample(grid, [=](double x, double y) { return -amplitude * std::cos(c * x) * std::sin(c * y); }));
}

ScalarField density_bump(const GridPtr& grid, double epsilon, int m1, int m2) {
  const double c = 2.0 * std::numbers::pi / grid->length();
  return ScalarField::sample(grid, [=](double x, double y) { return 1.0 + epsilon * std::cos(m1 * c * x) * std::cos(m2 * c * y); });
}

VectorField shear_layer(const GridPtr& grid, double amplitude, double width_fraction) {
  const double L = grid->length();
  const double delta = width_fraction * L;
  const double c = 2.0 * std::numbers::pi / L;
  VectorField u(
      ScalarField::sample(grid, [=](double, double y) {
        const double v = y <= 0.5 * L ? std::tanh((y - 0.25 * L) / delta) : std::tanh((0.75 * L - y) / delta);
        return amplitude * v;
      }),
      ScalarField::sample(grid, [=](double x, double) { return 0.05 * amplitude * std::sin(c * x); }));
  return leray_project(dealias(u));
}

VectorField random_divfree(const GridPtr& grid, std::uint64_t seed, double slope, double cutoff, double l2_norm) {
  std::mt19937_64 rng(seed);
  VectorField u(fft_inverse(random_spectrum(grid, rng, slope, cutoff)),
                fft_inverse(random_spectrum(grid, rng, slope, cutoff)));
  u = leray_project(u);
  const double norm = u.l2_norm();
  if (norm > 0.0) u *= l2_norm / norm;
  return u;
}

ScalarField random_scalar(const GridPtr& grid, std::uint64_t seed, double slope, double cutoff) {
  std::mt19937_64 rng(seed);
  ScalarField f = fft_inverse(random_spectrum(grid, rng, slope, cutoff));
  const double m = f.max_abs();
  if (m > 0.0) f *= 1.0 / m;
  return f;
}

State random_state(const GridPtr& grid, std::uint64_t seed, double nu0, double rho_amplitude, double cutoff,
                   double rho_cutoff) {
  ScalarField rho(grid, 1.0);
  rho.add_scaled(rho_amplitude, random_scalar(grid, seed ^ 0x9e3779b97f4a7c15ULL, -1.0, rho_cutoff));
  return make_state(std::move(rho), random_divfree(grid, seed, -1.0, cutoff, 1.0), nu0);
}

State build_initial_state(const GridPtr& grid, const ScenarioSpec& spec, double nu0) {
  spec.validate();
  ScalarField rho = density_bump(grid, spec.epsilon, spec.m1, spec.m2);
  VectorField u(grid);
  if (spec.family == "taylor_green") {
    u = taylor_green(grid, spec.amplitude);
  } else if (spec.family == "shear_layer") {
    u = shear_layer(grid, spec.amplitude, spec.shear_width);
  } else if (spec.family == "random_divfree") {
    u = random_divfree(grid, spec.seed, spec.slope, spec.cutoff, spec.amplitude);
  }
  return make_state(std::move(rho), std::move(u), nu0);
}

}  // namespace oddflow
