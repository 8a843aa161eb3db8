#include <doctest.h>

#include <random>

#include "oddflow/spectral.hpp"
#include "test_util.hpp"

using namespace oddflow;
using testutil::pi;

TEST_CASE("grid rejects bad sizes") {
  CHECK_THROWS_AS(Grid::create(0), std::invalid_argument);
  CHECK_THROWS_AS(Grid::create(4), std::invalid_argument);
  CHECK_THROWS_AS(Grid::create(48), std::invalid_argument);
  CHECK_THROWS_AS(Grid::create(32, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid::create(32, -1.0), std::invalid_argument);
  CHECK_NOTHROW(Grid::create(8));
}

TEST_CASE("grid geometry and spectral layout") {
  auto g = Grid::create(32, 4.0);
  CHECK(g->size() == 1024);
  CHECK(g->spectral_nx() == 17);
  CHECK(g->dx() == doctest::Approx(0.125));
  CHECK(g->wavenumber_scale() == doctest::Approx(pi / 2));
  CHECK(g->k2(0) == 0);
  CHECK(g->k2(16) == 16);
  CHECK(g->k2(17) == -15);
  CHECK(g->k2(31) == -1);
}

TEST_CASE("dealias mask follows the two-thirds rule") {
  auto g = Grid::create(64);
  double kmax = 0.0;
  for (std::size_t j = 0; j < g->n(); ++j) {
    for (std::size_t i = 0; i < g->spectral_nx(); ++i) {
      const std::size_t idx = i + g->spectral_nx() * j;
      const long m = std::max(std::labs(g->k1(i)), std::labs(g->k2(j)));
      CHECK(g->retained(idx) == (3 * m <= 64));
      if (g->retained(idx)) kmax = std::max(kmax, g->wavenumber_magnitude()[idx]);
    }
  }
  CHECK(g->k_max() == doctest::Approx(kmax));
  CHECK(g->k_max() == doctest::Approx(21.0 * std::sqrt(2.0)));
}

TEST_CASE("constant field maps to n^2 at the zero mode") {
  auto g = Grid::create(16);
  const Spectrum s = fft_forward(ScalarField(g, 1.0));
  CHECK(s.modes[0].real() == doctest::Approx(256.0));
  for (std::size_t k = 1; k < s.size(); ++k) CHECK(std::abs(s.modes[k]) < 1e-12);
}

TEST_CASE("cos x occupies the (1,0) mode with weight n^2/2") {
  auto g = Grid::create(32);
  const Spectrum s = fft_forward(testutil::sample(g, [](double x, double) { return std::cos(x); }));
  CHECK(s.modes[1].real() == doctest::Approx(512.0));
  CHECK(std::abs(s.modes[1].imag()) < 1e-10);
  double rest = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k != 1) rest = std::max(rest, std::abs(s.modes[k]));
  }
  CHECK(rest < 1e-10);

  // cos y sits at k2 = +1 and its conjugate k2 = -1 in the half spectrum.
  const Spectrum sy = fft_forward(testutil::sample(g, [](double, double y) { return std::cos(y); }));
  CHECK(sy.modes[g->spectral_nx() * 1].real() == doctest::Approx(512.0));
  CHECK(sy.modes[g->spectral_nx() * 31].real() == doctest::Approx(512.0));
}

TEST_CASE("fft round trip on random data") {
  for (std::size_t n : {8u, 32u, 128u}) {
    auto g = Grid::create(n);
    std::mt19937_64 rng(n);
    std::normal_distribution<double> nd;
    ScalarField f(g);
    for (auto& v : f.values()) v = nd(rng);
    CHECK((fft_inverse(fft_forward(f)) - f).max_abs() <= 1e-12);
  }
}

TEST_CASE("Parseval: sum of squares matches spectral energy") {
  auto g = Grid::create(32);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ud(-1, 1);
  ScalarField f(g);
  for (auto& v : f.values()) v = ud(rng);
  const Spectrum s = fft_forward(f);
  double spec = 0.0;
  for (std::size_t j = 0; j < g->n(); ++j) {
    for (std::size_t i = 0; i < g->spectral_nx(); ++i) {
      const double w = (i == 0 || i == g->n() / 2) ? 1.0 : 2.0;
      spec += w * std::norm(s.modes[i + g->spectral_nx() * j]);
    }
  }
  double phys = 0.0;
  for (double v : f.values()) phys += v * v;
  CHECK(spec / (32.0 * 32.0) == doctest::Approx(phys).epsilon(1e-12));
}

TEST_CASE("field reductions") {
  auto g = Grid::create(16, 2.0);
  const ScalarField f = testutil::sample(g, [](double x, double y) { return 2.0 + std::sin(pi * x) * std::cos(pi * y); });
  CHECK(f.mean() == doctest::Approx(2.0));
  CHECK(f.integral() == doctest::Approx(8.0));
  CHECK(f.l2_norm() == doctest::Approx(std::sqrt(4.0 * 4.0 + 0.25 * 4.0)));
  CHECK(f.max() == doctest::Approx(3.0));
  CHECK(f.min() == doctest::Approx(1.0));
  CHECK(inner(f, ScalarField(g, 1.0)) == doctest::Approx(8.0));
}

TEST_CASE("fields on different grids do not mix") {
  auto a = Grid::create(16);
  auto b = Grid::create(32);
  ScalarField fa(a, 1.0);
  ScalarField fb(b, 1.0);
  CHECK_THROWS_AS(fa += fb, std::invalid_argument);
}
