#include <doctest.h>

#include <random>
#include <vector>

#include "oddflow/kernels.hpp"
#include "oddflow/spectral.hpp"
#include "test_util.hpp"

using namespace oddflow;
namespace kn = oddflow::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (auto& x : v) x = nd(rng);
  return v;
}

std::vector<kn::Complex> random_complex(std::size_t n, unsigned seed) {
  const auto re = random_vector(n, seed);
  const auto im = random_vector(n, seed + 1);
  std::vector<kn::Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
  return v;
}

struct ExecutionGuard {
  kn::Execution saved = kn::execution();
  ~ExecutionGuard() { kn::set_execution(saved); }
};

}  // namespace

TEST_CASE("parallel kernels match the serial reference bit for bit") {
  const std::size_t n = 128;
  const std::size_t size = n * n;
  const auto a = random_vector(size, 1);
  const auto b = random_vector(size, 2);
  const auto c = random_vector(size, 3);
  const auto d = random_vector(size, 4);

  std::vector<double> s(size), p(size);
  kn::serial::multiply(a, b, s);
  kn::parallel::multiply(a, b, p);
  CHECK(s == p);

  kn::serial::dot2(a, b, c, d, s);
  kn::parallel::dot2(a, b, c, d, p);
  CHECK(s == p);

  s = c;
  p = c;
  kn::serial::axpy(0.37, a, s);
  kn::parallel::axpy(0.37, a, p);
  CHECK(s == p);
  kn::serial::scale(-1.7, s);
  kn::parallel::scale(-1.7, p);
  CHECK(s == p);

  CHECK(kn::serial::max_abs(a) == kn::parallel::max_abs(a));
  CHECK(kn::serial::min_value(a) == kn::parallel::min_value(a));
  CHECK(kn::serial::max_value(a) == kn::parallel::max_value(a));
  CHECK(kn::serial::sum(a, n) == kn::parallel::sum(a, n));
  CHECK(kn::serial::dot(a, b, n) == kn::parallel::dot(a, b, n));

  auto g = Grid::create(n);
  const auto spec = random_complex(g->spectral_size(), 9);
  std::vector<kn::Complex> cs(spec.size()), cp(spec.size());
  for (int axis : {0, 1}) {
    kn::serial::derivative(spec, axis == 0 ? g->kx() : g->ky(), g->spectral_nx(), axis, cs);
    kn::parallel::derivative(spec, axis == 0 ? g->kx() : g->ky(), g->spectral_nx(), axis, cp);
    CHECK(cs == cp);
  }
  cs = spec;
  cp = spec;
  kn::serial::apply_mask(g->dealias_mask(), cs);
  kn::parallel::apply_mask(g->dealias_mask(), cp);
  CHECK(cs == cp);
  const auto w = random_vector(spec.size(), 11);
  kn::serial::apply_weights(w, cs);
  kn::parallel::apply_weights(w, cp);
  CHECK(cs == cp);
}

TEST_CASE("operators give identical results under either execution mode") {
  ExecutionGuard guard;
  auto g = Grid::create(64);
  const ScalarField f = testutil::sample(g, [](double x, double y) { return std::sin(3 * x) * std::cos(y) + 0.2 * x; });
  const VectorField v = leray_project(VectorField(f, testutil::sample(g, [](double x, double y) {
                                                    return std::cos(2 * x + y);
                                                  })));
  kn::set_execution(kn::Execution::serial);
  const ScalarField a1 = advect(v, f);
  const double m1 = a1.max_abs();
  const double l1 = a1.l2_norm();
  kn::set_execution(kn::Execution::parallel);
  const ScalarField a2 = advect(v, f);
  CHECK(a1.values()[0] == a2.values()[0]);
  CHECK((a1 - a2).max_abs() == 0.0);
  CHECK(m1 == a2.max_abs());
  CHECK(l1 == a2.l2_norm());
}

TEST_CASE("derivative kernel zeroes the Nyquist mode") {
  auto g = Grid::create(16);
  std::vector<kn::Complex> in(g->spectral_size(), kn::Complex(1.0, 0.0));
  std::vector<kn::Complex> out(in.size());
  kn::derivative(in, g->kx(), g->spectral_nx(), 0, out);
  for (std::size_t j = 0; j < g->n(); ++j) CHECK(out[8 + g->spectral_nx() * j] == kn::Complex(0.0, 0.0));
  CHECK(out[3] == kn::Complex(0.0, 3.0));
}
