// Serial reference kernels against their OpenMP counterparts, plus one full
// right-hand-side evaluation under each execution setting.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "oddflow/dynamics.hpp"
#include "oddflow/kernels.hpp"
#include "oddflow/scenarios.hpp"

using namespace oddflow;
namespace k = oddflow::kernels;

namespace {

std::vector<double> noise(std::size_t len, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(len);
  for (double& x : v) x = dist(gen);
  return v;
}

template <bool Parallel>
void bm_multiply(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = noise(n * n, 1), b = noise(n * n, 2);
  std::vector<double> out(n * n);
  for (auto _ : st) {
    if constexpr (Parallel) k::parallel::multiply(a, b, out);
    else k::serial::multiply(a, b, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void bm_dot(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = noise(n * n, 3), b = noise(n * n, 4);
  for (auto _ : st) {
    double r = Parallel ? k::parallel::dot(a, b, n) : k::serial::dot(a, b, n);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void bm_derivative(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const std::size_t nx = n / 2 + 1;
  const auto re = noise(nx * n, 5);
  std::vector<k::Complex> in(nx * n), out(nx * n);
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = {re[i], -re[i]};
  std::vector<double> wave(n);
  for (std::size_t j = 0; j < n; ++j) wave[j] = static_cast<double>(j < n / 2 ? j : 0);
  for (auto _ : st) {
    if constexpr (Parallel) k::parallel::derivative(in, wave, nx, 1, out);
    else k::serial::derivative(in, wave, nx, 1, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_rhs(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const k::Execution saved = k::execution();
  k::set_execution(st.range(1) != 0 ? k::Execution::parallel : k::Execution::serial);
  const State s = random_state(Grid::create(n), 1, 0.1);
  for (auto _ : st) {
    Tendency t = rhs(s, Formulation::elsasser);
    benchmark::DoNotOptimize(&t);
  }
  k::set_execution(saved);
}

}  // namespace

BENCHMARK(bm_multiply<false>)->Arg(128)->Arg(512);
BENCHMARK(bm_multiply<true>)->Arg(128)->Arg(512);
BENCHMARK(bm_dot<false>)->Arg(128)->Arg(512);
BENCHMARK(bm_dot<true>)->Arg(128)->Arg(512);
BENCHMARK(bm_derivative<false>)->Arg(128)->Arg(512);
BENCHMARK(bm_derivative<true>)->Arg(128)->Arg(512);
BENCHMARK(bm_rhs)->ArgNames({"n", "parallel"})->Args({128, 0})->Args({128, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
