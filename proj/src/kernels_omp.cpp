#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "oddflow/kernels.hpp"

namespace oddflow::kernels::parallel {

namespace {
using index_t = std::int64_t;
index_t ssize(std::size_t n) { return static_cast<index_t>(n); }
}  // namespace

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const index_t n = ssize(out.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void dot2(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
          std::span<const double> b2, std::span<double> out) {
  const index_t n = ssize(out.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) out[i] = a1[i] * b1[i] + a2[i] * b2[i];
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const index_t n = ssize(y.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
  const index_t n = ssize(x.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) x[i] *= alpha;
}

void derivative(std::span<const Complex> in, std::span<const double> k, std::size_t nx, int axis,
                std::span<Complex> out) {
  const index_t rows = ssize(in.size() / nx);
#pragma omp parallel for schedule(static)
  for (index_t j = 0; j < rows; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t idx = i + nx * static_cast<std::size_t>(j);
      const double m = axis == 0 ? k[i] : k[j];
      out[idx] = Complex(-m * in[idx].imag(), m * in[idx].real());
    }
  }
}

void apply_mask(std::span<const unsigned char> mask, std::span<Complex> data) {
  const index_t n = ssize(data.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) {
    if (!mask[i]) data[i] = Complex(0.0, 0.0);
  }
}

void apply_weights(std::span<const double> w, std::span<Complex> data) {
  const index_t n = ssize(data.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) data[i] *= w[i];
}

double max_abs(std::span<const double> x) {
  const index_t n = ssize(x.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (index_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

double min_value(std::span<const double> x) {
  const index_t n = ssize(x.size());
  double m = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : m)
  for (index_t i = 0; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

double max_value(std::span<const double> x) {
  const index_t n = ssize(x.size());
  double m = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(max : m)
  for (index_t i = 0; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double sum(std::span<const double> x, std::size_t row) {
  const index_t rows = ssize(x.size() / row);
  std::vector<double> partial(static_cast<std::size_t>(rows), 0.0);
#pragma omp parallel for schedule(static)
  for (index_t j = 0; j < rows; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < row; ++i) s += x[i + row * static_cast<std::size_t>(j)];
    partial[static_cast<std::size_t>(j)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double dot(std::span<const double> x, std::span<const double> y, std::size_t row) {
  const index_t rows = ssize(x.size() / row);
  std::vector<double> partial(static_cast<std::size_t>(rows), 0.0);
#pragma omp parallel for schedule(static)
  for (index_t j = 0; j < rows; ++j) {
    double s = 0.0;
    const std::size_t base = row * static_cast<std::size_t>(j);
    for (std::size_t i = 0; i < row; ++i) s += x[base + i] * y[base + i];
    partial[static_cast<std::size_t>(j)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace oddflow::kernels::parallel
