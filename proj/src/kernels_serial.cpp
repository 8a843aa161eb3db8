#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "oddflow/kernels.hpp"

namespace oddflow::kernels::serial {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void dot2(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
          std::span<const double> b2, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a1[i] * b1[i] + a2[i] * b2[i];
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
  for (double& v : x) v *= alpha;
}

void derivative(std::span<const Complex> in, std::span<const double> k, std::size_t nx, int axis,
                std::span<Complex> out) {
  const std::size_t rows = in.size() / nx;
  for (std::size_t j = 0; j < rows; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t idx = i + nx * j;
      const double m = axis == 0 ? k[i] : k[j];
      out[idx] = Complex(-m * in[idx].imag(), m * in[idx].real());
    }
  }
}

void apply_mask(std::span<const unsigned char> mask, std::span<Complex> data) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!mask[i]) data[i] = Complex(0.0, 0.0);
  }
}

void apply_weights(std::span<const double> w, std::span<Complex> data) {
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= w[i];
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double min_value(std::span<const double> x) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : x) m = std::min(m, v);
  return m;
}

double max_value(std::span<const double> x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  return m;
}

double sum(std::span<const double> x, std::size_t row) {
  const std::size_t rows = x.size() / row;
  std::vector<double> partial(rows, 0.0);
  for (std::size_t j = 0; j < rows; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < row; ++i) s += x[i + row * j];
    partial[j] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double dot(std::span<const double> x, std::span<const double> y, std::size_t row) {
  const std::size_t rows = x.size() / row;
  std::vector<double> partial(rows, 0.0);
  for (std::size_t j = 0; j < rows; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < row; ++i) s += x[i + row * j] * y[i + row * j];
    partial[j] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace oddflow::kernels::serial
