#include "oddflow/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oddflow {

namespace {

// The FFTW planner is not thread-safe; execution with new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

std::shared_ptr<const Grid> Grid::create(std::size_t n, double length) {
  if (n < 8 || !is_power_of_two(n)) {
    throw std::invalid_argument("grid size must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument("grid length must be positive and finite");
  }
  return std::shared_ptr<const Grid>(new Grid(n, length));
}

Grid::Grid(std::size_t n, double length)
    : n_(n), length_(length), scale_(2.0 * std::numbers::pi / length) {
  const std::size_t nxh = spectral_nx();
  kx_.resize(nxh);
  ky_.resize(n_);
  for (std::size_t i = 0; i < nxh; ++i) {
    kx_[i] = (i == n_ / 2) ? 0.0 : scale_ * static_cast<double>(k1(i));
  }
  for (std::size_t j = 0; j < n_; ++j) {
    ky_[j] = (j == n_ / 2) ? 0.0 : scale_ * static_cast<double>(k2(j));
  }

  kmag_.resize(spectral_size());
  mask_.resize(spectral_size());
  for (std::size_t j = 0; j < n_; ++j) {
    const long b = k2(j);
    for (std::size_t i = 0; i < nxh; ++i) {
      const long a = k1(i);
      const std::size_t idx = i + nxh * j;
      kmag_[idx] = scale_ * std::hypot(static_cast<double>(a), static_cast<double>(b));
      const long m = std::max(std::labs(a), std::labs(b));
      mask_[idx] = (3 * static_cast<std::size_t>(m) <= n_) ? 1 : 0;
      if (mask_[idx]) k_max_ = std::max(k_max_, kmag_[idx]);
    }
  }

  std::vector<double> real(size());
  std::vector<Complex> spec(spectral_size());
  const int ni = static_cast<int>(n_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_r2c_2d(ni, ni, real.data(), reinterpret_cast<fftw_complex*>(spec.data()),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
  inverse_plan_ = fftw_plan_dft_c2r_2d(ni, ni, reinterpret_cast<fftw_complex*>(spec.data()), real.data(),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
    throw std::runtime_error("FFTW planning failed");
  }
}

Grid::~Grid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void Grid::forward(std::span<const double> in, std::span<Complex> out) const {
  if (in.size() != size() || out.size() != spectral_size()) {
    throw std::invalid_argument("Grid::forward: size mismatch");
  }
  // r2c preserves its input by default.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void Grid::inverse(std::span<const Complex> in, std::span<double> out) const {
  if (in.size() != spectral_size() || out.size() != size()) {
    throw std::invalid_argument("Grid::inverse: size mismatch");
  }
  // c2r destroys its input.
  std::vector<Complex> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
  const double norm = 1.0 / static_cast<double>(size());
  for (double& v : out) v *= norm;
}

}  // namespace oddflow
