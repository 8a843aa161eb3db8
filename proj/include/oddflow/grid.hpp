#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace oddflow {

using Complex = std::complex<double>;

/// Uniform periodic n x n grid on [0, L)^2 together with its FFT plans.
///
/// Physical values are stored row-major with x varying fastest:
/// index = ix + n * iy. Spectral coefficients use the real-to-complex
/// half layout: index = i + (n/2 + 1) * j with i = k1 in [0, n/2] and
/// j in [0, n) mapping to k2 = j (j <= n/2) or j - n.
///
/// FFT convention: the forward transform is unnormalized, the inverse
/// divides by n^2, so a constant field 1 maps to the single coefficient n^2.
///
/// A Grid is immutable after construction and may be shared between threads.
class Grid {
 public:
  /// Throws std::invalid_argument unless n >= 8 is a power of two and L > 0.
  static std::shared_ptr<const Grid> create(std::size_t n, double length = 2.0 * 3.14159265358979323846);

  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  std::size_t n() const { return n_; }
  double length() const { return length_; }
  double dx() const { return length_ / static_cast<double>(n_); }
  std::size_t size() const { return n_ * n_; }
  std::size_t spectral_nx() const { return n_ / 2 + 1; }
  std::size_t spectral_size() const { return spectral_nx() * n_; }

  double x(std::size_t ix) const { return dx() * static_cast<double>(ix); }
  double y(std::size_t iy) const { return dx() * static_cast<double>(iy); }

  /// Integer wavenumbers of a spectral index.
  long k1(std::size_t i) const { return static_cast<long>(i); }
  long k2(std::size_t j) const {
    return j <= n_ / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n_);
  }

  /// Derivative multipliers (physical wavenumbers, Nyquist zeroed); d/dx = i * kx.
  std::span<const double> kx() const { return kx_; }
  std::span<const double> ky() const { return ky_; }
  /// Physical wavenumber magnitude |xi| per spectral index (Nyquist not zeroed).
  std::span<const double> wavenumber_magnitude() const { return kmag_; }
  /// 2/3-rule mask: max(|k1|,|k2|) <= n/3 in integer units.
  std::span<const unsigned char> dealias_mask() const { return mask_; }
  bool retained(std::size_t idx) const { return mask_[idx] != 0; }

  /// Largest |xi| among retained modes.
  double k_max() const { return k_max_; }
  /// Scale 2 pi / L between integer and physical wavenumbers.
  double wavenumber_scale() const { return scale_; }

  void forward(std::span<const double> in, std::span<Complex> out) const;
  /// `in` is left untouched.
  void inverse(std::span<const Complex> in, std::span<double> out) const;

 private:
  Grid(std::size_t n, double length);

  std::size_t n_;
  double length_;
  double scale_;
  double k_max_ = 0.0;
  std::vector<double> kx_;
  std::vector<double> ky_;
  std::vector<double> kmag_;
  std::vector<unsigned char> mask_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace oddflow
