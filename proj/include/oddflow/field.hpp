#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "oddflow/grid.hpp"

namespace oddflow {

/// Real grid function. Value semantics; the grid is shared.
class ScalarField {
 public:
  explicit ScalarField(GridPtr grid);
  ScalarField(GridPtr grid, std::vector<double> values);
  ScalarField(GridPtr grid, double constant);

  /// Samples f(x, y) at the grid points.
  static ScalarField sample(GridPtr grid, const std::function<double(double, double)>& f);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double& operator()(std::size_t ix, std::size_t iy) { return values_[ix + grid_->n() * iy]; }
  double operator()(std::size_t ix, std::size_t iy) const { return values_[ix + grid_->n() * iy]; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double a);
  /// this += a * o
  ScalarField& add_scaled(double a, const ScalarField& o);

  double max_abs() const;
  double min() const;
  double max() const;
  double mean() const;
  /// Sum of values times the cell area (L/n)^2.
  double integral() const;
  /// sqrt of the (L/n)^2-weighted sum of squares.
  double l2_norm() const;
  bool all_finite() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator-(ScalarField a);

/// (L/n)^2-weighted inner product.
double inner(const ScalarField& a, const ScalarField& b);

/// Two components on one grid.
struct VectorField {
  ScalarField x;
  ScalarField y;

  explicit VectorField(GridPtr grid);
  VectorField(ScalarField x_, ScalarField y_);

  const Grid& grid() const { return x.grid(); }
  const GridPtr& grid_ptr() const { return x.grid_ptr(); }

  ScalarField& operator[](int c) { return c == 0 ? x : y; }
  const ScalarField& operator[](int c) const { return c == 0 ? x : y; }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double a);
  VectorField& add_scaled(double a, const VectorField& o);

  /// Rotation by pi/2: (v1, v2) -> (-v2, v1).
  VectorField perp() const;
  /// Max over grid points of the Euclidean magnitude.
  double max_norm() const;
  /// Max over grid points and components of |v_i|.
  double max_abs() const;
  double l2_norm() const;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// 2x2 matrix of grid functions, addressed as (row, col) with 0-based indices.
struct MatrixField {
  std::array<ScalarField, 4> entries;

  explicit MatrixField(GridPtr grid);

  ScalarField& operator()(int row, int col) { return entries[static_cast<std::size_t>(2 * row + col)]; }
  const ScalarField& operator()(int row, int col) const { return entries[static_cast<std::size_t>(2 * row + col)]; }
  const Grid& grid() const { return entries[0].grid(); }
  const GridPtr& grid_ptr() const { return entries[0].grid_ptr(); }

  MatrixField& operator+=(const MatrixField& o);
  MatrixField& operator-=(const MatrixField& o);
  MatrixField& operator*=(double a);
  /// Max over grid points and entries of |M_ij|.
  double max_abs() const;
};

MatrixField operator+(MatrixField a, const MatrixField& b);
MatrixField operator-(MatrixField a, const MatrixField& b);

/// Half-spectrum coefficients of a real field (layout documented on Grid).
struct Spectrum {
  GridPtr grid;
  std::vector<Complex> modes;

  explicit Spectrum(GridPtr g);
  std::size_t size() const { return modes.size(); }
};

void require_same_grid(const Grid& a, const Grid& b);

}  // namespace oddflow
