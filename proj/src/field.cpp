#include "oddflow/field.hpp"

#include <cmath>
#include <stdexcept>

#include "oddflow/kernels.hpp"

namespace oddflow {

void require_same_grid(const Grid& a, const Grid& b) {
  if (&a != &b && (a.n() != b.n() || a.length() != b.length())) {
    throw std::invalid_argument("fields live on different grids");
  }
}

ScalarField::ScalarField(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) throw std::invalid_argument("ScalarField: value count does not match grid");
}

ScalarField::ScalarField(GridPtr grid, double constant) : grid_(std::move(grid)), values_(grid_->size(), constant) {}

ScalarField ScalarField::sample(GridPtr grid, const std::function<double(double, double)>& f) {
  ScalarField out(grid);
  const std::size_t n = grid->n();
  for (std::size_t iy = 0; iy < n; ++iy) {
    for (std::size_t ix = 0; ix < n; ++ix) out(ix, iy) = f(grid->x(ix), grid->y(iy));
  }
  return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(*grid_, o.grid());
  kernels::axpy(1.0, o.values_, values_);
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(*grid_, o.grid());
  kernels::axpy(-1.0, o.values_, values_);
  return *this;
}

ScalarField& ScalarField::operator*=(double a) {
  kernels::scale(a, values_);
  return *this;
}

ScalarField& ScalarField::add_scaled(double a, const ScalarField& o) {
  require_same_grid(*grid_, o.grid());
  kernels::axpy(a, o.values_, values_);
  return *this;
}

double ScalarField::max_abs() const { return kernels::max_abs(values_); }
double ScalarField::min() const { return kernels::min_value(values_); }
double ScalarField::max() const { return kernels::max_value(values_); }
double ScalarField::mean() const { return kernels::sum(values_, grid_->n()) / static_cast<double>(values_.size()); }

double ScalarField::integral() const {
  const double h = grid_->dx();
  return kernels::sum(values_, grid_->n()) * h * h;
}

double ScalarField::l2_norm() const {
  const double h = grid_->dx();
  return std::sqrt(kernels::dot(values_, values_, grid_->n())) * h;
}

bool ScalarField::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }

double inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  const double h = a.grid().dx();
  return kernels::dot(a.values(), b.values(), a.grid().n()) * h * h;
}

VectorField::VectorField(GridPtr grid) : x(grid), y(grid) {}

VectorField::VectorField(ScalarField x_, ScalarField y_) : x(std::move(x_)), y(std::move(y_)) {
  require_same_grid(x.grid(), y.grid());
}

VectorField& VectorField::operator+=(const VectorField& o) {
  x += o.x;
  y += o.y;
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  x -= o.x;
  y -= o.y;
  return *this;
}

VectorField& VectorField::operator*=(double a) {
  x *= a;
  y *= a;
  return *this;
}

VectorField& VectorField::add_scaled(double a, const VectorField& o) {
  x.add_scaled(a, o.x);
  y.add_scaled(a, o.y);
  return *this;
}

VectorField VectorField::perp() const { return VectorField(-y, x); }

double VectorField::max_norm() const {
  double m = 0.0;
  const auto a = x.values();
  const auto b = y.values();
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::hypot(a[i], b[i]));
  return m;
}

double VectorField::max_abs() const { return std::max(x.max_abs(), y.max_abs()); }

double VectorField::l2_norm() const { return std::sqrt(inner(x, x) + inner(y, y)); }

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

MatrixField::MatrixField(GridPtr grid) : entries{ScalarField(grid), ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

MatrixField& MatrixField::operator+=(const MatrixField& o) {
  for (std::size_t i = 0; i < 4; ++i) entries[i] += o.entries[i];
  return *this;
}

MatrixField& MatrixField::operator-=(const MatrixField& o) {
  for (std::size_t i = 0; i < 4; ++i) entries[i] -= o.entries[i];
  return *this;
}

MatrixField& MatrixField::operator*=(double a) {
  for (auto& e : entries) e *= a;
  return *this;
}

double MatrixField::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.max_abs());
  return m;
}

MatrixField operator+(MatrixField a, const MatrixField& b) { return a += b; }
MatrixField operator-(MatrixField a, const MatrixField& b) { return a -= b; }

Spectrum::Spectrum(GridPtr g) : grid(std::move(g)), modes(grid->spectral_size(), Complex(0.0, 0.0)) {}

}  // namespace oddflow
