#pragma once

// Pointwise and spectral-multiplier kernels used by every operator.
//
// Each kernel has a serial reference version and an OpenMP version with
// identical per-element arithmetic. Reductions accumulate one partial per
// row and sum the partials serially, so results never depend on the thread
// count. The functions directly in `kernels::` dispatch on the process-wide
// execution setting (parallel by default when OpenMP is available).

#include <complex>
#include <cstddef>
#include <span>

namespace oddflow::kernels {

using Complex = std::complex<double>;

enum class Execution { serial, parallel };

void set_execution(Execution e);
Execution execution();
bool parallel_available();

namespace serial {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
/// out = a1 * b1 + a2 * b2
void dot2(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
          std::span<const double> b2, std::span<double> out);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
/// out = i * k * in along one axis of the half spectrum (axis 0: x, row length nx; axis 1: y).
void derivative(std::span<const Complex> in, std::span<const double> k, std::size_t nx, int axis,
                std::span<Complex> out);
void apply_mask(std::span<const unsigned char> mask, std::span<Complex> data);
void apply_weights(std::span<const double> w, std::span<Complex> data);
double max_abs(std::span<const double> x);
double min_value(std::span<const double> x);
double max_value(std::span<const double> x);
double sum(std::span<const double> x, std::size_t row);
double dot(std::span<const double> x, std::span<const double> y, std::size_t row);

}  // namespace serial

namespace parallel {

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
void dot2(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
          std::span<const double> b2, std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
void derivative(std::span<const Complex> in, std::span<const double> k, std::size_t nx, int axis,
                std::span<Complex> out);
void apply_mask(std::span<const unsigned char> mask, std::span<Complex> data);
void apply_weights(std::span<const double> w, std::span<Complex> data);
double max_abs(std::span<const double> x);
double min_value(std::span<const double> x);
double max_value(std::span<const double> x);
double sum(std::span<const double> x, std::size_t row);
double dot(std::span<const double> x, std::span<const double> y, std::size_t row);

}  // namespace parallel

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
void dot2(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
          std::span<const double> b2, std::span<double> out);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
void derivative(std::span<const Complex> in, std::span<const double> k, std::size_t nx, int axis,
                std::span<Complex> out);
void apply_mask(std::span<const unsigned char> mask, std::span<Complex> data);
void apply_weights(std::span<const double> w, std::span<Complex> data);
double max_abs(std::span<const double> x);
double min_value(std::span<const double> x);
double max_value(std::span<const double> x);
double sum(std::span<const double> x, std::size_t row);
double dot(std::span<const double> x, std::span<const double> y, std::size_t row);

}  // namespace oddflow::kernels
