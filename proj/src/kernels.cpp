#include "oddflow/kernels.hpp"

#include <atomic>

namespace oddflow::kernels {

namespace {

#ifdef _OPENMP
constexpr bool kHaveOpenMP = true;
#else
constexpr bool kHaveOpenMP = false;
#endif

std::atomic<Execution>& current() {
  static std::atomic<Execution> e{kHaveOpenMP ? Execution::parallel : Execution::serial};
  return e;
}

bool use_parallel() { return current().load(std::memory_order_relaxed) == Execution::parallel; }

}  // namespace

void set_execution(Execution e) { current().store(e); }
Execution execution() { return current().load(); }
bool parallel_available() { return kHaveOpenMP; }

#define ODDFLOW_DISPATCH(call) return use_parallel() ? parallel::call : serial::call

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  ODDFLOW_DISPATCH(multiply(a, b, out));
}
void dot2(std::span<const double> a1, std::span<const double> b1, std::span<const double> a2,
          std::span<const double> b2, std::span<double> out) {
  ODDFLOW_DISPATCH(dot2(a1, b1, a2, b2, out));
}
void axpy(double alpha, std::span<const double> x, std::span<double> y) { ODDFLOW_DISPATCH(axpy(alpha, x, y)); }
void scale(double alpha, std::span<double> x) { ODDFLOW_DISPATCH(scale(alpha, x)); }
void derivative(std::span<const Complex> in, std::span<const double> k, std::size_t nx, int axis,
                std::span<Complex> out) {
  ODDFLOW_DISPATCH(derivative(in, k, nx, axis, out));
}
void apply_mask(std::span<const unsigned char> mask, std::span<Complex> data) {
  ODDFLOW_DISPATCH(apply_mask(mask, data));
}
void apply_weights(std::span<const double> w, std::span<Complex> data) { ODDFLOW_DISPATCH(apply_weights(w, data)); }
double max_abs(std::span<const double> x) { ODDFLOW_DISPATCH(max_abs(x)); }
double min_value(std::span<const double> x) { ODDFLOW_DISPATCH(min_value(x)); }
double max_value(std::span<const double> x) { ODDFLOW_DISPATCH(max_value(x)); }
double sum(std::span<const double> x, std::size_t row) { ODDFLOW_DISPATCH(sum(x, row)); }
double dot(std::span<const double> x, std::span<const double> y, std::size_t row) { ODDFLOW_DISPATCH(dot(x, y, row)); }

#undef ODDFLOW_DISPATCH

}  // namespace oddflow::kernels
