#include "oddflow/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "oddflow/kernels.hpp"
#include "oddflow/spectral.hpp"

namespace oddflow {

namespace {

double bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

void check_block_index(int j, int j_max) {
  if (j < -1 || j > j_max) {
    throw std::out_of_range("dyadic block index " + std::to_string(j) + " outside [-1, " + std::to_string(j_max) + "]");
  }
}

}  // namespace

void BesovIndex::validate() const {
  if (!(r >= 1.0)) throw std::invalid_argument("Besov summation exponent must be >= 1");
}

double DyadicCutoffs::chi(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double a = bump(2.0 - r);
  const double b = bump(r - 1.0);
  return a / (a + b);
}

double DyadicCutoffs::phi(double r) { return chi(r) - chi(2.0 * r); }

// Blocks j >= 0 live on 2^{j-1} <= |k| <= 2^{j+1}; the low block is chi(2k) so
// that the weights telescope to exactly 1.
DyadicCutoffs::DyadicCutoffs(GridPtr grid) : grid_(std::move(grid)) {
  const auto kmag = grid_->wavenumber_magnitude();
  const double top = *std::max_element(kmag.begin(), kmag.end());
  j_max_ = 0;
  while (std::ldexp(1.0, j_max_) < top) ++j_max_;

  weights_.resize(static_cast<std::size_t>(block_count()));
  for (int j = -1; j <= j_max_; ++j) {
    auto& w = weights_[static_cast<std::size_t>(j + 1)];
    w.resize(kmag.size());
    for (std::size_t i = 0; i < kmag.size(); ++i) {
      w[i] = j < 0 ? chi(2.0 * kmag[i]) : chi(std::ldexp(kmag[i], -j)) - chi(std::ldexp(kmag[i], -j + 1));
    }
  }
}

std::span<const double> DyadicCutoffs::weights(int j) const {
  check_block_index(j, j_max_);
  return weights_[static_cast<std::size_t>(j + 1)];
}

double DyadicCutoffs::partition_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < grid_->spectral_size(); ++i) {
    if (!grid_->retained(i)) continue;
    double s = 0.0;
    for (const auto& w : weights_) s += w[i];
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

DyadicCutoffs make_cutoffs(GridPtr grid) { return DyadicCutoffs(std::move(grid)); }

ScalarField LPDecomposition::sum() const {
  ScalarField out(blocks.front().grid_ptr());
  for (const auto& b : blocks) out += b;
  return out;
}

LPDecomposition decompose(const ScalarField& f, const DyadicCutoffs& cutoffs) {
  require_same_grid(f.grid(), cutoffs.grid());
  const Spectrum s = fft_forward(f);
  LPDecomposition lp;
  lp.blocks.reserve(static_cast<std::size_t>(cutoffs.block_count()));
  for (int j = -1; j <= cutoffs.j_max(); ++j) {
    Spectrum b = s;
    kernels::apply_weights(cutoffs.weights(j), b.modes);
    lp.blocks.push_back(fft_inverse(b));
  }
  return lp;
}

ScalarField dyadic_block(const ScalarField& f, int j, const DyadicCutoffs& cutoffs) {
  require_same_grid(f.grid(), cutoffs.grid());
  const auto w = cutoffs.weights(j);
  Spectrum s = fft_forward(f);
  kernels::apply_weights(w, s.modes);
  return fft_inverse(s);
}

ScalarField low_cutoff(const ScalarField& f, int j, const DyadicCutoffs& cutoffs) {
  if (j < -1 || j > cutoffs.j_max() + 1) {
    throw std::out_of_range("low_cutoff index " + std::to_string(j) + " out of range");
  }
  require_same_grid(f.grid(), cutoffs.grid());
  Spectrum s = fft_forward(f);
  std::vector<double> w(s.size(), 0.0);
  for (int k = -1; k <= j - 1; ++k) {
    const auto wk = cutoffs.weights(k);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += wk[i];
  }
  kernels::apply_weights(w, s.modes);
  return fft_inverse(s);
}

double lebesgue_norm(const ScalarField& f, Lebesgue p) { return p == Lebesgue::two ? f.l2_norm() : f.max_abs(); }

double besov_norm(const LPDecomposition& lp, const BesovIndex& idx) {
  idx.validate();
  double acc = 0.0;
  for (int j = -1; j <= lp.j_max(); ++j) {
    const double term = std::pow(2.0, j * idx.s) * lebesgue_norm(lp.block(j), idx.p);
    if (std::isinf(idx.r)) {
      acc = std::max(acc, term);
    } else {
      acc += std::pow(term, idx.r);
    }
  }
  return std::isinf(idx.r) ? acc : std::pow(acc, 1.0 / idx.r);
}

double besov_norm(const ScalarField& f, const BesovIndex& idx, const DyadicCutoffs& cutoffs) {
  return besov_norm(decompose(f, cutoffs), idx);
}

double besov_norm(const VectorField& v, const BesovIndex& idx, const DyadicCutoffs& cutoffs) {
  return besov_norm(v.x, idx, cutoffs) + besov_norm(v.y, idx, cutoffs);
}

BernsteinRatio bernstein_ratio(const ScalarField& f, int j, const DyadicCutoffs& cutoffs) {
  const ScalarField block = dyadic_block(f, j, cutoffs);
  const double size = block.max_abs();
  if (size == 0.0 || size <= 1e-14 * std::max(1.0, f.max_abs())) {
    throw std::domain_error("Bernstein ratio of a zero dyadic block");
  }
  const double grad_size = grad(block).max_norm();
  BernsteinRatio out;
  if (grad_size <= 1e-12 * size) {
    out.degenerate = true;
    return out;
  }
  out.ratio = grad_size / (std::pow(2.0, j) * size);
  return out;
}

BonyDecomposition bony_decompose(const ScalarField& f, const ScalarField& g, const DyadicCutoffs& cutoffs) {
  require_same_grid(f.grid(), g.grid());
  const LPDecomposition lf = decompose(f, cutoffs);
  const LPDecomposition lg = decompose(g, cutoffs);
  const int jm = cutoffs.j_max();
  const GridPtr& grid = f.grid_ptr();

  ScalarField tfg(grid);
  ScalarField tgf(grid);
  ScalarField rem(grid);
  ScalarField low_f(grid);  // S_{j-1} f, accumulated as j increases
  ScalarField low_g(grid);
  ScalarField term(grid);
  for (int j = -1; j <= jm; ++j) {
    if (j - 2 >= -1) {
      low_f += lf.block(j - 2);
      low_g += lg.block(j - 2);
    }
    kernels::multiply(low_f.values(), lg.block(j).values(), term.values());
    tfg += term;
    kernels::multiply(low_g.values(), lf.block(j).values(), term.values());
    tgf += term;
    for (int jp = std::max(-1, j - 1); jp <= std::min(jm, j + 1); ++jp) {
      kernels::multiply(lf.block(j).values(), lg.block(jp).values(), term.values());
      rem += term;
    }
  }
  return BonyDecomposition{dealias(tfg), dealias(tgf), dealias(rem)};
}

ScalarField transport_commutator(const VectorField& v, const ScalarField& f, int j, const DyadicCutoffs& cutoffs) {
  const ScalarField block = dyadic_block(f, j, cutoffs);
  return advect(v, block) - dyadic_block(advect(v, f), j, cutoffs);
}

}  // namespace oddflow
