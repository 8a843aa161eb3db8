#pragma once

// Discrete Littlewood-Paley analysis on the periodic grid.
//
// Blocks are indexed j = -1 .. j_max. Delta_{-1} = chi(2D) and
// Delta_j = chi(2^-j D) - chi(2^-j+1 D) for j >= 0, with |xi| measured in
// physical wavenumbers. j_max is the smallest J with 2^J >= the largest
// lattice |xi|, so the blocks sum to the identity on every lattice mode.

#include <limits>
#include <span>
#include <vector>

#include "oddflow/field.hpp"

namespace oddflow {

enum class Lebesgue { two, infinity };

struct BesovIndex {
  double s = 0.0;
  Lebesgue p = Lebesgue::infinity;
  /// Summation exponent, >= 1; infinity selects the sup over blocks.
  double r = 1.0;

  static constexpr double inf = std::numeric_limits<double>::infinity();
  /// Throws std::invalid_argument unless r >= 1.
  void validate() const;
};

class DyadicCutoffs {
 public:
  explicit DyadicCutoffs(GridPtr grid);

  /// Radial profile: 1 on [0,1], 0 on [2, inf), smooth and nonincreasing in between.
  static double chi(double r);
  /// Annulus profile chi(r) - chi(2r), supported in [1/2, 2].
  static double phi(double r);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int j_max() const { return j_max_; }
  int block_count() const { return j_max_ + 2; }
  /// Spectral weights of block j in [-1, j_max]; throws std::out_of_range otherwise.
  std::span<const double> weights(int j) const;
  /// max over retained modes of |sum_j weights_j - 1|.
  double partition_residual() const;

 private:
  GridPtr grid_;
  int j_max_ = 0;
  std::vector<std::vector<double>> weights_;
};

DyadicCutoffs make_cutoffs(GridPtr grid);

struct LPDecomposition {
  /// blocks[0] is Delta_{-1} f, blocks[k] is Delta_{k-1} f.
  std::vector<ScalarField> blocks;

  const ScalarField& block(int j) const { return blocks.at(static_cast<std::size_t>(j + 1)); }
  int j_max() const { return static_cast<int>(blocks.size()) - 2; }
  ScalarField sum() const;
};

LPDecomposition decompose(const ScalarField& f, const DyadicCutoffs& cutoffs);

/// Delta_j f for -1 <= j <= j_max.
ScalarField dyadic_block(const ScalarField& f, int j, const DyadicCutoffs& cutoffs);
/// S_j f = sum_{k <= j-1} Delta_k f for -1 <= j <= j_max + 1 (S_{-1} = 0).
ScalarField low_cutoff(const ScalarField& f, int j, const DyadicCutoffs& cutoffs);

double lebesgue_norm(const ScalarField& f, Lebesgue p);
/// || (2^{js} ||Delta_j f||_{L^p})_j ||_{l^r} over j = -1 .. j_max.
double besov_norm(const ScalarField& f, const BesovIndex& idx, const DyadicCutoffs& cutoffs);
double besov_norm(const LPDecomposition& lp, const BesovIndex& idx);
/// Sum of the component norms.
double besov_norm(const VectorField& v, const BesovIndex& idx, const DyadicCutoffs& cutoffs);

struct BernsteinRatio {
  double ratio = 0.0;
  /// Set when the block is nonzero but its gradient vanishes (only possible for j = -1).
  bool degenerate = false;
};

/// ||grad Delta_j f||_inf / (2^j ||Delta_j f||_inf). Throws std::domain_error on a zero block.
BernsteinRatio bernstein_ratio(const ScalarField& f, int j, const DyadicCutoffs& cutoffs);

struct BonyDecomposition {
  ScalarField paraproduct_fg;  // T_f g = sum_j S_{j-1} f Delta_j g
  ScalarField paraproduct_gf;  // T_g f
  ScalarField remainder;       // R(f, g) = sum_{|j - j'| <= 1} Delta_j f Delta_j' g
};

/// The three parts sum to the dealiased product f g.
BonyDecomposition bony_decompose(const ScalarField& f, const ScalarField& g, const DyadicCutoffs& cutoffs);

/// [v . grad, Delta_j] f = v . grad(Delta_j f) - Delta_j(v . grad f), products dealiased.
ScalarField transport_commutator(const VectorField& v, const ScalarField& f, int j, const DyadicCutoffs& cutoffs);

}  // namespace oddflow
