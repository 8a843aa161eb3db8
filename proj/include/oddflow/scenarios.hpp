#pragma once

// Initial data. Every family takes a density rho0 = 1 + eps cos(m1 x) cos(m2 y)
// (angles scaled by 2 pi / L) and a velocity field from one of the families.

#include <cstdint>
#include <string>

#include "oddflow/physics.hpp"

namespace oddflow {

struct ScenarioSpec {
  /// taylor_green | shear_layer | random_divfree | density_bump
  std::string family = "taylor_green";
  double amplitude = 1.0;
  double epsilon = 0.0;
  int m1 = 1;
  int m2 = 1;
  std::uint64_t seed = 0;
  /// Amplitude of mode k scales like |k|^slope before projection.
  double slope = -1.0;
  /// Largest lattice |k| given energy by random_divfree.
  double cutoff = 6.0;
  /// Shear-layer thickness as a fraction of L.
  double shear_width = 1.0 / 30.0;

  /// Throws std::invalid_argument.
  void validate() const;
};

/// u = A (sin x cos y, -cos x sin y), angles scaled by 2 pi / L.
VectorField taylor_green(const GridPtr& grid, double amplitude = 1.0);
/// 1 + eps cos(m1 x) cos(m2 y)
ScalarField density_bump(const GridPtr& grid, double epsilon, int m1 = 1, int m2 = 1);
/// Double shear layer with a small transverse kick; dealiased and projected.
VectorField shear_layer(const GridPtr& grid, double amplitude, double width_fraction);
/// Gaussian random div-free field with ||u||_L2 = l2_norm; deterministic in seed.
VectorField random_divfree(const GridPtr& grid, std::uint64_t seed, double slope, double cutoff, double l2_norm);
/// Gaussian random band-limited scalar with unit max norm and zero mean.
ScalarField random_scalar(const GridPtr& grid, std::uint64_t seed, double slope, double cutoff);

/// Random resolved state used by the identity checks: rho = 1 + amplitude * random scalar.
/// The density is smoother than the flow so that 1/rho and log rho stay resolved on small grids.
State random_state(const GridPtr& grid, std::uint64_t seed, double nu0, double rho_amplitude = 0.3,
                   double cutoff = 5.0, double rho_cutoff = 3.0);

State build_initial_state(const GridPtr& grid, const ScenarioSpec& spec, double nu0);

}  // namespace oddflow
