#pragma once
// Closed-form references: free-fermion solution of the periodic XY chain,
// the single-site mean-field analysis, and the leading-order Wilson loop
// estimates for the two phases.

#include <utility>
#include <vector>

#include "kising/lattice.hpp"
#include "kising/model.hpp"

namespace kising {

struct DispersionPoint {
  double k = 0.0;       // momentum in (-pi, pi]
  double energy = 0.0;  // single-mode energy, >= 0
};

// Single-mode energy 2*sqrt((Jx+Jy)^2 cos^2 k + (Jx-Jy)^2 sin^2 k) with
// Jx = 2*lambda and Jy = J, matching the axis layout of ladder_effective.
DispersionPoint xy_mode_energy(double k, const CouplingParams& c);

// Exact ground energy of ladder_effective(n, c): minimum over the two
// fermion-parity sectors (antiperiodic and periodic momentum grids) of
// -1/2 sum_k energy(k), plus the -K n constant. The parity convention is
// certified against dense diagonalization in the test suite.
double xy_ground_energy(int n, const CouplingParams& c);

// Thermodynamic-limit ground energy per virtual spin, by quadrature of the
// dispersion over (-pi, pi]; excludes the -K/2 per-spin constant offset of
// the finite chain only when include_constant is false.
double xy_ground_energy_per_spin_limit(const CouplingParams& c,
                                       bool include_constant = true);

struct MeanFieldResult {
  double theta = 0.0;
  double phi = 0.0;
  double energy_per_site = 0.0;
  double x_expectation = 0.0;                      // <A_s> in the ansatz
  std::pair<double, double> z_expectation_branches{0.0, 0.0};
  double critical_lambda = 0.0;                    // J/8
};

// Mean-field energy surface e(theta, phi) = -J sin(theta) cos(phi)
// - 4 lambda cos^2(theta) for the product ansatz.
double mean_field_energy(double theta, double phi, const CouplingParams& c);

// Deterministic grid search plus ternary refinement over (theta, phi).
double mean_field_numeric_minimum(const CouplingParams& c);

// Closed-form minimizer. The polarized branch (theta = pi/2) holds up to
// lambda = J/8; beyond it sin(theta) = J/(8 lambda) and the z magnetization
// bifurcates. Internally cross-checked against the numeric minimum.
MeanFieldResult mean_field(const CouplingParams& c);

// Literature value for the 2D transverse-field Ising critical coupling,
// J_c ~ 6 lambda from large-lattice numerics. Reference constant only; not
// reproducible at the lattice sizes this artifact diagonalizes.
inline constexpr double itf_critical_coupling_ratio = 6.0;

// Leading-order Wilson loop estimates. The small-coupling expansion decays
// with the region perimeter, the large-coupling one with its area. Both are
// computed outside their validity windows (callers flag that); only
// mathematically meaningless ratios throw.
inline constexpr double wilson_kitaev_validity_limit = 0.3;  // lambda_over_j
double wilson_kitaev_estimate(double lambda_over_j, const WilsonRegion& region);
bool wilson_kitaev_estimate_valid(double lambda_over_j);

double wilson_ising_estimate(double lambda_over_j, const WilsonRegion& region);
bool wilson_ising_estimate_valid(double lambda_over_j);

struct OriginFit {
  double slope = 0.0;
  double rms_residual = 0.0;
};

// Least squares y = slope * x through the origin; the scaling-law fits for
// -ln<W> against perimeter or area use this.
OriginFit fit_through_origin(const std::vector<double>& x,
                             const std::vector<double>& y);

}  // namespace kising
