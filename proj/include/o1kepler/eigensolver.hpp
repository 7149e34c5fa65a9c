#pragma once

#include <optional>
#include <string>
#include <vector>

#include "o1kepler/spectrum.hpp"

namespace o1kepler {

/// Grid and extrapolation settings for the radial finite-difference solver.
/// The coarsest grid has `npoints` cells on [0, rmax]; each refinement level
/// doubles it. rmin is the first cell face, rmax / npoints.
struct SolverConfig {
  double rmin = 0.0;
  double rmax = 0.0;
  int npoints = 16000;
  int refinement_levels = 3;
  int num_levels = 1;

  /// rmax = 40 (num_levels + l' + 1)^2, npoints = 16000, three grids.
  static SolverConfig defaults_for(const RadialFamilyParams& p, int num_levels);

  /// 0 < rmin < rmax, npoints >= 200, refinement_levels >= 2,
  /// 1 <= num_levels < npoints / 10.
  void validate() const;
};

struct RadialSpectrum {
  std::vector<double> eigenvalues;          // extrapolated, ascending
  std::vector<std::vector<double>> per_grid;  // raw eigenvalues, coarsest first
  std::vector<double> orders;               // Richardson orders applied
  std::vector<double> error_estimates;      // |last two extrapolants| per level
  std::optional<std::string> warning;       // set when extrapolation has not settled
};

/// Lowest eigenvalues of
///   (-1/(2 r^m) d_r r^m d_r + (l^2+(m-1)l)/(2r^2) - 1/r) R = E R
/// computed without using the closed-form spectrum. With u = r^{m/2} R and
/// u = r^{l'+1} w the problem becomes the self-adjoint
///   -(1/2) r^{-2l'-2} (r^{2l'+2} w')' - w/r = E w,
/// discretized by conservative central differences on a uniform cell-centred
/// grid (exact cell averages of the weights, Dirichlet at rmax) and solved as
/// a symmetric tridiagonal eigenproblem on each grid. Richardson
/// extrapolation uses orders 2, then 2l'+3 when that lies in (2, 4), else 4.
RadialSpectrum solve_radial_family(const RadialFamilyParams& p, const SolverConfig& cfg);

/// The Kepler channel through t = r^2: m = n/2, centrifugal parameter l/2.
/// Only (n, sigma, l) of the channel matter; eigenvalue k-1 belongs to
/// radial index k.
RadialSpectrum solve_kepler_channel(const QuantumChannel& ch, const SolverConfig& cfg);

/// Raw eigenvalues on a single grid of `cells` cells over [0, rmax].
std::vector<double> discrete_eigenvalues(const RadialFamilyParams& p, double rmax, int cells, int count);

/// |<u_num, u_exact>| / (|u_num| |u_exact|) on the finest grid of cfg, where
/// u_exact = r^{l'+1} L^{2l'+1}_{k-1}(2r/(k+l')) exp(-r/(k+l')).
double eigenvector_overlap(const RadialFamilyParams& p, const SolverConfig& cfg, int k);

/// 16 (l^2 + (m-1) l + (m/2)(m/2 - 1)) and 16 l'(l'+1), both exact integers;
/// the symmetrization identity says they are equal.
long centrifugal_sixteenths(const RadialFamilyParams& p);
long lprime_product_sixteenths(const RadialFamilyParams& p);

}  // namespace o1kepler
