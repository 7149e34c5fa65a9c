#pragma once

#include <span>
#include <vector>

#include "o1kepler/jet.hpp"
#include "o1kepler/spectrum.hpp"

namespace o1kepler {

/// Closed-form radial eigenfunction
///   R(r) = c r^{l+1} L^{l+n/2-1}_{k-1}(2 r^2 / n_I) exp(-r^2 / n_I)
/// of the O(1)-Kepler radial operator.
struct RadialState {
  QuantumChannel channel;
  double nI = 1.0;  // I + n/4 + sigma/2; tests perturb it to build wrong states
  double c = 1.0;

  /// Superscript l + n/2 - 1 of the Laguerre factor.
  double alpha() const { return channel.l + 0.5 * channel.n - 1.0; }
};

double radial_eval(const RadialState& state, double r);

/// Value, first and second derivative of R at r > 0.
Jet radial_jet(const RadialState& state, double r);

/// Normalized state: c > 0 with int |R|^2 r^{n-1} dr = 1.
RadialState radial_normalize(const QuantumChannel& channel);

/// Recomputes c for an existing state (idempotent on normalized states).
RadialState renormalize(const RadialState& state);

/// int R_a R_b r^q dr by Gauss-Laguerre quadrature after u = beta r^2, which
/// turns the integrand into weight times polynomial. npoints = 0 selects the
/// default node count; an explicit count below the exactness threshold is an
/// accuracy error reporting the required count.
double radial_moment(const RadialState& a, const RadialState& b, int q, int npoints = 0);

/// <a, b> in L^2(R_+, r^{n-1} dr). Requires equal (n, sigma, l).
double radial_inner_product(const RadialState& a, const RadialState& b);

/// 400 log-spaced points on [1e-2 sqrt(n_I), 8 sqrt(n_I)].
std::vector<double> default_residual_grid(const RadialState& state);

/// max_r |(H_rad R)(r) - E R(r)| / max_r |R(r)| with analytic derivatives,
/// H_rad = (1/8)(-(1/r^n) d_r r^{n-1} d_r (1/r) + (l^2+(n-2)l)/r^4) - 1/r^2.
double radial_residual(const RadialState& state, std::span<const double> grid);

/// Number of strict sign changes in a sampled sequence (zeros skipped).
int sign_changes(std::span<const double> values);

/// Log-spaced grid with `count` points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace o1kepler
