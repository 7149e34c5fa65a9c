#pragma once

#include <span>
#include <vector>

#include "o1kepler/jet.hpp"
#include "o1kepler/radial.hpp"

namespace o1kepler {

/// Twist of a Kepler radial state onto the isotropic oscillator:
///   T(r) = c_I (1/r) R(sqrt(s) r),  s = n_I / 2.
struct TwistedState {
  RadialState source;
  double nI = 1.0;
  double cI = 1.0;
  double scale = 0.5;  // s = n_I / 2
};

/// <r^{-2}> = int |R|^2 r^{n-3} dr by quadrature.
double mean_inverse_square(const RadialState& state);

/// c_I = [s^{1-n/2} <r^{-2}>]^{-1/2}, the norm-preserving constant.
double twist_constant(const QuantumChannel& channel);

/// Closed form n_I (n_I/2)^{n/4 - 1/2} obtained from <r^{-2}> = -2 E_I; a
/// derived cross-check for twist_constant.
double twist_constant_closed_form(const QuantumChannel& channel);

TwistedState make_twisted(const QuantumChannel& channel);

Jet twisted_jet(const TwistedState& t, double r);
double twisted_eval(const TwistedState& t, double r);

/// int T^2 r^{n-1} dr by adaptive quadrature of T itself.
double twisted_norm2(const TwistedState& t);

/// 2 I + sigma + n/2 = 2 n_I
double oscillator_eigenvalue(const QuantumChannel& channel);

/// 400 log-spaced points on [1e-2, 2 sqrt(2 lambda) + 2].
std::vector<double> default_oscillator_grid(const QuantumChannel& channel);

/// max_r |(-1/2)(T'' + (n-1)T'/r) + [l(l+n-2)/(2r^2) + r^2/2] T - lambda T| / max|T|
double oscillator_residual(const TwistedState& t, std::span<const double> grid);

/// Normalized oscillator radial eigenfunction
///   r^l L^{l+n/2-1}_{k-1}(r^2) exp(-r^2/2) / norm
/// with the norm from the Laguerre orthogonality closed form.
double oscillator_radial_eval(const QuantumChannel& channel, double r);

}  // namespace o1kepler
