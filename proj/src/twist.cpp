#include "o1kepler/twist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "o1kepler/error.hpp"
#include "o1kepler/specialfn.hpp"

namespace o1kepler {

double mean_inverse_square(const RadialState& state) {
  return radial_moment(state, state, state.channel.n - 3);
}

double twist_constant(const QuantumChannel& channel) {
  const RadialState s = radial_normalize(channel);
  const double scale = 0.5 * s.nI;
  const double m = mean_inverse_square(s);
  require(m > 0.0, ErrorKind::numerical, "twist_constant: non-positive <r^-2> for " + channel.str());
  return 1.0 / std::sqrt(std::pow(scale, 1.0 - 0.5 * channel.n) * m);
}

double twist_constant_closed_form(const QuantumChannel& channel) {
  validate(channel);
  const double nI = channel.n_level();
  return nI * std::pow(0.5 * nI, 0.25 * channel.n - 0.5);
}

TwistedState make_twisted(const QuantumChannel& channel) {
  TwistedState t;
  t.source = radial_normalize(channel);
  t.nI = t.source.nI;
  t.scale = 0.5 * t.nI;
  t.cI = twist_constant(channel);
  return t;
}

Jet twisted_jet(const TwistedState& t, double r) {
  require(r > 0.0, ErrorKind::domain, "twist: r must be positive, got " + std::to_string(r));
  const double root_s = std::sqrt(t.scale);
  const Jet inner{root_s * r, root_s, 0.0};
  const Jet R = compose(radial_jet(t.source, inner.v), inner);
  return t.cI * (R * reciprocal(r));
}

double twisted_eval(const TwistedState& t, double r) { return twisted_jet(t, r).v; }

double twisted_norm2(const TwistedState& t) {
  // Direct quadrature of the twisted function itself, independent of the
  // moment formula that fixed c_I.
  const int n = t.source.channel.n;
  const double cutoff = 40.0 + 4.0 * std::sqrt(oscillator_eigenvalue(t.source.channel));
  auto integrand = [&](double r) {
    if (r <= 0.0 || r > cutoff) return 0.0;
    const double v = twisted_eval(t, r);
    return v * v * std::pow(r, n - 1);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(integrand, 1e-14);
}

double oscillator_eigenvalue(const QuantumChannel& channel) {
  validate(channel);
  return 0.5 * channel.four_n_level();
}

std::vector<double> default_oscillator_grid(const QuantumChannel& channel) {
  const double lambda = oscillator_eigenvalue(channel);
  return log_grid(1e-2, 2.0 * std::sqrt(2.0 * lambda) + 2.0, 400);
}

double oscillator_residual(const TwistedState& t, std::span<const double> grid) {
  const QuantumChannel& ch = t.source.channel;
  const double n = ch.n;
  const double l = ch.l;
  const double lambda = oscillator_eigenvalue(ch);
  double max_dev = 0.0;
  double max_val = 0.0;
  for (const double r : grid) {
    require(r > 0.0, ErrorKind::domain, "oscillator_residual: grid point " + std::to_string(r) + " <= 0");
    const Jet T = twisted_jet(t, r);
    const double h = -0.5 * (T.dd + (n - 1.0) * T.d / r) + (l * (l + n - 2.0) / (2.0 * r * r) + 0.5 * r * r) * T.v;
    max_dev = std::max(max_dev, std::abs(h - lambda * T.v));
    max_val = std::max(max_val, std::abs(T.v));
  }
  require(max_val > 0.0, ErrorKind::numerical, "oscillator_residual: state vanishes on the grid");
  return max_dev / max_val;
}

double oscillator_radial_eval(const QuantumChannel& channel, double r) {
  validate(channel);
  require(r > 0.0, ErrorKind::domain, "oscillator_radial_eval: r must be positive");
  const double alpha = channel.l + 0.5 * channel.n - 1.0;
  const int deg = channel.k - 1;
  // int (r^l L(r^2) e^{-r^2/2})^2 r^{n-1} dr = Gamma(deg + alpha + 1) / (2 deg!)
  const double norm2 = 0.5 * std::exp(std::lgamma(deg + alpha + 1.0) - std::lgamma(deg + 1.0));
  return std::pow(r, channel.l) * laguerre_eval({alpha, deg}, r * r) * std::exp(-0.5 * r * r) / std::sqrt(norm2);
}

}  // namespace o1kepler
