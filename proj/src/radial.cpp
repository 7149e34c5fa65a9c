#include "o1kepler/radial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "o1kepler/error.hpp"
#include "o1kepler/specialfn.hpp"

namespace o1kepler {

namespace {

// c r^power L(2r^2/n_I) exp(-r^2/n_I)
Jet profile_jet(const RadialState& s, double r, double power) {
  require(r > 0.0, ErrorKind::domain, "radial: r must be positive, got " + std::to_string(r));
  const LaguerreParams lp{s.alpha(), s.channel.k - 1};
  const double u = 2.0 * r * r / s.nI;
  const Jet poly_u{laguerre_eval(lp, u), laguerre_deriv(lp, u), laguerre_deriv2(lp, u)};
  const Jet u_of_r{u, 4.0 * r / s.nI, 4.0 / s.nI};
  const Jet gauss = exp_of(Jet{-r * r / s.nI, -2.0 * r / s.nI, -2.0 / s.nI});
  return s.c * (Jet::power(r, power) * compose(poly_u, u_of_r) * gauss);
}

}  // namespace

Jet radial_jet(const RadialState& s, double r) { return profile_jet(s, r, s.channel.l + 1.0); }

double radial_eval(const RadialState& s, double r) { return radial_jet(s, r).v; }

double radial_moment(const RadialState& a, const RadialState& b, int q, int npoints) {
  // r^p e^{-beta r^2} dr = (1/2) beta^{-(p+1)/2} u^{(p-1)/2} e^{-u} du
  const int p = a.channel.l + b.channel.l + 2 + q;
  require(p > -1, ErrorKind::domain, "radial_moment: integrand not integrable at r = 0");
  const double beta = 1.0 / a.nI + 1.0 / b.nI;
  const double gamma = 0.5 * (p - 1);
  const int degree = (a.channel.k - 1) + (b.channel.k - 1);
  const int needed = degree / 2 + 1;
  if (npoints == 0) npoints = default_node_count(degree);
  if (npoints < needed) {
    fail(ErrorKind::accuracy, "radial_moment: " + std::to_string(npoints) +
                                  " quadrature nodes cannot integrate a degree-" +
                                  std::to_string(degree) + " polynomial exactly; need at least " +
                                  std::to_string(needed));
  }
  const QuadratureRule rule = gauss_laguerre_rule(gamma, npoints);
  const LaguerreParams pa{a.alpha(), a.channel.k - 1};
  const LaguerreParams pb{b.alpha(), b.channel.k - 1};
  const double sa = 2.0 / (beta * a.nI);
  const double sb = 2.0 / (beta * b.nI);
  const double integral =
      rule.apply([&](double u) { return laguerre_eval(pa, sa * u) * laguerre_eval(pb, sb * u); });
  return a.c * b.c * 0.5 * std::pow(beta, -0.5 * (p + 1)) * integral;
}

RadialState radial_normalize(const QuantumChannel& channel) {
  validate(channel);
  RadialState s{channel, channel.n_level(), 1.0};
  return renormalize(s);
}

RadialState renormalize(const RadialState& state) {
  RadialState s = state;
  const double norm2 = radial_moment(s, s, s.channel.n - 1);
  require(norm2 > 0.0 && std::isfinite(norm2), ErrorKind::numerical,
          "radial_normalize: non-positive norm for " + s.channel.str());
  s.c = s.c / std::sqrt(norm2);
  return s;
}

double radial_inner_product(const RadialState& a, const RadialState& b) {
  const QuantumChannel& x = a.channel;
  const QuantumChannel& y = b.channel;
  require(x.n == y.n && x.sigma == y.sigma && x.l == y.l, ErrorKind::domain,
          "radial_inner_product: states " + x.str() + " and " + y.str() +
              " live in different angular sectors");
  return radial_moment(a, b, x.n - 1);
}

std::vector<double> log_grid(double lo, double hi, int count) {
  require(lo > 0.0 && hi > lo && count >= 2, ErrorKind::parameter, "log_grid: need 0 < lo < hi, count >= 2");
  std::vector<double> g(count);
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = lo * std::exp(step * i);
  g.back() = hi;
  return g;
}

std::vector<double> default_residual_grid(const RadialState& state) {
  const double scale = std::sqrt(state.nI);
  return log_grid(1e-2 * scale, 8.0 * scale, 400);
}

double radial_residual(const RadialState& s, std::span<const double> grid) {
  const int n = s.channel.n;
  const int l = s.channel.l;
  const double energy = channel_energy(s.channel);
  const double centrifugal = static_cast<double>(l) * l + (n - 2.0) * l;
  double max_dev = 0.0;
  double max_val = 0.0;
  for (const double r : grid) {
    require(r > 0.0, ErrorKind::domain, "radial_residual: grid point " + std::to_string(r) + " <= 0");
    const Jet f = profile_jet(s, r, s.channel.l);  // R / r
    const double R = f.v * r;
    const double kinetic = -f.dd / r - (n - 1.0) * f.d / (r * r) + centrifugal * f.v / (r * r * r);
    const double h_r = kinetic / 8.0 - f.v / r;
    max_dev = std::max(max_dev, std::abs(h_r - energy * R));
    max_val = std::max(max_val, std::abs(R));
  }
  require(max_val > 0.0, ErrorKind::numerical, "radial_residual: state vanishes on the grid");
  return max_dev / max_val;
}

int sign_changes(std::span<const double> values) {
  int changes = 0;
  double last = 0.0;
  for (const double v : values) {
    if (v == 0.0) continue;
    if (last != 0.0 && (v > 0.0) != (last > 0.0)) ++changes;
    last = v;
  }
  return changes;
}

}  // namespace o1kepler
