#pragma once

#include <cmath>

namespace o1kepler {

/// Value with first and second derivative in one real variable. Enough
/// calculus to push closed-form radial functions through second-order
/// differential operators without finite differences.
struct Jet {
  double v = 0.0;
  double d = 0.0;
  double dd = 0.0;

  static Jet constant(double c) { return {c, 0.0, 0.0}; }

  /// x^p at x > 0
  static Jet power(double x, double p) {
    if (p == 0.0) return constant(1.0);
    const double xp = std::pow(x, p);
    return {xp, p * xp / x, p * (p - 1.0) * xp / (x * x)};
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
  }
  friend Jet operator*(double s, const Jet& a) { return {s * a.v, s * a.d, s * a.dd}; }
  friend Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
  friend Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
};

/// f(g(x)) given the jet of f at g(x) (derivatives with respect to its own
/// argument) and the jet of g at x.
inline Jet compose(const Jet& f_at_g, const Jet& g) {
  return {f_at_g.v, f_at_g.d * g.d, f_at_g.dd * g.d * g.d + f_at_g.d * g.dd};
}

/// exp(g(x))
inline Jet exp_of(const Jet& g) {
  const double e = std::exp(g.v);
  return compose({e, e, e}, g);
}

/// 1 / x at x > 0
inline Jet reciprocal(double x) { return Jet::power(x, -1.0); }

}  // namespace o1kepler
