#pragma once

#include <cstdint>
#include <vector>

namespace o1kepler {

/// Generalized Laguerre polynomial L^alpha_degree with real alpha > -1.
struct LaguerreParams {
  double alpha = 0.0;
  int degree = 0;
};

/// Gauss rule for the weight x^alpha e^{-x} on (0, inf).
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, all > 0
  std::vector<double> weights;  // all > 0, sum = Gamma(alpha + 1)
  double alpha = 0.0;

  std::size_t size() const { return nodes.size(); }

  /// sum_i w_i f(x_i)
  template <class F>
  double apply(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// L^alpha_n(x) by upward three-term recurrence in the degree.
double laguerre_eval(const LaguerreParams& params, double x);

/// d/dx L^alpha_n(x) = -L^{alpha+1}_{n-1}(x); zero for degree 0.
double laguerre_deriv(const LaguerreParams& params, double x);

/// Second derivative, L^{alpha+2}_{n-2}(x).
double laguerre_deriv2(const LaguerreParams& params, double x);

/// Golub-Welsch nodes from the symmetric tridiagonal Jacobi matrix of the
/// Laguerre weight, Newton-polished, with derivative-formula weights. Exact
/// for polynomials of degree <= 2*npoints - 1.
QuadratureRule gauss_laguerre_rule(double alpha, int npoints);

/// Number of nodes used for weight-times-polynomial integrals of the given
/// polynomial degree: degree/2 + 10 guard points.
int default_node_count(int poly_degree);

/// Binomial coefficient in exact 64-bit arithmetic. Returns 0 for k outside
/// [0, n]; throws ErrorKind::overflow instead of wrapping.
std::uint64_t exact_binomial(std::int64_t n, std::int64_t k);

/// Checked a + b and a * b on uint64.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

}  // namespace o1kepler
