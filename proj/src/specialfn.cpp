#include "o1kepler/specialfn.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "o1kepler/error.hpp"

namespace o1kepler {
namespace {

void check_params(const LaguerreParams& p, double x) {
  require(p.alpha > -1.0, ErrorKind::parameter,
          "laguerre: alpha must exceed -1, got " + std::to_string(p.alpha));
  require(p.degree >= 0, ErrorKind::parameter, "laguerre: negative degree");
  require(x >= 0.0, ErrorKind::domain,
          "laguerre: x must be non-negative, got " + std::to_string(x));
}

double recurrence(double alpha, int degree, double x) {
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < degree; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double laguerre_eval(const LaguerreParams& params, double x) {
  check_params(params, x);
  return recurrence(params.alpha, params.degree, x);
}

double laguerre_deriv(const LaguerreParams& params, double x) {
  check_params(params, x);
  if (params.degree == 0) return 0.0;
  return -recurrence(params.alpha + 1.0, params.degree - 1, x);
}

double laguerre_deriv2(const LaguerreParams& params, double x) {
  check_params(params, x);
  if (params.degree < 2) return 0.0;
  return recurrence(params.alpha + 2.0, params.degree - 2, x);
}

QuadratureRule gauss_laguerre_rule(double alpha, int npoints) {
  require(alpha > -1.0, ErrorKind::parameter,
          "gauss_laguerre_rule: alpha must exceed -1, got " + std::to_string(alpha));
  require(npoints >= 1, ErrorKind::parameter, "gauss_laguerre_rule: npoints must be >= 1");

  // Jacobi matrix of the monic Laguerre recurrence.
  Eigen::VectorXd diag(npoints);
  Eigen::VectorXd sub(std::max(npoints - 1, 0));
  for (int i = 0; i < npoints; ++i) diag[i] = 2.0 * i + alpha + 1.0;
  for (int i = 1; i < npoints; ++i) sub[i - 1] = std::sqrt(i * (i + alpha));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    fail(ErrorKind::numerical, "gauss_laguerre_rule: tridiagonal eigensolver failed (alpha=" +
                                   std::to_string(alpha) + ", npoints=" + std::to_string(npoints) +
                                   ", info=" + std::to_string(static_cast<int>(es.info())) + ")");
  }

  // Eigenvector weights are only absolutely accurate, which ruins the tiny
  // weights of the outer nodes. Polish each node by Newton on L_n and take
  // w = Gamma(n+a+1) / (n! x L_n'(x)^2), accurate relative to each weight.
  const double mu0 = std::tgamma(alpha + 1.0);
  const LaguerreParams ln{alpha, npoints};
  const double scale = std::exp(std::lgamma(npoints + alpha + 1.0) - std::lgamma(npoints + 1.0));
  QuadratureRule rule;
  rule.alpha = alpha;
  rule.nodes.resize(npoints);
  rule.weights.resize(npoints);
  for (int i = 0; i < npoints; ++i) {
    double x = es.eigenvalues()[i];
    for (int it = 0; it < 3; ++it) {
      const double step = laguerre_eval(ln, x) / laguerre_deriv(ln, x);
      if (!std::isfinite(step) || std::abs(step) > 1e-6 * std::max(1.0, x)) break;
      x -= step;
    }
    const double d = laguerre_deriv(ln, x);
    const double w = scale / (x * d * d);
    const double v0 = es.eigenvectors()(0, i);
    rule.nodes[i] = x;
    rule.weights[i] = std::isfinite(w) && w > 0.0 ? w : mu0 * v0 * v0;
  }
  // Eigen returns ascending eigenvalues; a non-positive node means the
  // decomposition lost accuracy.
  for (int i = 0; i < npoints; ++i) {
    if (!(rule.nodes[i] > 0.0) || (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1]))) {
      fail(ErrorKind::numerical, "gauss_laguerre_rule: nodes not strictly increasing and positive at index " +
                                     std::to_string(i) + " (alpha=" + std::to_string(alpha) +
                                     ", npoints=" + std::to_string(npoints) + ")");
    }
  }
  return rule;
}

int default_node_count(int poly_degree) { return std::max(poly_degree, 0) / 2 + 10; }

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::overflow, "uint64 addition overflow");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::overflow, "uint64 multiplication overflow");
  return r;
}

std::uint64_t exact_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  // result = C(n, i) after step i; C(n, i) = C(n, i-1) * (n-i+1) / i exactly.
  for (std::int64_t i = 1; i <= k; ++i) {
    std::uint64_t num = static_cast<std::uint64_t>(n - i + 1);
    std::uint64_t den = static_cast<std::uint64_t>(i);
    const std::uint64_t g = std::gcd(result, den);
    result /= g;
    den /= g;
    num /= den;  // exact: gcd(result, den) == 1 and den | result * num
    try {
      result = checked_mul(result, num);
    } catch (const Error&) {
      fail(ErrorKind::overflow,
           "exact_binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows uint64");
    }
  }
  return result;
}

}  // namespace o1kepler
