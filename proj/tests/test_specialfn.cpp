#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "o1kepler/error.hpp"
#include "o1kepler/specialfn.hpp"

using namespace o1kepler;
using boost::multiprecision::cpp_bin_float_50;
using boost::multiprecision::cpp_rational;

namespace {

// Rodrigues: L = x^-a e^x / n! d^n/dx^n (e^-x x^(n+a)), differentiated
// symbolically as e^-x P(x) -> e^-x (P' - P) over exact rationals.
std::vector<cpp_rational> rodrigues_coefficients(int alpha, int degree) {
  std::vector<cpp_rational> p(degree + alpha + 1, cpp_rational(0));
  p.back() = 1;
  for (int step = 0; step < degree; ++step) {
    std::vector<cpp_rational> next(p.size(), cpp_rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i] -= p[i];
      if (i > 0) next[i - 1] += p[i] * static_cast<int>(i);
    }
    p = next;
  }
  cpp_rational factorial = 1;
  for (int i = 2; i <= degree; ++i) factorial *= i;
  std::vector<cpp_rational> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (static_cast<int>(i) < alpha) {
      REQUIRE(p[i] == 0);
      continue;
    }
    out.push_back(p[i] / factorial);
  }
  return out;
}

double eval_exact(const std::vector<cpp_rational>& c, double x) {
  const cpp_rational xr(x);
  cpp_rational acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * xr + *it;
  return acc.convert_to<double>();
}

// Explicit expansion sum (-1)^i C(n+a, n-i) x^i / i! in 50-digit floats.
double explicit_sum(double alpha, int degree, double x) {
  cpp_bin_float_50 sum = 0;
  const cpp_bin_float_50 a(alpha);
  const cpp_bin_float_50 xx(x);
  for (int i = 0; i <= degree; ++i) {
    cpp_bin_float_50 binom = 1;
    for (int j = 1; j <= degree - i; ++j) binom *= (a + i + j) / j;
    cpp_bin_float_50 term = binom;
    for (int j = 1; j <= i; ++j) term *= xx / j;
    sum += (i % 2 ? -term : term);
  }
  return sum.convert_to<double>();
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::parameter;
}

}  // namespace

TEST_CASE("laguerre_eval examples") {
  CHECK(laguerre_eval({0.0, 0}, 7.3) == 1.0);
  CHECK(laguerre_eval({1.0, 1}, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(laguerre_eval({0.0, 2}, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("laguerre_deriv examples") {
  CHECK(laguerre_deriv({2.0, 0}, 5.0) == 0.0);
  CHECK(laguerre_deriv({0.0, 1}, 0.4) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(laguerre_deriv({1.0, 2}, 0.0) == doctest::Approx(-3.0).epsilon(1e-15));
}

TEST_CASE("laguerre domain and parameter errors") {
  CHECK(kind_of([] { laguerre_eval({-1.0, 2}, 1.0); }) == ErrorKind::parameter);
  CHECK(kind_of([] { laguerre_eval({-1.5, 2}, 1.0); }) == ErrorKind::parameter);
  CHECK(kind_of([] { laguerre_eval({0.0, -1}, 1.0); }) == ErrorKind::parameter);
  CHECK(kind_of([] { laguerre_eval({0.0, 2}, -0.1); }) == ErrorKind::domain);
  CHECK(kind_of([] { laguerre_deriv({0.0, 2}, -0.1); }) == ErrorKind::domain);
}

TEST_CASE("recurrence agrees with exact Rodrigues coefficients for integer alpha") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> alpha_d(0, 5);
  std::uniform_int_distribution<int> degree_d(0, 30);
  std::uniform_real_distribution<double> x_d(0.0, 50.0);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const int alpha = alpha_d(rng);
    const int degree = degree_d(rng);
    const double x = x_d(rng);
    const double exact = eval_exact(rodrigues_coefficients(alpha, degree), x);
    const double got = laguerre_eval({static_cast<double>(alpha), degree}, x);
    worst = std::max(worst, std::abs(got - exact) / std::abs(exact));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("recurrence agrees with the explicit expansion for real alpha") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> alpha_d(-0.9, 5.0);
  std::uniform_int_distribution<int> degree_d(0, 30);
  std::uniform_real_distribution<double> x_d(0.0, 50.0);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const double alpha = alpha_d(rng);
    const int degree = degree_d(rng);
    const double x = x_d(rng);
    const double exact = explicit_sum(alpha, degree, x);
    worst = std::max(worst, std::abs(laguerre_eval({alpha, degree}, x) - exact) / std::abs(exact));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("second derivative matches the Rodrigues polynomial") {
  for (int alpha = 0; alpha <= 3; ++alpha)
    for (int degree = 0; degree <= 12; ++degree) {
      auto c = rodrigues_coefficients(alpha, degree);
      std::vector<cpp_rational> d2;
      for (std::size_t i = 2; i < c.size(); ++i) d2.push_back(c[i] * static_cast<int>(i * (i - 1)));
      for (double x : {0.0, 0.3, 2.5, 11.0}) {
        const double exact = d2.empty() ? 0.0 : eval_exact(d2, x);
        CHECK(laguerre_deriv2({static_cast<double>(alpha), degree}, x) ==
              doctest::Approx(exact).epsilon(1e-11).scale(1.0));
      }
    }
}

TEST_CASE("derivative identity converges at second order under h halving") {
  for (double alpha : {-0.5, 0.0, 1.3, 4.0})
    for (int degree : {1, 4, 9})
      for (double x : {0.7, 3.1, 8.0}) {
        const LaguerreParams p{alpha, degree};
        const double exact = laguerre_deriv(p, x);
        auto fd = [&](double h) { return (laguerre_eval(p, x + h) - laguerre_eval(p, x - h)) / (2 * h); };
        const double e1 = std::abs(fd(1e-2) - exact);
        const double e2 = std::abs(fd(5e-3) - exact);
        if (e1 < 1e-11) continue;  // cubic or lower: central differences are exact
        CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
      }
}

TEST_CASE("gauss_laguerre_rule examples") {
  const QuadratureRule one = gauss_laguerre_rule(0.0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

  const QuadratureRule two = gauss_laguerre_rule(0.0, 2);
  REQUIRE(two.size() == 2);
  CHECK(two.nodes[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(two.nodes[1] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(two.apply([](double x) { return x * x; }) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gauss_laguerre_rule invariants and exactness") {
  for (double alpha : {-0.75, -0.5, 0.0, 0.5, 2.0, 7.5})
    for (int npts : {1, 3, 8, 20, 40}) {
      const QuadratureRule q = gauss_laguerre_rule(alpha, npts);
      REQUIRE(q.size() == static_cast<std::size_t>(npts));
      for (std::size_t i = 0; i < q.size(); ++i) {
        CHECK(q.nodes[i] > 0.0);
        CHECK(q.weights[i] > 0.0);
        if (i > 0) CHECK(q.nodes[i] > q.nodes[i - 1]);
      }
      double sum = 0.0;
      for (double w : q.weights) sum += w;
      CHECK(sum == doctest::Approx(std::tgamma(alpha + 1.0)).epsilon(1e-12));
      // x^j integrates to Gamma(alpha + j + 1) for every j <= 2 npts - 1.
      for (int j = 0; j <= std::min(2 * npts - 1, 30); ++j) {
        const double got = q.apply([j](double x) { return std::pow(x, j); });
        CHECK(got == doctest::Approx(std::tgamma(alpha + j + 1.0)).epsilon(1e-11));
      }
    }
}

TEST_CASE("orthogonality under the quadrature rule") {
  for (double alpha : {-0.5, 0.0, 1.5, 4.0})
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; j <= 8; ++j) {
        const QuadratureRule q = gauss_laguerre_rule(alpha, i + j + 1);
        const double v = q.apply([&](double x) { return laguerre_eval({alpha, i}, x) * laguerre_eval({alpha, j}, x); });
        if (i != j) {
          CHECK(std::abs(v) <= 1e-10 * std::tgamma(alpha + i + 1.0));
        } else {
          const double norm = std::tgamma(i + alpha + 1.0) / std::tgamma(i + 1.0);
          CHECK(v == doctest::Approx(norm).epsilon(1e-10));
        }
      }
}

TEST_CASE("gauss_laguerre_rule parameter errors") {
  CHECK(kind_of([] { gauss_laguerre_rule(-1.0, 3); }) == ErrorKind::parameter);
  CHECK(kind_of([] { gauss_laguerre_rule(0.0, 0); }) == ErrorKind::parameter);
}

TEST_CASE("default node count") {
  CHECK(default_node_count(0) == 10);
  CHECK(default_node_count(7) == 13);
  CHECK(default_node_count(20) == 20);
}

TEST_CASE("exact_binomial examples and Pascal oracle") {
  CHECK(exact_binomial(0, 0) == 1);
  CHECK(exact_binomial(4, 2) == 6);
  CHECK(exact_binomial(10, 5) == 252);
  CHECK(exact_binomial(5, -1) == 0);
  CHECK(exact_binomial(5, 6) == 0);

  std::vector<std::vector<std::uint64_t>> pascal(61);
  for (int n = 0; n <= 60; ++n) {
    pascal[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
    for (int k = 0; k <= n; ++k) CHECK(exact_binomial(n, k) == pascal[n][k]);
  }
}

TEST_CASE("exact_binomial overflow is explicit") {
  CHECK(exact_binomial(67, 33) == 14226520737620288370ULL);
  CHECK(kind_of([] { exact_binomial(68, 34); }) == ErrorKind::overflow);
  CHECK(kind_of([] { exact_binomial(200, 100); }) == ErrorKind::overflow);
  CHECK(kind_of([] { checked_add(~0ULL, 1); }) == ErrorKind::overflow);
  CHECK(kind_of([] { checked_mul(1ULL << 40, 1ULL << 30); }) == ErrorKind::overflow);
  CHECK(checked_add(2, 3) == 5);
  CHECK(checked_mul(6, 7) == 42);
}
