#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>

#include "o1kepler/error.hpp"
#include "o1kepler/radial.hpp"
#include "o1kepler/twist.hpp"

using namespace o1kepler;

namespace {

QuantumChannel ch(int n, int sigma, int k, int l) { return QuantumChannel::make(n, sigma, k, l); }

// <r^{-2}> by a quadrature path unrelated to the library's moment routine.
double mean_inverse_square_oracle(const QuantumChannel& c) {
  const RadialState s = radial_normalize(c);
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([&](double r) {
    if (r <= 0.0 || r > 60.0 * std::sqrt(s.nI)) return 0.0;
    const double v = radial_eval(s, r);
    return v * v * std::pow(r, c.n - 3);
  });
}

}  // namespace

TEST_CASE("ground state n = 2") {
  const QuantumChannel g = ch(2, 0, 1, 0);
  CHECK(twist_constant(g) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(twist_constant_closed_form(g) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mean_inverse_square(radial_normalize(g)) == doctest::Approx(4.0).epsilon(1e-12));
  const TwistedState t = make_twisted(g);
  CHECK(t.scale == 0.25);
  for (double r : {0.05, 0.3, 1.0, 2.5})
    CHECK(twisted_eval(t, r) == doctest::Approx(std::sqrt(2.0) * std::exp(-r * r / 2)).epsilon(1e-12));
}

TEST_CASE("mean inverse square equals -2E and 1/n_I^2") {
  for (int n = 2; n <= 5; ++n)
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int level = 0; level <= 3; ++level)
        for (const auto& c : channels_at_level(n, sigma, level)) {
          const double m = mean_inverse_square(radial_normalize(c));
          CHECK(m == doctest::Approx(-2.0 * channel_energy(c)).epsilon(1e-10));
          CHECK(m == doctest::Approx(1.0 / (c.n_level() * c.n_level())).epsilon(1e-10));
          CHECK(m == doctest::Approx(mean_inverse_square_oracle(c)).epsilon(1e-8));
        }
}

TEST_CASE("Feynman-Hellmann: <1/r^2> = -dE/dZ for the potential -Z/r^2") {
  // Scaling r -> r / sqrt(Z) gives E(Z) = Z^2 E(1).
  for (int n = 2; n <= 4; ++n) {
    const QuantumChannel c = ch(n, 1, 2, 1);
    const double e1 = channel_energy(c);
    auto energy = [&](double z) { return z * z * e1; };
    const double h = 1e-4;
    const double dE = (energy(1 + h) - energy(1 - h)) / (2 * h);
    CHECK(mean_inverse_square(radial_normalize(c)) == doctest::Approx(-dE).epsilon(1e-9));
  }
}

TEST_CASE("twist constant agrees with the closed form and within a level") {
  for (int n = 2; n <= 5; ++n)
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int level = 0; level <= 3; ++level) {
        const auto chans = channels_at_level(n, sigma, level);
        const double first = twist_constant(chans.front());
        for (const auto& c : chans) {
          CHECK(twist_constant(c) == doctest::Approx(twist_constant_closed_form(c)).epsilon(1e-10));
          CHECK(twist_constant(c) == doctest::Approx(first).epsilon(1e-10));
        }
      }
  const auto four = channels_at_level(4, 0, 1);
  REQUIRE(four.size() == 2);
  CHECK(twist_constant(four[0]) == doctest::Approx(twist_constant(four[1])).epsilon(1e-12));
}

TEST_CASE("isometry") {
  for (int n = 2; n <= 5; ++n)
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int level = 0; level <= 3; ++level)
        for (const auto& c : channels_at_level(n, sigma, level))
          CHECK(std::abs(twisted_norm2(make_twisted(c)) - 1.0) <= 1e-10);
}

TEST_CASE("oscillator eigenvalue and residual") {
  CHECK(oscillator_eigenvalue(ch(3, 1, 3, 1)) == 6.5);
  CHECK(oscillator_eigenvalue(ch(2, 0, 1, 0)) == 1.0);
  for (int n = 2; n <= 5; ++n)
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int level = 0; level <= 3; ++level)
        for (const auto& c : channels_at_level(n, sigma, level)) {
          const TwistedState t = make_twisted(c);
          CHECK(oscillator_residual(t, default_oscillator_grid(c)) <= 1e-8);
          CHECK(oscillator_eigenvalue(c) == 2 * level + sigma + 0.5 * n);
        }
}

TEST_CASE("wrong scale leaves a visible residual") {
  TwistedState t = make_twisted(ch(3, 1, 2, 1));
  t.scale *= 1.02;
  CHECK(oscillator_residual(t, default_oscillator_grid(t.source.channel)) >= 1e-3);
}

TEST_CASE("twisted state is the normalized oscillator eigenfunction") {
  for (int n = 2; n <= 5; ++n)
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int level = 0; level <= 3; ++level)
        for (const auto& c : channels_at_level(n, sigma, level)) {
          const TwistedState t = make_twisted(c);
          for (double r : {0.1, 0.7, 1.3, 2.9}) {
            const double expected = oscillator_radial_eval(c, r);
            CHECK(std::abs(twisted_eval(t, r) - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
          }
        }
}

TEST_CASE("small-r scaling T ~ r^l") {
  for (int l = 0; l <= 4; ++l) {
    const TwistedState t = make_twisted(ch(3, l % 2, 2, l));
    const double a = twisted_eval(t, 1e-4);
    const double b = twisted_eval(t, 2e-4);
    CHECK(b / a == doctest::Approx(std::pow(2.0, l)).epsilon(1e-6));
  }
}

TEST_CASE("jets match finite differences") {
  const TwistedState t = make_twisted(ch(4, 0, 2, 2));
  const double h = 1e-4;
  for (double r : {0.4, 1.1, 2.0}) {
    const Jet j = twisted_jet(t, r);
    const double f0 = twisted_eval(t, r);
    const double fp = twisted_eval(t, r + h);
    const double fm = twisted_eval(t, r - h);
    CHECK(j.v == doctest::Approx(f0).epsilon(1e-14));
    CHECK(j.d == doctest::Approx((fp - fm) / (2 * h)).epsilon(1e-6));
    CHECK(j.dd == doctest::Approx((fp - 2 * f0 + fm) / (h * h)).epsilon(1e-4));
  }
}

TEST_CASE("domain errors") {
  const TwistedState t = make_twisted(ch(2, 0, 1, 0));
  CHECK_THROWS_AS(twisted_eval(t, 0.0), Error);
  CHECK_THROWS_AS(twisted_eval(t, -1.0), Error);
}
