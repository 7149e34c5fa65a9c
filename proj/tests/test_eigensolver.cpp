#include <doctest.h>

#include <cmath>

#include "o1kepler/eigensolver.hpp"
#include "o1kepler/error.hpp"

using namespace o1kepler;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

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

TEST_CASE("radial family examples") {
  struct Example {
    RadialFamilyParams p;
    std::vector<double> energies;
  };
  const std::vector<Example> examples = {
      {{h(4), h(0)}, {-0.5, -0.125, -1.0 / 18.0}},
      {{h(2), h(0)}, {-2.0, -2.0 / 9.0, -2.0 / 25.0}},
      {{h(3), h(1)}, {-0.5 / 1.5625, -0.5 / 5.0625, -0.5 / 10.5625}},
  };
  for (const auto& ex : examples) {
    const RadialSpectrum s = solve_radial_family(ex.p, SolverConfig::defaults_for(ex.p, 3));
    REQUIRE(s.eigenvalues.size() == 3);
    for (int k = 1; k <= 3; ++k) {
      CHECK(ex.energies[k - 1] == doctest::Approx(radial_family_energy(ex.p, k)).epsilon(1e-15));
      CHECK(rel(s.eigenvalues[k - 1], ex.energies[k - 1]) <= 1e-6);
    }
    CHECK(s.per_grid.size() == 3);
    CHECK_FALSE(s.warning.has_value());
  }
}

TEST_CASE("Kepler channels reproduce the level energies") {
  for (int n = 2; n <= 4; ++n)
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int l = sigma; l <= sigma + 2; l += 2) {
        const QuantumChannel c = QuantumChannel::make(n, sigma, 1, l);
        const RadialSpectrum s = solve_kepler_channel(c, SolverConfig::defaults_for(family_of(c), 3));
        for (int k = 1; k <= 3; ++k)
          CHECK(rel(s.eigenvalues[k - 1], channel_energy(QuantumChannel::make(n, sigma, k, l))) <= 1e-6);
      }
}

TEST_CASE("raw grids converge at second order") {
  const RadialFamilyParams p(h(4), h(2));
  const double exact = radial_family_energy(p, 1);
  const double rmax = 60.0;
  const double e1 = discrete_eigenvalues(p, rmax, 2000, 1)[0] - exact;
  const double e2 = discrete_eigenvalues(p, rmax, 4000, 1)[0] - exact;
  const double e3 = discrete_eigenvalues(p, rmax, 8000, 1)[0] - exact;
  CHECK(std::log2(std::abs(e1 / e2)) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(std::log2(std::abs(e2 / e3)) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("eigenvectors overlap the closed form") {
  for (const RadialFamilyParams& p : {RadialFamilyParams(h(2), h(0)), RadialFamilyParams(h(4), h(2))}) {
    const SolverConfig cfg = SolverConfig::defaults_for(p, 2);
    CHECK(eigenvector_overlap(p, cfg, 1) >= 1.0 - 1e-6);
    CHECK(eigenvector_overlap(p, cfg, 2) >= 1.0 - 1e-6);
  }
}

TEST_CASE("centrifugal identity holds exactly") {
  for (int m = 1; m <= 12; ++m)
    for (int l = 0; l <= 12; ++l) {
      const RadialFamilyParams p(h(m), h(l));
      CHECK(centrifugal_sixteenths(p) == lprime_product_sixteenths(p));
      const double lp = p.lprime();
      CHECK(lprime_product_sixteenths(p) == std::lround(16 * lp * (lp + 1)));
    }
}

TEST_CASE("config validation") {
  const RadialFamilyParams p(h(2), h(0));
  SolverConfig cfg = SolverConfig::defaults_for(p, 3);
  CHECK(cfg.npoints == 16000);
  CHECK(cfg.rmax == doctest::Approx(40.0 * std::pow(3 + p.lprime() + 1, 2)));
  SolverConfig bad = cfg;
  bad.npoints = 100;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::parameter);
  bad = cfg;
  bad.refinement_levels = 1;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::parameter);
  bad = cfg;
  bad.num_levels = 0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::parameter);
  bad = cfg;
  bad.rmin = bad.rmax * 2;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::parameter);
}

TEST_CASE("a box too small to hold the states is an accuracy error") {
  const RadialFamilyParams p(h(4), h(0));
  SolverConfig cfg = SolverConfig::defaults_for(p, 3);
  cfg.rmax = 3.0;
  cfg.rmin = cfg.rmax / cfg.npoints;
  CHECK(kind_of([&] { solve_radial_family(p, cfg); }) == ErrorKind::accuracy);
}
