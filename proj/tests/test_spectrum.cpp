#include <doctest.h>

#include "o1kepler/error.hpp"
#include "o1kepler/spectrum.hpp"

using namespace o1kepler;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::parameter;
}

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

}  // namespace

TEST_CASE("half-integers") {
  CHECK(HalfInt(3).twice() == 6);
  CHECK(h(3).value() == 1.5);
  CHECK(h(3).str() == "3/2");
  CHECK(h(-3).str() == "-3/2");
  CHECK(h(4).str() == "2");
  CHECK(h(1) + h(1) == HalfInt(1));
  CHECK(h(1) < h(2));
  CHECK(HalfInt::parse("3/2") == h(3));
  CHECK(HalfInt::parse("1.5") == h(3));
  CHECK(HalfInt::parse("2") == h(4));
  CHECK(HalfInt::parse("4/1") == h(8));
  CHECK(HalfInt::parse("-1/2") == h(-1));
  for (const char* bad : {"", "x", "1/3", "0.25", "1/", "/2", "1.5x"})
    CHECK(kind_of([&] { HalfInt::parse(bad); }) == ErrorKind::parameter);
}

TEST_CASE("kepler_level_energy examples") {
  CHECK(kepler_level_energy(2, 0, 0) == -2.0);
  CHECK(kepler_level_energy(4, 0, 0) == -0.5);
  CHECK(kepler_level_energy(2, 1, 0) == -0.5);
}

TEST_CASE("kepler_level_energy errors") {
  CHECK(kind_of([] { kepler_level_energy(1, 0, 0); }) == ErrorKind::parameter);
  CHECK(kind_of([] { kepler_level_energy(3, 2, 0); }) == ErrorKind::parameter);
  CHECK(kind_of([] { kepler_level_energy(3, -1, 0); }) == ErrorKind::parameter);
  CHECK(kind_of([] { kepler_level_energy(3, 0, -1); }) == ErrorKind::parameter);
}

TEST_CASE("channel_energy examples") {
  CHECK(channel_energy(QuantumChannel::make(2, 0, 1, 0)) == -2.0);
  CHECK(channel_energy(QuantumChannel::make(2, 0, 1, 2)) == doctest::Approx(-2.0 / 9.0).epsilon(1e-15));
  CHECK(channel_energy(QuantumChannel::make(3, 1, 2, 1)) == doctest::Approx(-2.0 / 20.25).epsilon(1e-15));
}

TEST_CASE("channel validation") {
  CHECK(kind_of([] { QuantumChannel::make(3, 0, 1, 1); }) == ErrorKind::invariant);
  CHECK(kind_of([] { QuantumChannel::make(3, 1, 1, 0); }) == ErrorKind::invariant);
  CHECK(kind_of([] { QuantumChannel::make(3, 0, 0, 0); }) == ErrorKind::parameter);
  CHECK(kind_of([] { QuantumChannel::make(1, 0, 1, 0); }) == ErrorKind::parameter);
  CHECK(kind_of([] { QuantumChannel::make(3, 0, 1, -2); }) == ErrorKind::parameter);
  QuantumChannel bad;
  bad.n = 3;
  bad.sigma = 1;
  bad.l = 2;
  CHECK(kind_of([&] { channel_energy(bad); }) == ErrorKind::invariant);
}

TEST_CASE("channels_at_level examples") {
  auto at = [](int sigma, int level) {
    std::vector<std::pair<int, int>> out;
    for (const auto& ch : channels_at_level(3, sigma, level)) out.emplace_back(ch.k, ch.l);
    return out;
  };
  CHECK(at(0, 1) == std::vector<std::pair<int, int>>{{2, 0}, {1, 2}});
  CHECK(at(1, 0) == std::vector<std::pair<int, int>>{{1, 1}});
  CHECK(at(0, 2) == std::vector<std::pair<int, int>>{{3, 0}, {2, 2}, {1, 4}});
}

TEST_CASE("radial_family_energy examples and errors") {
  CHECK(radial_family_energy({HalfInt(2), HalfInt(0)}, 1) == -0.5);
  CHECK(radial_family_energy({HalfInt(1), HalfInt(0)}, 1) == -2.0);
  CHECK(radial_family_energy({HalfInt(2), HalfInt(1)}, 1) == -0.125);
  CHECK(kind_of([] { radial_family_energy({HalfInt(1), HalfInt(0)}, 0); }) == ErrorKind::parameter);
  CHECK(kind_of([] { RadialFamilyParams(HalfInt(0), HalfInt(0)); }) == ErrorKind::parameter);
  CHECK(kind_of([] { RadialFamilyParams(HalfInt(1), h(-1)); }) == ErrorKind::parameter);
}

TEST_CASE("lprime is exact") {
  for (int m = 1; m <= 12; ++m)
    for (int l = 0; l <= 12; ++l) {
      const RadialFamilyParams p(h(m), h(l));
      CHECK(p.four_lprime() == 2 * l + m - 4);
      CHECK(p.lprime() == 0.5 * l + 0.25 * m - 1.0);
    }
}

TEST_CASE("channel energies equal the radial family with m = n/2, l = l/2") {
  for (int n = 2; n <= 9; ++n)
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int l = sigma; l <= 8; l += 2)
        for (int k = 1; k <= 6; ++k) {
          const QuantumChannel ch = QuantumChannel::make(n, sigma, k, l);
          const RadialFamilyParams p = family_of(ch);
          CHECK(p.m() == h(n));
          CHECK(p.l() == h(l));
          CHECK(channel_energy(ch) == radial_family_energy(p, k));
        }
}

TEST_CASE("level collapse and monotonicity") {
  for (int n = 2; n <= 9; ++n)
    for (int sigma = 0; sigma <= 1; ++sigma) {
      double previous = -1e300;
      for (int level = 0; level <= 12; ++level) {
        const double e = kepler_level_energy(n, sigma, level);
        CHECK(e < 0.0);
        CHECK(e > previous);
        previous = e;
        const auto chans = channels_at_level(n, sigma, level);
        CHECK(chans.size() == static_cast<std::size_t>(level + 1));
        for (std::size_t i = 0; i < chans.size(); ++i) {
          CHECK(chans[i].level() == level);
          CHECK(channel_energy(chans[i]) == e);
          if (i > 0) CHECK(chans[i].l > chans[i - 1].l);
        }
      }
    }
}

TEST_CASE("level formula E = -1/2 / (I + n/4 + sigma/2)^2") {
  for (int n = 2; n <= 9; ++n)
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int level = 0; level <= 10; ++level) {
        const double d = level + n / 4.0 + sigma / 2.0;
        CHECK(kepler_level_energy(n, sigma, level) == doctest::Approx(-0.5 / (d * d)).epsilon(1e-15));
      }
}
