#include "o1kepler/spectrum.hpp"

#include "o1kepler/error.hpp"

namespace o1kepler {
namespace {

// -(1/2)/(q/4)^2 written so that equal quarter numerators give bitwise
// equal energies.
double energy_from_four_denominator(int q) { return -8.0 / (static_cast<double>(q) * q); }

void check_n_sigma(int n, int sigma) {
  require(n >= 2, ErrorKind::parameter, "dimension n must be >= 2, got " + std::to_string(n));
  require(sigma == 0 || sigma == 1, ErrorKind::parameter,
          "parity charge sigma must be 0 or 1, got " + std::to_string(sigma));
}

}  // namespace

QuantumChannel QuantumChannel::make(int n, int sigma, int k, int l) {
  QuantumChannel ch{n, sigma, k, l};
  validate(ch);
  return ch;
}

void validate(const QuantumChannel& ch) {
  const std::string tag = "channel " + ch.str() + ": ";
  require(ch.n >= 2, ErrorKind::parameter, tag + "n must be >= 2");
  require(ch.sigma == 0 || ch.sigma == 1, ErrorKind::parameter, tag + "sigma must be 0 or 1");
  require(ch.k >= 1, ErrorKind::parameter, tag + "k must be >= 1");
  require(ch.l >= 0, ErrorKind::parameter, tag + "l must be >= 0");
  require((ch.l - ch.sigma) % 2 == 0, ErrorKind::invariant,
          tag + "parity constraint l = sigma (mod 2) violated");
}

std::string QuantumChannel::str() const {
  return "(n=" + std::to_string(n) + ",sigma=" + std::to_string(sigma) + ",k=" + std::to_string(k) +
         ",l=" + std::to_string(l) + ")";
}

RadialFamilyParams::RadialFamilyParams(HalfInt m, HalfInt l) : m_(m), l_(l) {
  require(m.twice() > 0, ErrorKind::parameter, "radial family: m must be positive, got " + m.str());
  require(l.twice() >= 0, ErrorKind::parameter,
          "radial family: l must be non-negative, got " + l.str());
}

std::string RadialFamilyParams::str() const { return "(m=" + m_.str() + ",l=" + l_.str() + ")"; }

double kepler_level_energy(int n, int sigma, int level) {
  check_n_sigma(n, sigma);
  require(level >= 0, ErrorKind::parameter, "level I must be >= 0");
  return energy_from_four_denominator(4 * level + n + 2 * sigma);
}

double channel_energy(const QuantumChannel& ch) {
  validate(ch);
  return energy_from_four_denominator(4 * ch.k + 2 * ch.l + ch.n - 4);
}

std::vector<QuantumChannel> channels_at_level(int n, int sigma, int level) {
  check_n_sigma(n, sigma);
  require(level >= 0, ErrorKind::parameter, "level I must be >= 0");
  std::vector<QuantumChannel> out;
  out.reserve(level + 1);
  for (int j = 0; j <= level; ++j) {
    const int l = sigma + 2 * j;
    out.push_back(QuantumChannel::make(n, sigma, level + 1 - j, l));
  }
  return out;
}

double radial_family_energy(const RadialFamilyParams& p, int k) {
  require(k >= 1, ErrorKind::parameter, "radial family: k must be >= 1");
  const int q = 4 * k + p.four_lprime();
  require(q > 0, ErrorKind::domain, "radial family: k + l' must be positive for " + p.str());
  return energy_from_four_denominator(q);
}

RadialFamilyParams family_of(const QuantumChannel& ch) {
  validate(ch);
  return RadialFamilyParams(HalfInt::from_twice(ch.n), HalfInt::from_twice(ch.l));
}

}  // namespace o1kepler
