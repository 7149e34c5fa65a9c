#pragma once

#include <string>
#include <vector>

#include "o1kepler/halfint.hpp"

namespace o1kepler {

/// Separated bound-state channel (n, sigma, k, l) of the n-dimensional
/// O(1)-Kepler problem. Construct through make(), which enforces the parity
/// constraint l = sigma (mod 2).
struct QuantumChannel {
  int n = 2;
  int sigma = 0;
  int k = 1;
  int l = 0;

  static QuantumChannel make(int n, int sigma, int k, int l);

  /// I = k - 1 + (l - sigma)/2
  int level() const { return k - 1 + (l - sigma) / 2; }

  /// 4 * n_I = 4I + n + 2 sigma, exact.
  int four_n_level() const { return 4 * level() + n + 2 * sigma; }

  /// n_I = I + n/4 + sigma/2
  double n_level() const { return 0.25 * four_n_level(); }

  std::string str() const;

  friend bool operator==(const QuantumChannel&, const QuantumChannel&) = default;
};

/// Throws ErrorKind::invariant when the channel is malformed.
void validate(const QuantumChannel& ch);

/// Parameters (m, l) of the radial family
///   (-1/(2 r^m) d_r r^m d_r + (l^2 + (m-1) l)/(2 r^2) - 1/r) R = E R.
/// l' = l + m/2 - 1 is a quarter-integer; it is kept as its numerator over 4.
class RadialFamilyParams {
 public:
  RadialFamilyParams(HalfInt m, HalfInt l);

  HalfInt m() const { return m_; }
  HalfInt l() const { return l_; }
  int four_lprime() const { return 2 * l_.twice() + m_.twice() - 4; }
  double lprime() const { return 0.25 * four_lprime(); }

  std::string str() const;

 private:
  HalfInt m_;
  HalfInt l_;
};

/// E_I = -(1/2)/(I + n/4 + sigma/2)^2
double kepler_level_energy(int n, int sigma, int level);

/// E_{kl} = -(1/2)/(k + l/2 + n/4 - 1)^2
double channel_energy(const QuantumChannel& ch);

/// All channels at level I, ordered by increasing l.
std::vector<QuantumChannel> channels_at_level(int n, int sigma, int level);

/// -(1/2)/(k + l')^2
double radial_family_energy(const RadialFamilyParams& p, int k);

/// The t = r^2 reduction of a Kepler channel onto the radial family:
/// m = n/2, l -> l/2.
RadialFamilyParams family_of(const QuantumChannel& ch);

}  // namespace o1kepler
