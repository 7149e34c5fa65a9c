#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "o1kepler/halfint.hpp"

namespace o1kepler {

/// A U(n) weight: n half-integers.
using Weight = std::vector<HalfInt>;

std::string to_string(const Weight& w);

/// One SO(n) constituent R_l of an energy level.
struct KTypeEntry {
  int l = 0;
  std::uint64_t dim = 1;
  Weight un_weight;  // highest weight of the U(n)-irreducible level containing R_l
};

struct KTypeDecomposition {
  int n = 2;
  int sigma = 0;
  int level = 0;
  std::vector<KTypeEntry> entries;  // l = sigma, sigma + 2, ..., sigma + 2I
  Weight level_weight;              // (-1/2, ..., -1/2, -(1/2 + sigma + 2I))
  /// For n = 2 the degree-l harmonic space (l >= 1) splits into two SO(2)
  /// characters; dimensions are still reported, irreducibility is not claimed.
  bool so2_reducible_caveat = false;
};

/// Dimension of degree-l harmonic polynomials in n variables:
/// C(l+n-1, n-1) - C(l+n-3, n-1).
std::uint64_t harmonic_dim(int n, int l);

/// (-1/2, ..., -1/2, -(1/2 + top)) with n entries.
Weight ladder_weight(int n, int top);

KTypeDecomposition ktype_decomposition(int n, int sigma, int level);

/// sum_{j<=I} harmonic_dim(n, 2j + sigma); checked against
/// C(2I + sigma + n - 1, n - 1) and reported as an invariant error on mismatch.
std::uint64_t level_degeneracy(int n, int sigma, int level);

}  // namespace o1kepler
