#include "o1kepler/reps.hpp"

#include "o1kepler/error.hpp"
#include "o1kepler/specialfn.hpp"

namespace o1kepler {
namespace {

void check(int n, int sigma, int level) {
  require(n >= 2, ErrorKind::parameter, "n must be >= 2");
  require(sigma == 0 || sigma == 1, ErrorKind::parameter, "sigma must be 0 or 1");
  require(level >= 0, ErrorKind::parameter, "level must be >= 0");
}

}  // namespace

std::string to_string(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += w[i].str();
  }
  return s + ")";
}

std::uint64_t harmonic_dim(int n, int l) {
  require(n >= 2 && l >= 0, ErrorKind::parameter, "harmonic_dim: need n >= 2, l >= 0");
  return exact_binomial(l + n - 1, n - 1) - exact_binomial(l + n - 3, n - 1);
}

Weight ladder_weight(int n, int top) {
  Weight w(n, HalfInt::from_twice(-1));
  w.back() = HalfInt::from_twice(-(1 + 2 * top));
  return w;
}

KTypeDecomposition ktype_decomposition(int n, int sigma, int level) {
  check(n, sigma, level);
  KTypeDecomposition d;
  d.n = n;
  d.sigma = sigma;
  d.level = level;
  d.level_weight = ladder_weight(n, sigma + 2 * level);
  d.so2_reducible_caveat = n == 2 && sigma + 2 * level >= 1;
  for (int j = 0; j <= level; ++j) {
    const int l = sigma + 2 * j;
    d.entries.push_back({l, harmonic_dim(n, l), d.level_weight});
  }
  return d;
}

std::uint64_t level_degeneracy(int n, int sigma, int level) {
  check(n, sigma, level);
  std::uint64_t sum = 0;
  for (int j = 0; j <= level; ++j) sum = checked_add(sum, harmonic_dim(n, sigma + 2 * j));
  const std::uint64_t closed = exact_binomial(2 * level + sigma + n - 1, n - 1);
  require(sum == closed, ErrorKind::invariant,
          "level_degeneracy: harmonic sum " + std::to_string(sum) + " != binomial " + std::to_string(closed));
  return sum;
}

}  // namespace o1kepler
