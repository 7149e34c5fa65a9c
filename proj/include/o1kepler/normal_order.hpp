#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "o1kepler/fock.hpp"

namespace o1kepler {

/// Symbolic polynomials in bosonic a_i, a_i^+ reduced with [a_i, a_j^+] = delta_ij.
/// Independent of the matrix realization; it supplies the structure constants
/// the matrix path is checked against.
struct BosonLetter {
  int mode = 1;
  bool creator = false;

  auto operator<=>(const BosonLetter&) const = default;
};

using BosonWord = std::vector<BosonLetter>;

class BosonPolynomial {
 public:
  static BosonPolynomial constant(double c);
  static BosonPolynomial create(int mode);
  static BosonPolynomial annihilate(int mode);

  const std::map<BosonWord, double>& terms() const { return terms_; }

  /// Canonical form: creators (ascending mode) to the left of annihilators
  /// (ascending mode), zero coefficients dropped.
  BosonPolynomial normal_ordered() const;

  friend BosonPolynomial operator*(const BosonPolynomial& a, const BosonPolynomial& b);
  friend BosonPolynomial operator+(const BosonPolynomial& a, const BosonPolynomial& b);
  friend BosonPolynomial operator-(const BosonPolynomial& a, const BosonPolynomial& b);
  friend BosonPolynomial operator*(double s, const BosonPolynomial& a);

  /// Largest |coefficient|; 0 for the zero polynomial.
  double max_abs_coeff() const;

 private:
  void add_term(const BosonWord& w, double c);
  std::map<BosonWord, double> terms_;
};

/// Normal-ordered [a, b].
BosonPolynomial commutator(const BosonPolynomial& a, const BosonPolynomial& b);

/// The generator written in a, a^+ (same conventions as generator_matrix).
BosonPolynomial generator_polynomial(const GeneratorLabel& label, int n);

/// Coefficients of a normal-ordered quadratic polynomial in the basis
/// all_generators(n) plus the identity.
struct GeneratorExpansion {
  std::vector<double> coeffs;
  double identity = 0.0;
};

/// nullopt when the polynomial has a term outside span{generators, 1}.
std::optional<GeneratorExpansion> expand_in_generators(const BosonPolynomial& p, int n);

}  // namespace o1kepler
