#include "o1kepler/normal_order.hpp"

#include <algorithm>
#include <cmath>

#include "o1kepler/error.hpp"

namespace o1kepler {
namespace {

// Creators sort before annihilators, then by mode.
bool canonical_less(const BosonLetter& a, const BosonLetter& b) {
  if (a.creator != b.creator) return a.creator;
  return a.mode < b.mode;
}

void normal_order_word(const BosonWord& w, double coeff, std::map<BosonWord, double>& out) {
  for (std::size_t p = 0; p + 1 < w.size(); ++p) {
    if (!w[p].creator && w[p + 1].creator) {
      // a_i a_j^+ = a_j^+ a_i + delta_ij
      BosonWord swapped = w;
      std::swap(swapped[p], swapped[p + 1]);
      normal_order_word(swapped, coeff, out);
      if (w[p].mode == w[p + 1].mode) {
        BosonWord contracted;
        contracted.reserve(w.size() - 2);
        contracted.insert(contracted.end(), w.begin(), w.begin() + p);
        contracted.insert(contracted.end(), w.begin() + p + 2, w.end());
        normal_order_word(contracted, coeff, out);
      }
      return;
    }
  }
  BosonWord sorted = w;
  std::stable_sort(sorted.begin(), sorted.end(), canonical_less);
  out[sorted] += coeff;
}

}  // namespace

void BosonPolynomial::add_term(const BosonWord& w, double c) { terms_[w] += c; }

BosonPolynomial BosonPolynomial::constant(double c) {
  BosonPolynomial p;
  if (c != 0.0) p.terms_[{}] = c;
  return p;
}

BosonPolynomial BosonPolynomial::create(int mode) {
  BosonPolynomial p;
  p.terms_[{BosonLetter{mode, true}}] = 1.0;
  return p;
}

BosonPolynomial BosonPolynomial::annihilate(int mode) {
  BosonPolynomial p;
  p.terms_[{BosonLetter{mode, false}}] = 1.0;
  return p;
}

BosonPolynomial BosonPolynomial::normal_ordered() const {
  std::map<BosonWord, double> out;
  for (const auto& [w, c] : terms_) normal_order_word(w, c, out);
  BosonPolynomial p;
  for (const auto& [w, c] : out)
    if (c != 0.0) p.terms_[w] = c;
  return p;
}

BosonPolynomial operator*(const BosonPolynomial& a, const BosonPolynomial& b) {
  BosonPolynomial p;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      BosonWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      p.add_term(w, ca * cb);
    }
  }
  return p;
}

BosonPolynomial operator+(const BosonPolynomial& a, const BosonPolynomial& b) {
  BosonPolynomial p = a;
  for (const auto& [w, c] : b.terms_) p.add_term(w, c);
  return p;
}

BosonPolynomial operator-(const BosonPolynomial& a, const BosonPolynomial& b) { return a + (-1.0) * b; }

BosonPolynomial operator*(double s, const BosonPolynomial& a) {
  BosonPolynomial p;
  for (const auto& [w, c] : a.terms_) p.terms_[w] = s * c;
  return p;
}

double BosonPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [w, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

BosonPolynomial commutator(const BosonPolynomial& a, const BosonPolynomial& b) {
  return (a * b - b * a).normal_ordered();
}

BosonPolynomial generator_polynomial(const GeneratorLabel& label, int n) {
  validate(label, n);
  using P = BosonPolynomial;
  using F = GeneratorLabel::Family;
  const int j = label.j;
  const int k = label.k;
  switch (label.family) {
    case F::cartan:
      return (-1.0) * (P::create(j) * P::annihilate(j) + P::constant(0.5));
    case F::hamiltonian: {
      P h = P::constant(0.5 * n);
      for (int i = 1; i <= n; ++i) h = h + P::create(i) * P::annihilate(i);
      return h;
    }
    case F::compact:
      return label.adjoint ? P::create(k) * P::annihilate(j) : P::create(j) * P::annihilate(k);
    case F::pair:
      return label.adjoint ? P::annihilate(k) * P::annihilate(j) : P::create(j) * P::create(k);
    case F::twin: {
      const double s = 1.0 / std::sqrt(2.0);
      return label.adjoint ? s * (P::annihilate(j) * P::annihilate(j)) : s * (P::create(j) * P::create(j));
    }
  }
  fail(ErrorKind::parameter, "generator_polynomial: unknown family");
}

std::optional<GeneratorExpansion> expand_in_generators(const BosonPolynomial& p, int n) {
  using F = GeneratorLabel::Family;
  const std::vector<GeneratorLabel> gens = all_generators(n);
  auto slot = [&](GeneratorLabel g) -> std::size_t {
    return static_cast<std::size_t>(std::find(gens.begin(), gens.end(), g) - gens.begin());
  };
  GeneratorExpansion e;
  e.coeffs.assign(gens.size(), 0.0);
  double constant = 0.0;
  const double sqrt2 = std::sqrt(2.0);

  const BosonPolynomial ordered = p.normal_ordered();
  for (const auto& [w, c] : ordered.terms()) {
    if (w.empty()) {
      constant += c;
      continue;
    }
    if (w.size() != 2) return std::nullopt;
    const BosonLetter x = w[0];
    const BosonLetter y = w[1];
    if (x.creator && !y.creator) {
      if (x.mode == y.mode) {
        // a_i^+ a_i = -H_i - 1/2
        e.coeffs[slot({F::cartan, x.mode, x.mode, false})] += -c;
      } else if (x.mode < y.mode) {
        e.coeffs[slot({F::compact, x.mode, y.mode, false})] += c;
      } else {
        e.coeffs[slot({F::compact, y.mode, x.mode, true})] += c;
      }
    } else if (x.creator && y.creator) {
      if (x.mode == y.mode)
        e.coeffs[slot({F::twin, x.mode, x.mode, false})] += c * sqrt2;
      else
        e.coeffs[slot({F::pair, x.mode, y.mode, false})] += c;
    } else if (!x.creator && !y.creator) {
      if (x.mode == y.mode)
        e.coeffs[slot({F::twin, x.mode, x.mode, true})] += c * sqrt2;
      else
        e.coeffs[slot({F::pair, x.mode, y.mode, true})] += c;
    } else {
      return std::nullopt;  // unreachable after normal ordering
    }
  }
  // sum_i c_i H_i carries the constant -sum_i c_i / 2.
  double cartan_constant = 0.0;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].family == F::cartan) cartan_constant += -0.5 * e.coeffs[i];
  e.identity = constant - cartan_constant;
  return e;
}

}  // namespace o1kepler
