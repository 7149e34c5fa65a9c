#include "o1kepler/fock.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>

#include "o1kepler/error.hpp"
#include "o1kepler/normal_order.hpp"
#include "o1kepler/reps.hpp"
#include "o1kepler/specialfn.hpp"

namespace o1kepler {

// ---------------------------------------------------------------------------
// Basis
// ---------------------------------------------------------------------------

FockBasis::FockBasis(int modes, int nmax, std::uint64_t max_count) : modes_(modes), nmax_(nmax) {
  require(modes >= 1, ErrorKind::parameter, "fock basis: need at least one mode");
  require(nmax >= 0, ErrorKind::parameter, "fock basis: Nmax must be >= 0");
  const std::uint64_t count = exact_binomial(nmax + modes, modes);
  require(count <= max_count, ErrorKind::resource,
          "fock basis: C(Nmax+n, n) = " + std::to_string(count) + " states exceeds the budget of " +
              std::to_string(max_count) + " (set KEPLER_MAX_BASIS to raise it)");

  occupations_.reserve(count * modes);
  levels_.reserve(count);
  offsets_.push_back(0);
  std::vector<int> nu(modes, 0);
  // Compositions of `level` into `modes` parts, lexicographically ascending.
  std::function<void(int, int, int)> fill = [&](int pos, int remaining, int level) {
    if (pos == modes - 1) {
      nu[pos] = remaining;
      index_.emplace(nu, levels_.size());
      occupations_.insert(occupations_.end(), nu.begin(), nu.end());
      levels_.push_back(level);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      nu[pos] = v;
      fill(pos + 1, remaining - v, level);
    }
  };
  for (int level = 0; level <= nmax; ++level) {
    fill(0, level, level);
    offsets_.push_back(levels_.size());
  }
}

std::optional<std::size_t> FockBasis::index_of(std::span<const int> occupation) const {
  auto it = index_.find(std::vector<int>(occupation.begin(), occupation.end()));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t max_basis_size() {
  if (const char* env = std::getenv("KEPLER_MAX_BASIS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    require(end != env && *end == '\0' && v > 0, ErrorKind::parameter,
            std::string("KEPLER_MAX_BASIS must be a positive integer, got '") + env + "'");
    return v;
  }
  return 2'000'000;
}

FockBasis build_basis(int n, int nmax) { return FockBasis(n, nmax, max_basis_size()); }
FockBasis build_basis(int n, int nmax, std::uint64_t max_count) { return FockBasis(n, nmax, max_count); }

// ---------------------------------------------------------------------------
// Graded operators
// ---------------------------------------------------------------------------

GradedOperator GradedOperator::adjoint() const { return {SparseMatrix(matrix.transpose()), -shift}; }

GradedOperator operator*(const GradedOperator& a, const GradedOperator& b) {
  SparseMatrix m = a.matrix * b.matrix;
  m.prune(0.0);
  return {std::move(m), a.shift + b.shift};
}

GradedOperator operator+(const GradedOperator& a, const GradedOperator& b) {
  require(a.shift == b.shift, ErrorKind::parameter, "graded operators: adding different shifts");
  return {SparseMatrix(a.matrix + b.matrix), a.shift};
}

GradedOperator operator-(const GradedOperator& a, const GradedOperator& b) {
  require(a.shift == b.shift, ErrorKind::parameter, "graded operators: subtracting different shifts");
  return {SparseMatrix(a.matrix - b.matrix), a.shift};
}

GradedOperator operator*(double s, const GradedOperator& a) { return {SparseMatrix(s * a.matrix), a.shift}; }

GradedOperator identity_operator(const FockBasis& basis) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return {std::move(id), 0};
}

bool respects_grading(const GradedOperator& op, const FockBasis& basis) {
  for (Eigen::Index r = 0; r < op.matrix.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(op.matrix, r); it; ++it) {
      if (it.value() == 0.0) continue;
      if (basis.level_of(it.row()) != basis.level_of(it.col()) + op.shift) return false;
    }
  }
  return true;
}

GradedOperator ladder_matrix(const FockBasis& basis, int mode, Ladder kind) {
  require(mode >= 1 && mode <= basis.modes(), ErrorKind::parameter,
          "ladder_matrix: mode " + std::to_string(mode) + " outside 1.." + std::to_string(basis.modes()));
  const int i = mode - 1;
  std::vector<Eigen::Triplet<double>> trips;
  std::vector<int> nu(basis.modes());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const auto s = basis.state(col);
    std::copy(s.begin(), s.end(), nu.begin());
    if (kind == Ladder::annihilate) {
      if (nu[i] == 0) continue;
      const double amp = std::sqrt(static_cast<double>(nu[i]));
      --nu[i];
      trips.emplace_back(*basis.index_of(nu), col, amp);
    } else {
      if (basis.level_of(col) == basis.nmax()) continue;  // truncated
      const double amp = std::sqrt(nu[i] + 1.0);
      ++nu[i];
      trips.emplace_back(*basis.index_of(nu), col, amp);
    }
  }
  const auto dim = static_cast<Eigen::Index>(basis.size());
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  return {std::move(m), kind == Ladder::annihilate ? -1 : 1};
}

// ---------------------------------------------------------------------------
// Generator labels
// ---------------------------------------------------------------------------

std::string GeneratorLabel::str() const {
  const std::string sj = std::to_string(j);
  const std::string sk = std::to_string(k);
  std::string s;
  switch (family) {
    case Family::cartan: return "H" + sj;
    case Family::hamiltonian: return "H";
    case Family::compact: s = "E(-e" + sj + "+e" + sk + ")"; break;
    case Family::pair: s = "E(-e" + sj + "-e" + sk + ")"; break;
    case Family::twin: s = "E(-2e" + sj + ")"; break;
  }
  return adjoint ? s + "^+" : s;
}

GeneratorLabel GeneratorLabel::parse(std::string_view text) {
  const std::string original(text);
  auto bad = [&]() -> GeneratorLabel {
    fail(ErrorKind::parameter, "unknown generator label '" + original +
                                   "' (expected H, H<i>, E(-e<j>+e<k>), E(-e<j>-e<k>), E(-2e<j>), optional ^+)");
  };
  auto read_int = [&](std::string_view& t, int& out) {
    std::size_t p = 0;
    while (p < t.size() && p < 6 && t[p] >= '0' && t[p] <= '9') ++p;
    if (p == 0) return false;
    out = std::stoi(std::string(t.substr(0, p)));
    t.remove_prefix(p);
    return true;
  };
  auto eat = [&](std::string_view& t, std::string_view prefix) {
    if (t.substr(0, prefix.size()) != prefix) return false;
    t.remove_prefix(prefix.size());
    return true;
  };

  GeneratorLabel g;
  std::string_view t = text;
  if (t.size() >= 2 && t.substr(t.size() - 2) == "^+") {
    g.adjoint = true;
    t.remove_suffix(2);
  }
  if (eat(t, "H")) {
    if (g.adjoint) return bad();
    if (t.empty()) {
      g.family = Family::hamiltonian;
      return g;
    }
    g.family = Family::cartan;
    if (!read_int(t, g.j) || !t.empty()) return bad();
    g.k = g.j;
    return g;
  }
  if (!eat(t, "E(-")) return bad();
  if (eat(t, "2e")) {
    g.family = Family::twin;
    if (!read_int(t, g.j) || !eat(t, ")") || !t.empty()) return bad();
    g.k = g.j;
    return g;
  }
  if (!eat(t, "e") || !read_int(t, g.j)) return bad();
  if (eat(t, "+e"))
    g.family = Family::compact;
  else if (eat(t, "-e"))
    g.family = Family::pair;
  else
    return bad();
  if (!read_int(t, g.k) || !eat(t, ")") || !t.empty()) return bad();
  return g;
}

int GeneratorLabel::shift() const {
  switch (family) {
    case Family::cartan:
    case Family::hamiltonian:
    case Family::compact: return 0;
    case Family::pair:
    case Family::twin: return adjoint ? -2 : 2;
  }
  return 0;
}

std::vector<int> GeneratorLabel::root(int n) const {
  std::vector<int> a(n, 0);
  const int sign = adjoint ? -1 : 1;
  switch (family) {
    case Family::cartan:
    case Family::hamiltonian: break;
    case Family::compact:
      a[j - 1] -= sign;
      a[k - 1] += sign;
      break;
    case Family::pair:
      a[j - 1] -= sign;
      a[k - 1] -= sign;
      break;
    case Family::twin: a[j - 1] -= 2 * sign; break;
  }
  return a;
}

void validate(const GeneratorLabel& g, int n) {
  const std::string tag = "generator " + g.str() + " for n=" + std::to_string(n) + ": ";
  auto in_range = [&](int x) { return x >= 1 && x <= n; };
  switch (g.family) {
    case GeneratorLabel::Family::hamiltonian: return;
    case GeneratorLabel::Family::cartan:
    case GeneratorLabel::Family::twin:
      require(in_range(g.j), ErrorKind::parameter, tag + "mode index out of range");
      return;
    case GeneratorLabel::Family::compact:
    case GeneratorLabel::Family::pair:
      require(in_range(g.j) && in_range(g.k) && g.j < g.k, ErrorKind::parameter,
              tag + "need 1 <= j < k <= n");
      return;
  }
}

std::vector<GeneratorLabel> lowering_generators(int n) {
  using F = GeneratorLabel::Family;
  std::vector<GeneratorLabel> out;
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) out.push_back({F::compact, j, k, false});
  for (int j = 1; j <= n; ++j)
    for (int k = j + 1; k <= n; ++k) out.push_back({F::pair, j, k, false});
  for (int j = 1; j <= n; ++j) out.push_back({F::twin, j, j, false});
  return out;
}

std::vector<GeneratorLabel> all_generators(int n) {
  std::vector<GeneratorLabel> out;
  for (int i = 1; i <= n; ++i) out.push_back({GeneratorLabel::Family::cartan, i, i, false});
  const auto lower = lowering_generators(n);
  out.insert(out.end(), lower.begin(), lower.end());
  for (auto g : lower) {
    g.adjoint = true;
    out.push_back(g);
  }
  return out;
}

GradedOperator generator_matrix(const FockBasis& basis, const GeneratorLabel& g, Mutation mutation) {
  const int n = basis.modes();
  validate(g, n);
  auto cr = [&](int i) { return ladder_matrix(basis, i, Ladder::create); };
  auto an = [&](int i) { return ladder_matrix(basis, i, Ladder::annihilate); };
  using F = GeneratorLabel::Family;
  switch (g.family) {
    case F::cartan:
      return (-1.0) * (cr(g.j) * an(g.j) + 0.5 * identity_operator(basis));
    case F::hamiltonian: {
      GradedOperator h = (0.5 * n) * identity_operator(basis);
      for (int i = 1; i <= n; ++i) h = h + cr(i) * an(i);
      return h;
    }
    case F::compact: return g.adjoint ? cr(g.k) * an(g.j) : cr(g.j) * an(g.k);
    case F::pair: return g.adjoint ? an(g.k) * an(g.j) : cr(g.j) * cr(g.k);
    case F::twin: {
      const bool mutated = mutation == Mutation::drop_twin_normalization && g.j == 1;
      const double s = mutated ? 1.0 : 1.0 / std::sqrt(2.0);
      return s * (g.adjoint ? an(g.j) * an(g.j) : cr(g.j) * cr(g.j));
    }
  }
  fail(ErrorKind::parameter, "generator_matrix: unknown family");
}

// ---------------------------------------------------------------------------
// Commutators
// ---------------------------------------------------------------------------

Commutator commutator(const GradedOperator& a, const GradedOperator& b, const FockBasis& basis) {
  require(std::abs(a.shift + b.shift) <= 2 * basis.nmax(), ErrorKind::parameter,
          "commutator: combined shift exceeds the truncated space");
  const int guard = basis.nmax() - std::abs(a.shift) - std::abs(b.shift);
  require(guard >= 0, ErrorKind::guard,
          "commutator: empty guard subspace for shifts " + std::to_string(a.shift) + ", " +
              std::to_string(b.shift) + " at Nmax=" + std::to_string(basis.nmax()) + "; increase Nmax");
  return {a * b - b * a, guard};
}

double max_abs_diff_on_guard(const SparseMatrix& x, const SparseMatrix& y, const FockBasis& basis,
                             int guard_level) {
  const SparseMatrix d = x - y;
  const auto col_end = static_cast<Eigen::Index>(basis.level_end(guard_level));
  double m = 0.0;
  for (Eigen::Index r = 0; r < d.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(d, r); it; ++it)
      if (it.col() < col_end) m = std::max(m, std::abs(it.value()));
  return m;
}

namespace {

SparseMatrix restrict_columns(const SparseMatrix& m, const FockBasis& basis, int guard_level) {
  const auto col_end = static_cast<Eigen::Index>(basis.level_end(guard_level));
  SparseMatrix r = m;
  r.prune([col_end](Eigen::Index, Eigen::Index col, double) { return col < col_end; });
  return r;
}

double frobenius_dot(const SparseMatrix& a, const SparseMatrix& b) { return a.cwiseProduct(b).sum(); }

// Least-squares projection of commutators onto span{candidates} on a guard
// window; Gram matrices are cached per (guard level, shift).
class SpanProjector {
 public:
  SpanProjector(const FockBasis& basis, const std::vector<GradedOperator>& gens)
      : basis_(basis), gens_(gens), identity_(identity_operator(basis)) {}

  double residual(const GradedOperator& c, int guard) {
    Window& w = window(guard, c.shift);
    const SparseMatrix target = restrict_columns(c.matrix, basis_, guard);
    if (w.members.empty()) return max_abs(target);
    Eigen::VectorXd rhs(w.members.size());
    for (std::size_t i = 0; i < w.members.size(); ++i) rhs[i] = frobenius_dot(w.members[i], target);
    const Eigen::VectorXd coef = w.solver.solve(rhs);
    SparseMatrix fit = target;
    for (std::size_t i = 0; i < w.members.size(); ++i) fit -= coef[i] * w.members[i];
    return max_abs(fit);
  }

 private:
  struct Window {
    std::vector<SparseMatrix> members;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> solver;
  };

  static double max_abs(const SparseMatrix& m) {
    double x = 0.0;
    for (Eigen::Index r = 0; r < m.outerSize(); ++r)
      for (SparseMatrix::InnerIterator it(m, r); it; ++it) x = std::max(x, std::abs(it.value()));
    return x;
  }

  Window& window(int guard, int shift) {
    const auto key = std::make_pair(guard, shift);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Window w;
    for (const auto& g : gens_)
      if (g.shift == shift) w.members.push_back(restrict_columns(g.matrix, basis_, guard));
    if (shift == 0) w.members.push_back(restrict_columns(identity_.matrix, basis_, guard));
    const auto m = static_cast<Eigen::Index>(w.members.size());
    Eigen::MatrixXd gram(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) gram(i, j) = gram(j, i) = frobenius_dot(w.members[i], w.members[j]);
    if (m > 0) w.solver.compute(gram);
    return cache_.emplace(key, std::move(w)).first->second;
  }

  const FockBasis& basis_;
  const std::vector<GradedOperator>& gens_;
  GradedOperator identity_;
  std::map<std::pair<int, int>, Window> cache_;
};

json weight_json(const std::vector<double>& w) {
  json j = json::array();
  for (double x : w) j.push_back(x);
  return j;
}

json weight_json(const Weight& w) {
  json j = json::array();
  for (const auto& x : w) j.push_back(x.value());
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// sp(2n, R) verification
// ---------------------------------------------------------------------------

VerificationReport verify_sp_algebra(int n, int nmax, double tol, Mutation mutation) {
  require(n >= 1, ErrorKind::parameter, "verify_sp_algebra: n must be >= 1");
  require(nmax >= 4, ErrorKind::guard,
          "verify_sp_algebra: Nmax=" + std::to_string(nmax) +
              " leaves no guard subspace for double shifts; need Nmax >= 4");
  const FockBasis basis = build_basis(n, nmax);
  const std::vector<GeneratorLabel> labels = all_generators(n);
  std::vector<GradedOperator> mats;
  std::vector<BosonPolynomial> polys;
  for (const auto& g : labels) {
    mats.push_back(generator_matrix(basis, g, mutation));
    polys.push_back(generator_polynomial(g, n));
  }
  const GradedOperator id = identity_operator(basis);
  const json base = {{"n", n}, {"nmax", nmax}};
  auto with = [&](json extra) {
    json p = base;
    p.update(extra);
    return p;
  };

  VerificationReport rep;
  rep.suite = "algebra";
  rep.notes.push_back(
      "The listed E(alpha) carry negative roots and act as lowering operators; their adjoints E(alpha)^+ are "
      "the raising operators.");
  rep.notes.push_back("Identities are checked on guard subspaces: columns of level <= Nmax - |dA| - |dB|.");
  if (mutation != Mutation::none) rep.notes.push_back("MUTATION ACTIVE: E(-2e1) built without 1/sqrt(2).");

  // Grading and adjointness.
  bool graded = true;
  std::string bad_grading;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!respects_grading(mats[i], basis) || mats[i].shift != labels[i].shift()) {
      graded = false;
      bad_grading = labels[i].str();
    }
  }
  rep.add_flag("grading", base, "every generator maps level N to N + shift",
               graded ? json("ok") : json("violated by " + bad_grading), graded);

  double adj_dev = 0.0;
  std::string adj_worst = "none";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i].is_root() || labels[i].adjoint) continue;
    GeneratorLabel a = labels[i];
    a.adjoint = true;
    const auto j = std::find(labels.begin(), labels.end(), a) - labels.begin();
    const SparseMatrix t = mats[i].matrix.transpose();
    const double d = max_abs_diff_on_guard(mats[j].matrix, t, basis, nmax);
    if (d > adj_dev) adj_dev = d, adj_worst = labels[i].str();
  }
  rep.add("adjointness", with({{"worst", adj_worst}}), "matrix(E^+) = transpose(matrix(E))", adj_dev, adj_dev,
          tol);

  // Hamiltonian: H = -sum H_i, diagonal with N + n/2 on level N.
  const GradedOperator ham = generator_matrix(basis, {GeneratorLabel::Family::hamiltonian, 1, 1, false});
  GradedOperator sum_h = ham;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i].family == GeneratorLabel::Family::cartan) sum_h = sum_h + mats[i];
  const double ham_id = max_abs_diff_on_guard(sum_h.matrix, SparseMatrix(ham.matrix.rows(), ham.matrix.cols()),
                                              basis, nmax);
  rep.add("hamiltonian_equals_minus_sum_cartan", base, 0.0, ham_id, ham_id, tol);

  double ham_spec = 0.0;
  {
    Eigen::VectorXd expect(basis.size());
    for (std::size_t s = 0; s < basis.size(); ++s) expect[s] = basis.level_of(s) + 0.5 * n;
    SparseMatrix diag(ham.matrix.rows(), ham.matrix.cols());
    std::vector<Eigen::Triplet<double>> trips;
    for (std::size_t s = 0; s < basis.size(); ++s) trips.emplace_back(s, s, expect[s]);
    diag.setFromTriplets(trips.begin(), trips.end());
    ham_spec = max_abs_diff_on_guard(ham.matrix, diag, basis, nmax);
  }
  rep.add("hamiltonian_spectrum", base, "diagonal N + n/2 on level N", ham_spec, ham_spec, tol);

  // (i) Cartan operators commute.
  double cartan_dev = 0.0;
  std::string cartan_worst = "none";
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Commutator c = commutator(mats[i], mats[j], basis);
      const double d = max_abs_diff_on_guard(c.op.matrix, SparseMatrix(c.op.matrix.rows(), c.op.matrix.cols()),
                                             basis, c.guard_level);
      if (d > cartan_dev) cartan_dev = d, cartan_worst = labels[i].str() + "," + labels[j].str();
    }
  rep.add("cartan_commute", with({{"worst_pair", cartan_worst}}), 0.0, cartan_dev, cartan_dev, tol);

  // (ii) [H_i, E_alpha] = alpha_i E_alpha, matrix path and normal-ordering oracle.
  double root_dev = 0.0;
  double root_oracle_dev = 0.0;
  std::string root_worst = "none";
  for (int i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < labels.size(); ++e) {
      if (!labels[e].is_root()) continue;
      const double a_i = labels[e].root(n)[i];
      const Commutator c = commutator(mats[i], mats[e], basis);
      const double d = max_abs_diff_on_guard(c.op.matrix, (a_i * mats[e]).matrix, basis, c.guard_level);
      if (d > root_dev) root_dev = d, root_worst = labels[i].str() + "," + labels[e].str();
      const BosonPolynomial diff = commutator(polys[i], polys[e]) - a_i * polys[e];
      root_oracle_dev = std::max(root_oracle_dev, diff.normal_ordered().max_abs_coeff());
    }
  }
  rep.add("root_action", with({{"worst_pair", root_worst}}), "[H_i, E_alpha] = alpha_i E_alpha", root_dev,
          root_dev, tol);
  rep.add("root_action_normal_ordering", base, "[H_i, E_alpha] - alpha_i E_alpha = 0 symbolically",
          root_oracle_dev, root_oracle_dev, tol);

  // (iii) [E_alpha, E_alpha^+] in the Cartan span, coefficients from the oracle.
  for (std::size_t e = 0; e < labels.size(); ++e) {
    if (!labels[e].is_root() || labels[e].adjoint) continue;
    GeneratorLabel adj = labels[e];
    adj.adjoint = true;
    const auto ea = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), adj) - labels.begin());
    const auto expansion = expand_in_generators(commutator(polys[e], polys[ea]), n);
    json coeffs = json::object();
    bool cartan_only = expansion.has_value() && std::abs(expansion->identity) <= tol;
    GradedOperator predicted{SparseMatrix(basis.size(), basis.size()), 0};
    if (expansion) {
      for (std::size_t g = 0; g < labels.size(); ++g) {
        const double c = expansion->coeffs[g];
        if (c == 0.0) continue;
        if (labels[g].family != GeneratorLabel::Family::cartan) cartan_only = false;
        coeffs[labels[g].str()] = c;
        predicted = predicted + c * mats[g];
      }
    }
    const Commutator c = commutator(mats[e], mats[ea], basis);
    const double d = cartan_only ? max_abs_diff_on_guard(c.op.matrix, predicted.matrix, basis, c.guard_level)
                                 : std::numeric_limits<double>::infinity();
    rep.add("cartan_bracket " + labels[e].str(), with({{"root", labels[e].root(n)}}), coeffs,
            "matrix commutator on guard subspace", d, tol);
  }

  // (iv) Closure and structure constants over all pairs.
  SpanProjector projector(basis, mats);
  double closure_dev = 0.0;
  double struct_dev = 0.0;
  std::string closure_worst = "none";
  std::string struct_worst = "none";
  bool oracle_closed = true;
  for (std::size_t a = 0; a < labels.size(); ++a) {
    for (std::size_t b = a + 1; b < labels.size(); ++b) {
      const Commutator c = commutator(mats[a], mats[b], basis);
      const double r = projector.residual(c.op, c.guard_level);
      if (r > closure_dev) closure_dev = r, closure_worst = labels[a].str() + "," + labels[b].str();

      const auto expansion = expand_in_generators(commutator(polys[a], polys[b]), n);
      if (!expansion) {
        oracle_closed = false;
        struct_dev = std::numeric_limits<double>::infinity();
        struct_worst = labels[a].str() + "," + labels[b].str();
        continue;
      }
      GradedOperator predicted{SparseMatrix(expansion->identity * id.matrix), c.op.shift};
      for (std::size_t g = 0; g < labels.size(); ++g) {
        const double k = expansion->coeffs[g];
        if (k == 0.0) continue;
        predicted.matrix += k * mats[g].matrix;
      }
      const double d = max_abs_diff_on_guard(c.op.matrix, predicted.matrix, basis, c.guard_level);
      if (d > struct_dev) struct_dev = d, struct_worst = labels[a].str() + "," + labels[b].str();
    }
  }
  rep.add("closure", with({{"generators", labels.size()}, {"worst_pair", closure_worst}}),
          "every [X, Y] in span{generators, 1}", "least-squares residual on guard subspace", closure_dev, tol);
  rep.add("structure_constants_vs_normal_ordering",
          with({{"worst_pair", struct_worst}, {"oracle_closed", oracle_closed}}),
          "normal-ordering expansion", "matrix commutator", struct_dev, tol);
  return rep;
}

// ---------------------------------------------------------------------------
// Highest weights
// ---------------------------------------------------------------------------

std::map<int, std::uint64_t> level_angular_content(const FockBasis& basis, int level) {
  const int n = basis.modes();
  require(n >= 2, ErrorKind::parameter, "level_angular_content: need n >= 2");
  require(level >= 0 && level <= basis.nmax(), ErrorKind::parameter, "level_angular_content: level out of range");
  const auto b = static_cast<Eigen::Index>(basis.level_begin(level));
  const auto sz = static_cast<Eigen::Index>(basis.level_end(level)) - b;
  Eigen::MatrixXd casimir = Eigen::MatrixXd::Zero(sz, sz);
  for (int j = 1; j <= n; ++j) {
    for (int k = j + 1; k <= n; ++k) {
      const GradedOperator ang = ladder_matrix(basis, j, Ladder::create) * ladder_matrix(basis, k, Ladder::annihilate) -
                                 ladder_matrix(basis, k, Ladder::create) * ladder_matrix(basis, j, Ladder::annihilate);
      const Eigen::MatrixXd blk = Eigen::MatrixXd(ang.matrix.block(b, b, sz, sz));
      casimir += blk * blk;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(casimir, Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorKind::numerical, "level_angular_content: eigensolver failed");
  std::map<int, std::uint64_t> content;
  for (Eigen::Index i = 0; i < sz; ++i) {
    // eigenvalue -l(l + n - 2)
    const double q = -es.eigenvalues()[i];
    const double l = 0.5 * (-(n - 2.0) + std::sqrt((n - 2.0) * (n - 2.0) + 4.0 * std::max(q, 0.0)));
    const long rounded = std::lround(l);
    require(std::abs(l - rounded) < 1e-6, ErrorKind::numerical,
            "level_angular_content: Casimir eigenvalue " + std::to_string(-q) + " is not of the form -l(l+n-2)");
    ++content[static_cast<int>(rounded)];
  }
  return content;
}

VerificationReport highest_weight_report(int n, int parity, const FockBasis& basis, double tol) {
  require(basis.modes() == n, ErrorKind::parameter, "highest_weight_report: basis has a different mode count");
  require(parity == 0 || parity == 1, ErrorKind::parameter, "highest_weight_report: parity must be 0 or 1");
  const int nmax = basis.nmax();
  require(nmax >= parity + 2, ErrorKind::guard,
          "highest_weight_report: need Nmax >= parity + 2, got Nmax=" + std::to_string(nmax));

  const auto dim = static_cast<Eigen::Index>(basis.size());
  const json base = {{"n", n}, {"parity", parity}, {"nmax", nmax}};
  auto with = [&](json extra) {
    json p = base;
    p.update(extra);
    return p;
  };
  const std::vector<GeneratorLabel> labels = all_generators(n);
  std::vector<GradedOperator> mats;
  for (const auto& g : labels) mats.push_back(generator_matrix(basis, g));
  const GradedOperator create_last = ladder_matrix(basis, n, Ladder::create);

  VerificationReport rep;
  rep.suite = "highest_weight";
  rep.notes.push_back("Raising operators are the adjoints E(alpha)^+ of the listed lowering E(alpha).");

  // (a_n^+)^N |Omega>, normalized.
  auto ladder_top = [&](int level) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v[0] = 1.0;
    for (int s = 0; s < level; ++s) v = create_last.matrix * v;
    return Eigen::VectorXd(v / v.norm());
  };
  auto weight_of = [&](const Eigen::VectorXd& v, double& residual) {
    std::vector<double> w(n);
    residual = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd hv = mats[i].matrix * v;
      w[i] = v.dot(hv);
      residual = std::max(residual, (hv - w[i] * v).cwiseAbs().maxCoeff());
    }
    return w;
  };

  // (i) + (ii) for the module's highest-weight vector.
  const Eigen::VectorXd top = ladder_top(parity);
  double annihilation = 0.0;
  std::string worst = "none";
  for (std::size_t g = 0; g < labels.size(); ++g) {
    if (!labels[g].is_root() || !labels[g].adjoint) continue;
    const double d = (mats[g].matrix * top).cwiseAbs().maxCoeff();
    if (d > annihilation) annihilation = d, worst = labels[g].str();
  }
  rep.add("highest_weight_vector_annihilated", with({{"vector", "(a_n^+)^parity |Omega>"}, {"worst", worst}}),
          0.0, annihilation, annihilation, tol);

  {
    double eig_res = 0.0;
    const std::vector<double> w = weight_of(top, eig_res);
    const Weight expect = ladder_weight(n, parity);
    double dev = eig_res;
    for (int i = 0; i < n; ++i) dev = std::max(dev, std::abs(w[i] - expect[i].value()));
    rep.add("highest_weight", base, weight_json(expect), weight_json(w), dev, tol);
  }

  // (iii) U(n) highest-weight vectors per level.
  for (int level = parity; level <= nmax; level += 2) {
    const Eigen::VectorXd v = ladder_top(level);
    double dev = 0.0;
    for (std::size_t g = 0; g < labels.size(); ++g)
      if (labels[g].family == GeneratorLabel::Family::compact && labels[g].adjoint)
        dev = std::max(dev, (mats[g].matrix * v).cwiseAbs().maxCoeff());
    double eig_res = 0.0;
    const std::vector<double> w = weight_of(v, eig_res);
    const Weight expect = ladder_weight(n, level);
    dev = std::max(dev, eig_res);
    for (int i = 0; i < n; ++i) dev = std::max(dev, std::abs(w[i] - expect[i].value()));
    rep.add("level_highest_weight N=" + std::to_string(level), with({{"level", level}}), weight_json(expect),
            weight_json(w), dev, tol);
  }

  // (iv) parity invariance: all generators have even shift and no entry
  // connects levels of different parity.
  double leak = 0.0;
  for (const auto& m : mats)
    for (Eigen::Index r = 0; r < m.matrix.outerSize(); ++r)
      for (SparseMatrix::InnerIterator it(m.matrix, r); it; ++it)
        if ((basis.level_of(it.row()) - basis.level_of(it.col())) % 2 != 0) leak = std::max(leak, std::abs(it.value()));
  rep.add("parity_subspaces_invariant", base, 0.0, leak, leak, tol);

  // (v) cyclic generation by the lowering E's up to level Nmax - 2.
  {
    const int top_level = nmax - 2;
    std::vector<std::size_t> lowering;
    for (std::size_t g = 0; g < labels.size(); ++g)
      if (labels[g].is_root() && !labels[g].adjoint) lowering.push_back(g);
    std::vector<Eigen::VectorXd> span;
    auto absorb = [&](Eigen::VectorXd x) {
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& q : span) x -= q.dot(x) * q;
      const double norm = x.norm();
      if (norm <= 1e-10) return false;
      span.push_back(x / norm);
      return true;
    };
    absorb(top);
    // Vectors stay homogeneous in level; applying shift-0 and shift-2
    // operators to levels <= Nmax - 2 never touches the truncation.
    for (std::size_t head = 0; head < span.size(); ++head) {
      const Eigen::VectorXd x = span[head];
      Eigen::Index lead = 0;
      x.cwiseAbs().maxCoeff(&lead);
      const int lvl = basis.level_of(lead);
      for (const std::size_t g : lowering) {
        if (lvl + mats[g].shift > top_level) continue;
        absorb(mats[g].matrix * x);
      }
    }
    std::size_t expected = 0;
    for (int level = parity; level <= top_level; level += 2) expected += basis.level_end(level) - basis.level_begin(level);
    rep.add_flag("cyclic_generation", with({{"up_to_level", top_level}}), expected, span.size(),
                 span.size() == expected);
  }

  // SO(n) K-type ladder of each level: l = N, N-2, ..., each with multiplicity
  // harmonic_dim(n, l).
  if (n >= 2) {
    for (int level = parity; level <= nmax; level += 2) {
      const auto content = level_angular_content(basis, level);
      json expect = json::object();
      json actual = json::object();
      bool ok = true;
      std::map<int, std::uint64_t> want;
      for (int l = level; l >= 0; l -= 2) want[l] = harmonic_dim(n, l);
      for (const auto& [l, d] : want) expect[std::to_string(l)] = d;
      for (const auto& [l, d] : content) actual[std::to_string(l)] = d;
      ok = content == want && content.size() == static_cast<std::size_t>(level / 2 + 1);
      rep.add_flag("ktype_ladder N=" + std::to_string(level), with({{"level", level}}), expect, actual, ok);
    }
  }
  return rep;
}

}  // namespace o1kepler
