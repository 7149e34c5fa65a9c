#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/SparseCore>

#include "o1kepler/report.hpp"

namespace o1kepler {

/// Occupation multi-indices nu of n modes with |nu| <= Nmax, ordered by
/// (|nu|, lexicographic nu). Index 0 is the vacuum |Omega>.
class FockBasis {
 public:
  FockBasis(int modes, int nmax, std::uint64_t max_count);

  int modes() const { return modes_; }
  int nmax() const { return nmax_; }
  std::size_t size() const { return levels_.size(); }

  std::span<const int> state(std::size_t i) const {
    return {occupations_.data() + i * modes_, static_cast<std::size_t>(modes_)};
  }
  int level_of(std::size_t i) const { return levels_[i]; }

  /// States of level N occupy [level_begin(N), level_end(N)).
  std::size_t level_begin(int level) const { return offsets_.at(level); }
  std::size_t level_end(int level) const { return offsets_.at(level + 1); }

  std::optional<std::size_t> index_of(std::span<const int> occupation) const;

 private:
  int modes_;
  int nmax_;
  std::vector<int> occupations_;
  std::vector<int> levels_;
  std::vector<std::size_t> offsets_;
  std::map<std::vector<int>, std::size_t> index_;
};

/// Basis size cap: KEPLER_MAX_BASIS if set, otherwise 2,000,000.
std::uint64_t max_basis_size();

/// Throws ErrorKind::resource (reporting the count) when C(Nmax+n, n)
/// exceeds the cap.
FockBasis build_basis(int n, int nmax);
FockBasis build_basis(int n, int nmax, std::uint64_t max_count);

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Matrix on basis ordinals, nonzero only between levels |row| = |col| + shift.
struct GradedOperator {
  SparseMatrix matrix;
  int shift = 0;

  GradedOperator adjoint() const;
  friend GradedOperator operator*(const GradedOperator& a, const GradedOperator& b);
  friend GradedOperator operator+(const GradedOperator& a, const GradedOperator& b);
  friend GradedOperator operator-(const GradedOperator& a, const GradedOperator& b);
  friend GradedOperator operator*(double s, const GradedOperator& a);
};

GradedOperator identity_operator(const FockBasis& basis);

/// True when every stored nonzero connects levels differing by `shift`.
bool respects_grading(const GradedOperator& op, const FockBasis& basis);

enum class Ladder { annihilate, create };

/// a_i |nu> = sqrt(nu_i) |nu - e_i>, and its adjoint truncated at Nmax.
/// Modes are 1-based.
GradedOperator ladder_matrix(const FockBasis& basis, int mode, Ladder kind);

/// Quadratic generators built from ladder operators:
///   cartan      H_i          = -(a_i^+ a_i + 1/2)
///   compact     E(-e_j+e_k)  = a_j^+ a_k          (j < k)
///   pair        E(-e_j-e_k)  = a_j^+ a_k^+        (j < k)
///   twin        E(-2e_j)     = a_j^+ a_j^+ / sqrt(2)
///   hamiltonian H            = sum_k a_k^+ a_k + n/2
/// `adjoint` selects E^+ for the three root families.
struct GeneratorLabel {
  enum class Family { cartan, compact, pair, twin, hamiltonian };

  Family family = Family::cartan;
  int j = 1;
  int k = 1;
  bool adjoint = false;

  /// "H1", "H", "E(-e1+e2)", "E(-e1-e2)", "E(-2e1)", with "^+" for adjoints.
  std::string str() const;
  /// Inverse of str(); unknown labels are a parameter error.
  static GeneratorLabel parse(std::string_view text);

  bool is_root() const { return family == Family::compact || family == Family::pair || family == Family::twin; }
  /// Degree shift in particle number.
  int shift() const;
  /// Root vector alpha (zero for cartan and hamiltonian), n entries.
  std::vector<int> root(int n) const;

  friend bool operator==(const GeneratorLabel&, const GeneratorLabel&) = default;
};

/// Deliberate defects used to prove that the checks can fail.
enum class Mutation {
  none,
  drop_twin_normalization,  // E(-2e_1) built without its 1/sqrt(2)
};

void validate(const GeneratorLabel& label, int n);

GradedOperator generator_matrix(const FockBasis& basis, const GeneratorLabel& label,
                                Mutation mutation = Mutation::none);

/// The n(2n+1) quadratic generators: H_i, then the listed E's, then their
/// adjoints.
std::vector<GeneratorLabel> all_generators(int n);
/// Just the listed (lowering) E's.
std::vector<GeneratorLabel> lowering_generators(int n);

/// AB - BA, valid on columns of level <= guard_level = Nmax - |dA| - |dB|.
struct Commutator {
  GradedOperator op;
  int guard_level = 0;
};

/// Throws ErrorKind::guard when the guard subspace is empty.
Commutator commutator(const GradedOperator& a, const GradedOperator& b, const FockBasis& basis);

/// max |X - Y| over entries whose column lies at level <= guard_level.
double max_abs_diff_on_guard(const SparseMatrix& x, const SparseMatrix& y, const FockBasis& basis,
                             int guard_level);

/// Checks the sp(2n, R) commutation relations on guard subspaces: commuting
/// Cartan operators, root action, Cartan-valued [E, E^+], closure, and the
/// structure constants against the normal-ordering oracle. Needs Nmax >= 4.
VerificationReport verify_sp_algebra(int n, int nmax, double tol = 1e-12, Mutation mutation = Mutation::none);

/// Highest-weight structure of the parity-`parity` component: annihilation
/// of (a_n^+)^parity |Omega> by every E^+, its weight, U(n) highest-weight
/// vectors (a_n^+)^N |Omega> per level, parity invariance, cyclic generation
/// up to level Nmax - 2, and the SO(n) K-type ladder of each level.
VerificationReport highest_weight_report(int n, int parity, const FockBasis& basis, double tol = 1e-12);

/// SO(n) content of level N: multiplicity of each angular degree l,
/// read off the spectrum -l(l+n-2) of the so(n) Casimir on the level block.
std::map<int, std::uint64_t> level_angular_content(const FockBasis& basis, int level);

}  // namespace o1kepler
