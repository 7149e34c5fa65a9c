#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "o1kepler/report.hpp"

namespace o1kepler {

enum class Suite { algebra, radial, twist, micz2d, eigensolver, all };

std::optional<Suite> parse_suite(std::string_view name);
std::string to_string(Suite s);

struct SuiteOptions {
  std::vector<int> dims;     // empty: the suite's default dimension range
  std::optional<int> nmax;   // algebra only; default 8
  std::optional<double> tol; // replaces every tolerance of the suite when set
};

/// Primary tolerance of each suite (what --tol overrides).
double default_tolerance(Suite s);

/// Default dimension range of each suite.
std::vector<int> default_dims(Suite s);

/// Throws (resource / guard errors) before any computation when the
/// requested run cannot be carried out.
void preflight(Suite s, const SuiteOptions& opt);

VerificationReport algebra_suite(const SuiteOptions& opt);
VerificationReport radial_suite(const SuiteOptions& opt);
VerificationReport twist_suite(const SuiteOptions& opt);
VerificationReport micz2d_suite(const SuiteOptions& opt);
VerificationReport eigensolver_suite(const SuiteOptions& opt);

/// Degeneracy bookkeeping: binomial identity for n <= 10, I <= 20 and the
/// Fock level dimensions for n <= 6, I <= 4.
VerificationReport degeneracy_suite();

VerificationReport run_suite(Suite s, const SuiteOptions& opt);

}  // namespace o1kepler
