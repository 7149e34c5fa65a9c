#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace o1kepler {

using json = nlohmann::ordered_json;

/// One named check: what was expected, what came out, and whether the
/// deviation is inside tolerance.
struct CheckCase {
  std::string name;
  json params = json::object();
  json expected;
  json actual;
  double max_abs_dev = 0.0;
  std::optional<double> rel_err;
  double tol = 0.0;
  bool pass = false;
};

struct VerificationReport {
  static constexpr int schema = 1;

  std::string suite;
  std::vector<std::string> notes;
  std::vector<CheckCase> cases;
  std::vector<VerificationReport> subsuites;
  /// Only serialized when set; wall clock would break byte-identical output.
  std::optional<double> wall_time_ms;

  /// Appends a case whose pass flag is max_abs_dev <= tol (NaN fails).
  CheckCase& add(std::string name, json params, json expected, json actual, double max_abs_dev, double tol,
                 std::optional<double> rel_err = std::nullopt);

  /// Appends a case with an explicit verdict (structural checks).
  CheckCase& add_flag(std::string name, json params, json expected, json actual, bool pass);

  /// Counts include sub-suites.
  int passed() const;
  int failed() const;
  bool ok() const { return failed() == 0; }

  json to_json() const;
};

/// Compact human-readable summary, one line per case.
std::string summary_text(const VerificationReport& report);

}  // namespace o1kepler
