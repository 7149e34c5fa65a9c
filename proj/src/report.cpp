#include "o1kepler/report.hpp"

#include <cmath>
#include <cstdio>

namespace o1kepler {
namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void append_summary(const VerificationReport& r, const std::string& prefix, std::string& out) {
  const std::string path = prefix.empty() ? r.suite : prefix + "/" + r.suite;
  for (const auto& c : r.cases) {
    out += c.pass ? "PASS " : "FAIL ";
    out += path + ": " + c.name;
    if (!c.pass || c.tol > 0.0) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "  (max_abs_dev=%.3e tol=%.1e)", c.max_abs_dev, c.tol);
      out += buf;
    }
    out += '\n';
  }
  for (const auto& s : r.subsuites) append_summary(s, path, out);
}

}  // namespace

CheckCase& VerificationReport::add(std::string name, json params, json expected, json actual,
                                   double max_abs_dev, double tol, std::optional<double> rel_err) {
  CheckCase c;
  c.name = std::move(name);
  c.params = std::move(params);
  c.expected = std::move(expected);
  c.actual = std::move(actual);
  c.max_abs_dev = max_abs_dev;
  c.rel_err = rel_err;
  c.tol = tol;
  c.pass = max_abs_dev <= tol;  // false for NaN
  cases.push_back(std::move(c));
  return cases.back();
}

CheckCase& VerificationReport::add_flag(std::string name, json params, json expected, json actual, bool pass) {
  CheckCase c;
  c.name = std::move(name);
  c.params = std::move(params);
  c.expected = std::move(expected);
  c.actual = std::move(actual);
  c.max_abs_dev = pass ? 0.0 : 1.0;
  c.tol = 0.0;
  c.pass = pass;
  cases.push_back(std::move(c));
  return cases.back();
}

int VerificationReport::passed() const {
  int p = 0;
  for (const auto& c : cases) p += c.pass ? 1 : 0;
  for (const auto& s : subsuites) p += s.passed();
  return p;
}

int VerificationReport::failed() const {
  int f = 0;
  for (const auto& c : cases) f += c.pass ? 0 : 1;
  for (const auto& s : subsuites) f += s.failed();
  return f;
}

json VerificationReport::to_json() const {
  json j;
  j["schema"] = schema;
  j["suite"] = suite;
  if (!notes.empty()) j["notes"] = notes;
  json cs = json::array();
  for (const auto& c : cases) {
    json jc;
    jc["name"] = c.name;
    jc["params"] = c.params;
    jc["expected"] = c.expected;
    jc["actual"] = c.actual;
    jc["max_abs_dev"] = number_or_null(c.max_abs_dev);
    jc["rel_err"] = c.rel_err ? number_or_null(*c.rel_err) : json(nullptr);
    jc["tol"] = c.tol;
    jc["pass"] = c.pass;
    cs.push_back(std::move(jc));
  }
  j["cases"] = std::move(cs);
  if (!subsuites.empty()) {
    json ss = json::array();
    for (const auto& s : subsuites) ss.push_back(s.to_json());
    j["subsuites"] = std::move(ss);
  }
  json summary;
  summary["passed"] = passed();
  summary["failed"] = failed();
  if (wall_time_ms) summary["wall_time_ms"] = *wall_time_ms;
  j["summary"] = std::move(summary);
  return j;
}

std::string summary_text(const VerificationReport& report) {
  std::string out;
  append_summary(report, "", out);
  out += "passed " + std::to_string(report.passed()) + ", failed " + std::to_string(report.failed()) + '\n';
  return out;
}

}  // namespace o1kepler
