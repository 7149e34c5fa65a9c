#include <doctest.h>

#include <cmath>
#include <limits>

#include "o1kepler/report.hpp"

using namespace o1kepler;

TEST_CASE("pass counts include sub-suites") {
  VerificationReport r;
  r.suite = "outer";
  r.add("inside", {}, 1.0, 1.0, 1e-13, 1e-12);
  r.add("outside", {}, 1.0, 2.0, 1.0, 1e-12);
  VerificationReport sub;
  sub.suite = "inner";
  sub.add_flag("flag", {}, true, true, true);
  r.subsuites.push_back(sub);
  CHECK(r.passed() == 2);
  CHECK(r.failed() == 1);
  CHECK_FALSE(r.ok());
  CHECK(sub.ok());
}

TEST_CASE("NaN deviations fail and serialize as null") {
  VerificationReport r;
  r.suite = "nan";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(r.add("nan", {}, 0.0, nullptr, nan, 1.0, nan).pass);
  const json j = r.to_json();
  CHECK(j["cases"][0]["max_abs_dev"].is_null());
  CHECK(j["cases"][0]["rel_err"].is_null());
  CHECK(j["summary"]["failed"] == 1);
}

TEST_CASE("JSON layout") {
  VerificationReport r;
  r.suite = "layout";
  r.notes.push_back("a note");
  r.add("case", {{"n", 2}}, -2.0, -2.0, 0.0, 1e-12, 0.0);
  const json j = r.to_json();
  CHECK(j["schema"] == 1);
  CHECK(j.begin().key() == "schema");
  CHECK(j["suite"] == "layout");
  CHECK(j["notes"][0] == "a note");
  const json& c = j["cases"][0];
  for (const char* key : {"name", "params", "expected", "actual", "max_abs_dev", "rel_err", "tol", "pass"})
    CHECK(c.contains(key));
  CHECK(c["pass"] == true);
  CHECK_FALSE(j.contains("subsuites"));
  CHECK_FALSE(j["summary"].contains("wall_time_ms"));
  r.wall_time_ms = 12.5;
  CHECK(r.to_json()["summary"]["wall_time_ms"] == 12.5);
}

TEST_CASE("floats round-trip through the JSON text") {
  VerificationReport r;
  r.suite = "round";
  const double x = 0.1 + 0.2;
  r.add("x", {}, x, x, 0.0, 1e-12);
  const json back = json::parse(r.to_json().dump());
  CHECK(back["cases"][0]["actual"].get<double>() == x);
}

TEST_CASE("summary text") {
  VerificationReport r;
  r.suite = "s";
  r.add("good", {}, 0, 0, 0.0, 1e-12);
  r.add_flag("bad", {}, true, false, false);
  const std::string t = summary_text(r);
  CHECK(t.find("PASS s: good") != std::string::npos);
  CHECK(t.find("FAIL s: bad") != std::string::npos);
  CHECK(t.find("passed 1, failed 1") != std::string::npos);
}
