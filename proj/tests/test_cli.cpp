#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "o1kepler/cli.hpp"
#include "o1kepler/radial.hpp"

using namespace o1kepler;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::pair<double, double>> samples(const std::string& csv) {
  std::vector<std::pair<double, double>> out;
  const auto ls = lines(csv);
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto comma = ls[i].find(',');
    out.emplace_back(std::stod(ls[i].substr(0, comma)), std::stod(ls[i].substr(comma + 1)));
  }
  return out;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  CHECK(format_double(-2.0) == "-2");
  CHECK(format_double(0.5) == "0.5");
  for (double x : {-2.0 / 9.0, 0.1, 1e-300, 123456.789, -0.32})
    CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("spectrum csv") {
  const Run r = run({"spectrum", "--n", "2", "--sigma", "0", "--levels", "2"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "I,E_I,degeneracy,channels,weight");
  CHECK(ls[1] == "0,-2,1,k=1:l=0,-1/2 -1/2");
  CHECK(ls[2].rfind("1," + format_double(-2.0 / 9.0) + ",3,k=2:l=0;k=1:l=2,", 0) == 0);

  const Run odd = run({"spectrum", "--n", "3", "--sigma", "1", "--levels", "1"});
  CHECK(lines(odd.out)[1].rfind("0," + format_double(-0.32) + ",3,k=1:l=1,", 0) == 0);
}

TEST_CASE("spectrum json") {
  const Run r = run({"spectrum", "--n", "3", "--levels", "3", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  REQUIRE(j["levels"].size() == 3);
  CHECK(j["levels"][1]["degeneracy"] == 6);
  CHECK(j["levels"][2]["channels"].size() == 3);
}

TEST_CASE("reps csv") {
  const Run r = run({"reps", "--n", "3", "--sigma", "1", "--levels", "2"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[0] == "I,l,dim,degeneracy,weight");
  CHECK(ls[2].rfind("1,1,3,10,", 0) == 0);
  CHECK(ls[3].rfind("1,3,7,10,", 0) == 0);
}

TEST_CASE("verify algebra passes and is reproducible") {
  const Run a = run({"verify", "--suite", "algebra", "--n", "2", "--nmax", "6"});
  CHECK(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["schema"] == 1);
  CHECK(j["summary"]["failed"] == 0);
  CHECK_FALSE(j["summary"].contains("wall_time_ms"));
  const Run b = run({"verify", "--suite", "algebra", "--n", "2", "--nmax", "6"});
  CHECK(a.out == b.out);
  const Run t = run({"verify", "--suite", "algebra", "--n", "2", "--nmax", "6", "--timing"});
  CHECK(nlohmann::json::parse(t.out)["summary"].contains("wall_time_ms"));
}

TEST_CASE("verify exit codes") {
  CHECK(run({"verify", "--suite", "algebra", "--n", "2", "--nmax", "1"}).code == exit_usage);
  CHECK(run({"verify", "--suite", "nope"}).code == exit_usage);
  CHECK(run({"verify", "--suite", "radial", "--n", "2", "--tol", "1e-30"}).code == exit_failure);
  CHECK(run({"verify", "--suite", "radial", "--n", "2", "-o", "/nonexistent/dir/report.json"}).code == exit_resource);
}

TEST_CASE("sample") {
  const Run g = run({"sample", "--n", "2", "--sigma", "0", "--k", "1", "--l", "0", "--rmax", "3", "--points", "100"});
  CHECK(g.code == 0);
  const auto s = samples(g.out);
  REQUIRE(s.size() == 100);
  auto best = s.front();
  for (const auto& p : s)
    if (p.second > best.second) best = p;
  // sqrt(32) r exp(-2 r^2) peaks at r = 1/2
  CHECK(best.first == doctest::Approx(0.5).epsilon(0.07));
  CHECK(s[9].second == doctest::Approx(std::sqrt(32.0) * 0.3 * std::exp(-2 * 0.09)).epsilon(1e-12));

  const Run t = run({"sample", "--n", "2", "--k", "1", "--l", "0", "--twisted", "--rmax", "2", "--points", "4"});
  for (const auto& [r, v] : samples(t.out)) CHECK(v == doctest::Approx(std::sqrt(2.0) * std::exp(-r * r / 2)).epsilon(1e-12));

  const Run k2 = run({"sample", "--n", "3", "--k", "2", "--l", "0", "--points", "400"});
  std::vector<double> v;
  for (const auto& p : samples(k2.out)) v.push_back(p.second);
  CHECK(sign_changes(v) == 1);
}

TEST_CASE("eigensolve") {
  const Run r = run({"eigensolve", "--m", "3/2", "--l", "1/2", "--levels", "2"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == "k,E_numeric,E_closed_form,rel_err");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto last = ls[i].rfind(',');
    CHECK(std::stod(ls[i].substr(last + 1)) <= 1e-6);
  }
  const Run c = run({"eigensolve", "--n", "3", "--sigma", "1", "--l", "1", "--levels", "2"});
  CHECK(c.code == 0);
  CHECK(lines(c.out)[1].find(format_double(-0.32)) != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == exit_usage);
  CHECK(run({"bogus"}).code == exit_usage);
  CHECK(run({"spectrum", "--n", "1"}).code == exit_usage);
  CHECK(run({"spectrum", "--sigma", "2"}).code == exit_usage);
  CHECK(run({"spectrum", "--levels", "0"}).code == exit_usage);
  CHECK(run({"sample", "--n", "3", "--sigma", "0", "--l", "1"}).code == exit_usage);
  CHECK(run({"eigensolve", "--m", "1/3"}).code == exit_usage);
  CHECK(run({"sample", "--n", "2", "--points", "0"}).code == exit_usage);
  CHECK(run({"--help"}).code == exit_pass);
}

TEST_CASE("resource budget maps to exit 3") {
  setenv("KEPLER_MAX_BASIS", "50", 1);
  const Run r = run({"verify", "--suite", "algebra", "--n", "3", "--nmax", "6"});
  unsetenv("KEPLER_MAX_BASIS");
  CHECK(r.code == exit_resource);
  CHECK(r.err.find("resource") != std::string::npos);
}
