#include "o1kepler/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>

#include "o1kepler/eigensolver.hpp"
#include "o1kepler/error.hpp"
#include "o1kepler/radial.hpp"
#include "o1kepler/reps.hpp"
#include "o1kepler/spectrum.hpp"
#include "o1kepler/suites.hpp"
#include "o1kepler/twist.hpp"

namespace o1kepler {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

struct SpectrumFlags {
  int n = 2;
  int sigma = 0;
  int levels = 5;
  std::string format = "csv";
};

struct VerifyFlags {
  std::string suite = "all";
  std::optional<int> n;
  std::optional<int> nmax;
  std::optional<double> tol;
  std::string output;
  bool timing = false;
};

struct SampleFlags {
  int n = 2;
  int sigma = 0;
  int k = 1;
  int l = 0;
  bool twisted = false;
  std::optional<double> rmax;
  int points = 200;
  std::string output;
};

struct EigensolveFlags {
  std::optional<int> n;
  int sigma = 0;
  std::string m = "2";
  std::string l = "0";
  int levels = 3;
  std::optional<double> rmax;
  std::optional<int> npoints;
  std::optional<int> refinements;
};

struct RepsFlags {
  int n = 3;
  int sigma = 0;
  int levels = 3;
  std::string format = "csv";
};

// Writes to the named file, or to out when the name is empty or "-".
template <class F>
void emit(const std::string& path, std::ostream& out, F&& body) {
  if (path.empty() || path == "-") {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  body(file);
  file.flush();
  if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

std::string weight_text(const Weight& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + w[i].str();
  return s;
}

// Channel flags that violate the parity rule are a usage problem here.
QuantumChannel channel_from_flags(int n, int sigma, int k, int l) {
  try {
    return QuantumChannel::make(n, sigma, k, l);
  } catch (const Error& e) {
    fail(ErrorKind::parameter, e.what());
  }
}

json weight_json(const Weight& w) {
  json j = json::array();
  for (const auto& x : w) j.push_back(x.str());
  return j;
}

int cmd_spectrum(const SpectrumFlags& f, std::ostream& out) {
  require(f.levels >= 1, ErrorKind::parameter, "--levels must be >= 1");
  require(f.format == "csv" || f.format == "json", ErrorKind::parameter, "--format must be csv or json");
  kepler_level_energy(f.n, f.sigma, 0);  // validates n, sigma
  if (f.format == "csv") {
    out << "I,E_I,degeneracy,channels,weight\n";
    for (int level = 0; level < f.levels; ++level) {
      std::string chans;
      for (const auto& ch : channels_at_level(f.n, f.sigma, level))
        chans += (chans.empty() ? "" : ";") + std::string("k=") + std::to_string(ch.k) + ":l=" + std::to_string(ch.l);
      out << level << ',' << format_double(kepler_level_energy(f.n, f.sigma, level)) << ','
          << level_degeneracy(f.n, f.sigma, level) << ',' << chans << ','
          << weight_text(ktype_decomposition(f.n, f.sigma, level).level_weight) << '\n';
    }
    return exit_pass;
  }
  json j;
  j["schema"] = VerificationReport::schema;
  j["n"] = f.n;
  j["sigma"] = f.sigma;
  json rows = json::array();
  for (int level = 0; level < f.levels; ++level) {
    const KTypeDecomposition d = ktype_decomposition(f.n, f.sigma, level);
    json row;
    row["I"] = level;
    row["E_I"] = kepler_level_energy(f.n, f.sigma, level);
    row["degeneracy"] = level_degeneracy(f.n, f.sigma, level);
    json chans = json::array();
    for (const auto& ch : channels_at_level(f.n, f.sigma, level)) chans.push_back({{"k", ch.k}, {"l", ch.l}});
    row["channels"] = chans;
    row["weight"] = weight_json(d.level_weight);
    rows.push_back(row);
  }
  j["levels"] = rows;
  if (f.n == 2) j["notes"] = {"n = 2: harmonic spaces of degree l >= 1 split into two SO(2) characters."};
  out << j.dump(2) << '\n';
  return exit_pass;
}

int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  const auto suite = parse_suite(f.suite);
  require(suite.has_value(), ErrorKind::parameter,
          "unknown suite '" + f.suite + "' (algebra, radial, twist, micz2d, eigensolver, all)");
  SuiteOptions opt;
  if (f.n) opt.dims = {*f.n};
  opt.nmax = f.nmax;
  opt.tol = f.tol;
  preflight(*suite, opt);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep = run_suite(*suite, opt);
  if (f.timing)
    rep.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  emit(f.output, out, [&](std::ostream& o) { o << rep.to_json().dump(2) << '\n'; });
  err << rep.passed() << " passed, " << rep.failed() << " failed\n";
  return rep.ok() ? exit_pass : exit_failure;
}

int cmd_sample(const SampleFlags& f, std::ostream& out) {
  const QuantumChannel ch = channel_from_flags(f.n, f.sigma, f.k, f.l);
  require(f.points >= 1, ErrorKind::parameter, "--points must be >= 1");
  const RadialState state = radial_normalize(ch);
  std::optional<TwistedState> twisted;
  if (f.twisted) twisted = make_twisted(ch);
  double rmax = 0.0;
  if (f.rmax) {
    rmax = *f.rmax;
  } else if (f.twisted) {
    rmax = default_oscillator_grid(ch).back();
  } else {
    rmax = 4.0 * std::sqrt(state.nI * (f.k + f.l));
  }
  require(rmax > 0.0 && std::isfinite(rmax), ErrorKind::parameter, "--rmax must be positive");
  emit(f.output, out, [&](std::ostream& o) {
    o << "r,value\n";
    for (int i = 1; i <= f.points; ++i) {
      const double r = rmax * i / f.points;
      const double v = twisted ? twisted_eval(*twisted, r) : radial_eval(state, r);
      o << format_double(r) << ',' << format_double(v) << '\n';
    }
  });
  return exit_pass;
}

int cmd_eigensolve(const EigensolveFlags& f, std::ostream& out, std::ostream& err) {
  std::optional<RadialFamilyParams> params;
  std::vector<double> closed;
  if (f.n) {
    const HalfInt l = HalfInt::parse(f.l);
    require(l.is_integer(), ErrorKind::parameter, "--l must be an integer degree when --n is given");
    const QuantumChannel first = channel_from_flags(*f.n, f.sigma, 1, l.twice() / 2);
    params = family_of(first);
    for (int k = 1; k <= f.levels; ++k)
      closed.push_back(channel_energy(QuantumChannel::make(*f.n, f.sigma, k, first.l)));
  } else {
    params.emplace(HalfInt::parse(f.m), HalfInt::parse(f.l));
    for (int k = 1; k <= f.levels; ++k) closed.push_back(radial_family_energy(*params, k));
  }
  SolverConfig cfg = SolverConfig::defaults_for(*params, f.levels);
  if (f.npoints) cfg.npoints = *f.npoints;
  if (f.rmax) cfg.rmax = *f.rmax;
  if (f.refinements) cfg.refinement_levels = *f.refinements;
  if (f.npoints || f.rmax) cfg.rmin = cfg.rmax / cfg.npoints;
  cfg.validate();
  const RadialSpectrum s = solve_radial_family(*params, cfg);
  if (s.warning) err << "warning: " << *s.warning << '\n';
  out << "k,E_numeric,E_closed_form,rel_err\n";
  for (int k = 1; k <= f.levels; ++k) {
    const double e = s.eigenvalues[k - 1];
    const double c = closed[k - 1];
    out << k << ',' << format_double(e) << ',' << format_double(c) << ',' << format_double(std::abs(e - c) / std::abs(c))
        << '\n';
  }
  return exit_pass;
}

int cmd_reps(const RepsFlags& f, std::ostream& out) {
  require(f.levels >= 1, ErrorKind::parameter, "--levels must be >= 1");
  require(f.format == "csv" || f.format == "json", ErrorKind::parameter, "--format must be csv or json");
  if (f.format == "csv") {
    out << "I,l,dim,degeneracy,weight\n";
    for (int level = 0; level < f.levels; ++level) {
      const KTypeDecomposition d = ktype_decomposition(f.n, f.sigma, level);
      for (const auto& e : d.entries)
        out << level << ',' << e.l << ',' << e.dim << ',' << level_degeneracy(f.n, f.sigma, level) << ','
            << weight_text(d.level_weight) << '\n';
    }
    return exit_pass;
  }
  json j;
  j["schema"] = VerificationReport::schema;
  j["n"] = f.n;
  j["sigma"] = f.sigma;
  json rows = json::array();
  bool caveat = false;
  for (int level = 0; level < f.levels; ++level) {
    const KTypeDecomposition d = ktype_decomposition(f.n, f.sigma, level);
    caveat = caveat || d.so2_reducible_caveat;
    json ktypes = json::array();
    for (const auto& e : d.entries) ktypes.push_back({{"l", e.l}, {"dim", e.dim}});
    rows.push_back({{"I", level},
                    {"degeneracy", level_degeneracy(f.n, f.sigma, level)},
                    {"ktypes", ktypes},
                    {"weight", weight_json(d.level_weight)}});
  }
  j["levels"] = rows;
  j["so2_reducible_caveat"] = caveat;
  out << j.dump(2) << '\n';
  return exit_pass;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parameter:
    case ErrorKind::domain:
    case ErrorKind::guard: return exit_usage;
    case ErrorKind::invariant: return exit_failure;
    case ErrorKind::overflow:
    case ErrorKind::numerical:
    case ErrorKind::accuracy:
    case ErrorKind::resource: return exit_resource;
  }
  return exit_failure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact spectra, eigenfunctions and symmetry checks for the O(1)-Kepler problems", "o1kepler"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "o1kepler 1.0");

  SpectrumFlags sf;
  auto* spectrum = app.add_subcommand("spectrum", "Bound-state levels: energy, degeneracy, channels, U(n) weight");
  spectrum->add_option("--n", sf.n, "dimension n >= 2")->capture_default_str();
  spectrum->add_option("--sigma", sf.sigma, "parity charge |sigma|")->check(CLI::IsMember({0, 1}))->capture_default_str();
  spectrum->add_option("--levels", sf.levels, "number of levels I = 0, 1, ...")->capture_default_str();
  spectrum->add_option("--format", sf.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "Run a verification suite and write a JSON report");
  verify->footer(
      "Default tolerances: algebra 1e-12, radial 1e-8 (norm idempotence 1e-12), twist 1e-8 (isometry 1e-10),\n"
      "micz2d 1e-8 (metric 1e-10, spectrum 1e-6), eigensolver 1e-6 (1e-5 when l' < 0). --tol replaces all of them.\n"
      "Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 resource or accuracy error.\n"
      "KEPLER_MAX_BASIS caps the Fock basis size (default 2000000).");
  verify->add_option("--suite", vf.suite, "algebra, radial, twist, micz2d, eigensolver, all")
      ->check(CLI::IsMember({"algebra", "radial", "twist", "micz2d", "eigensolver", "all"}))
      ->capture_default_str();
  verify->add_option("--n", vf.n, "restrict to one dimension (default: the suite's range)");
  verify->add_option("--nmax", vf.nmax, "Fock truncation level for the algebra suite (default 8)");
  verify->add_option("--tol", vf.tol, "override every tolerance of the suite");
  verify->add_option("--output,-o", vf.output, "report path (default stdout)");
  verify->add_flag("--timing", vf.timing, "add summary.wall_time_ms (output is then not reproducible)");

  SampleFlags pf;
  auto* sample = app.add_subcommand("sample", "Sample a radial eigenfunction or its twist as CSV (r,value)");
  sample->add_option("--n", pf.n)->capture_default_str();
  sample->add_option("--sigma", pf.sigma)->capture_default_str();
  sample->add_option("--k", pf.k, "radial quantum number >= 1")->capture_default_str();
  sample->add_option("--l", pf.l, "angular degree")->capture_default_str();
  sample->add_flag("--twisted", pf.twisted, "sample the twisted (oscillator) function");
  sample->add_option("--rmax", pf.rmax, "right end of the sample range");
  sample->add_option("--points", pf.points)->capture_default_str();
  sample->add_option("--output,-o", pf.output, "CSV path (default stdout)");

  EigensolveFlags ef;
  auto* eigensolve = app.add_subcommand("eigensolve", "Numerical radial spectrum against the closed form (CSV)");
  eigensolve->add_option("--n", ef.n, "solve the Kepler channel of dimension n (with --sigma, --l)");
  eigensolve->add_option("--sigma", ef.sigma)->capture_default_str();
  eigensolve->add_option("--m", ef.m, "measure exponent, half-integer such as 3/2")->capture_default_str();
  eigensolve->add_option("--l", ef.l, "centrifugal parameter (half-integer), or angular degree with --n")
      ->capture_default_str();
  eigensolve->add_option("--levels", ef.levels)->capture_default_str();
  eigensolve->add_option("--rmax", ef.rmax);
  eigensolve->add_option("--npoints", ef.npoints, "cells on the coarsest grid (default 16000)");
  eigensolve->add_option("--refinements", ef.refinements, "number of grids (default 3)");

  RepsFlags rf;
  auto* reps = app.add_subcommand("reps", "K-type decomposition table per level");
  reps->add_option("--n", rf.n)->capture_default_str();
  reps->add_option("--sigma", rf.sigma)->check(CLI::IsMember({0, 1}))->capture_default_str();
  reps->add_option("--levels", rf.levels)->capture_default_str();
  reps->add_option("--format", rf.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_usage;
  }

  try {
    if (*spectrum) return cmd_spectrum(sf, out);
    if (*verify) return cmd_verify(vf, out, err);
    if (*sample) return cmd_sample(pf, out);
    if (*eigensolve) return cmd_eigensolve(ef, out, err);
    if (*reps) return cmd_reps(rf, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_resource;
  }
  return exit_usage;
}

}  // namespace o1kepler
