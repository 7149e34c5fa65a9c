#include "o1kepler/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "o1kepler/eigensolver.hpp"
#include "o1kepler/error.hpp"
#include "o1kepler/fock.hpp"
#include "o1kepler/micz2d.hpp"
#include "o1kepler/radial.hpp"
#include "o1kepler/reps.hpp"
#include "o1kepler/specialfn.hpp"
#include "o1kepler/spectrum.hpp"
#include "o1kepler/twist.hpp"

namespace o1kepler {
namespace {

constexpr int kDefaultNmax = 8;

double pick(const SuiteOptions& opt, double fallback) { return opt.tol.value_or(fallback); }

std::vector<int> dims_of(Suite s, const SuiteOptions& opt) { return opt.dims.empty() ? default_dims(s) : opt.dims; }

json channel_json(const QuantumChannel& ch) { return {{"n", ch.n}, {"sigma", ch.sigma}, {"k", ch.k}, {"l", ch.l}}; }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Tracks the worst deviation of a sweep together with where it occurred.
struct Worst {
  double dev = 0.0;
  json where = nullptr;
  void update(double d, const json& at) {
    if (!(d <= dev)) {  // also captures NaN
      dev = d;
      where = at;
    }
  }
};

std::vector<HalfInt> halves(std::initializer_list<int> twice) {
  std::vector<HalfInt> v;
  for (int t : twice) v.push_back(HalfInt::from_twice(t));
  return v;
}

// (m, l) test matrix of the radial family.
std::vector<RadialFamilyParams> family_matrix() {
  std::vector<RadialFamilyParams> out;
  for (HalfInt m : halves({2, 3, 4, 5, 6}))
    for (HalfInt l : halves({0, 1, 2, 4})) out.emplace_back(m, l);
  return out;
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "algebra") return Suite::algebra;
  if (name == "radial") return Suite::radial;
  if (name == "twist") return Suite::twist;
  if (name == "micz2d") return Suite::micz2d;
  if (name == "eigensolver") return Suite::eigensolver;
  if (name == "all") return Suite::all;
  return std::nullopt;
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::algebra: return "algebra";
    case Suite::radial: return "radial";
    case Suite::twist: return "twist";
    case Suite::micz2d: return "micz2d";
    case Suite::eigensolver: return "eigensolver";
    case Suite::all: return "all";
  }
  return "?";
}

double default_tolerance(Suite s) {
  switch (s) {
    case Suite::algebra: return 1e-12;
    case Suite::radial: return 1e-8;
    case Suite::twist: return 1e-8;
    case Suite::micz2d: return 1e-8;
    case Suite::eigensolver: return 1e-6;
    case Suite::all: return 0.0;
  }
  return 0.0;
}

std::vector<int> default_dims(Suite s) {
  switch (s) {
    case Suite::algebra: return {2, 3, 4};
    case Suite::radial: return {2, 3, 4, 5, 6};
    case Suite::twist: return {2, 3, 4, 5};
    case Suite::eigensolver: return {2, 3, 4, 5, 6};
    case Suite::micz2d:
    case Suite::all: return {2};
  }
  return {};
}

void preflight(Suite s, const SuiteOptions& opt) {
  if (opt.tol) require(*opt.tol > 0.0 && std::isfinite(*opt.tol), ErrorKind::parameter, "--tol must be positive");
  for (int n : opt.dims) require(n >= 2, ErrorKind::parameter, "dimension n must be >= 2, got " + std::to_string(n));
  if (s != Suite::algebra && s != Suite::all) return;
  const int nmax = opt.nmax.value_or(kDefaultNmax);
  require(nmax >= 4, ErrorKind::guard,
          "Nmax=" + std::to_string(nmax) + " leaves an empty guard subspace for double shifts; use Nmax >= 4");
  const std::uint64_t budget = max_basis_size();
  for (int n : dims_of(Suite::algebra, opt)) {
    const std::uint64_t count = exact_binomial(nmax + n, n);
    require(count <= budget, ErrorKind::resource,
            "Fock basis for n=" + std::to_string(n) + ", Nmax=" + std::to_string(nmax) + " has " +
                std::to_string(count) + " states, above the budget " + std::to_string(budget) +
                " (KEPLER_MAX_BASIS)");
  }
}

// ---------------------------------------------------------------------------

VerificationReport degeneracy_suite() {
  VerificationReport rep;
  rep.suite = "degeneracy";
  Worst binom;
  bool binom_ok = true;
  for (int n = 2; n <= 10; ++n)
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int level = 0; level <= 20; ++level) {
        std::uint64_t sum = 0;
        for (int k = 0; k <= level; ++k) sum = checked_add(sum, harmonic_dim(n, 2 * k + sigma));
        const std::uint64_t closed = exact_binomial(2 * level + sigma + n - 1, n - 1);
        if (sum != closed && binom_ok) {
          binom_ok = false;
          binom.where = {{"n", n}, {"sigma", sigma}, {"I", level}, {"sum", sum}, {"binomial", closed}};
        }
      }
  rep.add_flag("harmonic_sum_equals_binomial", {{"n_max", 10}, {"I_max", 20}, {"first_mismatch", binom.where}},
               "exact integer equality", binom_ok ? "equal" : "mismatch", binom_ok);

  bool fock_ok = true;
  json mismatch = nullptr;
  for (int n = 2; n <= 6; ++n) {
    const FockBasis basis = build_basis(n, 9);
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int level = 0; level <= 4; ++level) {
        const int N = 2 * level + sigma;
        const auto count = static_cast<std::uint64_t>(basis.level_end(N) - basis.level_begin(N));
        if (count != level_degeneracy(n, sigma, level) && fock_ok) {
          fock_ok = false;
          mismatch = {{"n", n}, {"sigma", sigma}, {"I", level}, {"fock", count}};
        }
      }
  }
  rep.add_flag("level_degeneracy_equals_fock_level_dimension",
               {{"n_max", 6}, {"I_max", 4}, {"first_mismatch", mismatch}}, "exact integer equality",
               fock_ok ? "equal" : "mismatch", fock_ok);

  bool multiplicity_free = true;
  for (int n = 2; n <= 10; ++n)
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int level = 0; level <= 20; ++level) {
        const auto d = ktype_decomposition(n, sigma, level);
        for (std::size_t i = 1; i < d.entries.size(); ++i)
          multiplicity_free = multiplicity_free && d.entries[i].l > d.entries[i - 1].l;
      }
  rep.add_flag("ktype_ladder_multiplicity_free", {{"n_max", 10}, {"I_max", 20}}, "distinct l per level",
               multiplicity_free ? "distinct" : "repeated", multiplicity_free);
  return rep;
}

VerificationReport algebra_suite(const SuiteOptions& opt) {
  preflight(Suite::algebra, opt);
  const int nmax = opt.nmax.value_or(kDefaultNmax);
  const double tol = pick(opt, default_tolerance(Suite::algebra));
  VerificationReport rep;
  rep.suite = "algebra";
  for (int n : dims_of(Suite::algebra, opt)) {
    VerificationReport per_n;
    per_n.suite = "n=" + std::to_string(n);
    per_n.subsuites.push_back(verify_sp_algebra(n, nmax, tol));

    const VerificationReport mutated = verify_sp_algebra(n, nmax, tol, Mutation::drop_twin_normalization);
    json failing = json::array();
    for (const auto& c : mutated.cases)
      if (!c.pass) failing.push_back(c.name);
    per_n.add_flag("mutation_detected", {{"mutation", "E(-2e1) without 1/sqrt(2)"}, {"nmax", nmax}},
                   "some check fails", failing, !mutated.ok());

    const FockBasis basis = build_basis(n, nmax);
    for (int parity = 0; parity <= 1; ++parity) {
      VerificationReport hw = highest_weight_report(n, parity, basis, tol);
      hw.suite += " parity=" + std::to_string(parity);
      per_n.subsuites.push_back(std::move(hw));
    }
    rep.subsuites.push_back(std::move(per_n));
  }
  rep.subsuites.push_back(degeneracy_suite());
  return rep;
}

// ---------------------------------------------------------------------------

VerificationReport radial_suite(const SuiteOptions& opt) {
  preflight(Suite::radial, opt);
  const double tol = pick(opt, default_tolerance(Suite::radial));
  const double idempotence_tol = opt.tol.value_or(1e-12);
  VerificationReport rep;
  rep.suite = "radial";
  rep.notes.push_back("Channels k <= 5, l <= 6 for residuals; Gram matrices over k = 1..6.");
  for (int n : dims_of(Suite::radial, opt)) {
    for (int sigma = 0; sigma <= 1; ++sigma) {
      const json where = {{"n", n}, {"sigma", sigma}};
      Worst residual, gram, limit, idem;
      bool nodes_ok = true;
      json node_failure = nullptr;
      for (int l = sigma; l <= 6; l += 2) {
        std::vector<RadialState> states;
        for (int k = 1; k <= 6; ++k) states.push_back(radial_normalize(QuantumChannel::make(n, sigma, k, l)));
        for (int k = 1; k <= 5; ++k) {
          const RadialState& s = states[k - 1];
          const json at = channel_json(s.channel);
          residual.update(radial_residual(s, default_residual_grid(s)), at);

          const double root = std::sqrt(s.nI);
          const double r0 = 1e-4 * root;
          const double expected = s.c * laguerre_eval({s.alpha(), k - 1}, 0.0);
          limit.update(rel(radial_eval(s, r0) / std::pow(r0, l + 1), expected), at);

          idem.update(rel(renormalize(s).c, s.c), at);

          std::vector<double> samples;
          for (int i = 1; i <= 4000; ++i) samples.push_back(radial_eval(s, 10.0 * root * i / 4000.0));
          const int zeros = sign_changes(samples);
          if (zeros != k - 1 && nodes_ok) {
            nodes_ok = false;
            node_failure = {{"channel", at}, {"sign_changes", zeros}};
          }
        }
        for (std::size_t i = 0; i < states.size(); ++i)
          for (std::size_t j = 0; j <= i; ++j) {
            const double g = radial_inner_product(states[i], states[j]);
            gram.update(std::abs(g - (i == j ? 1.0 : 0.0)),
                        {{"n", n}, {"sigma", sigma}, {"l", l}, {"k1", i + 1}, {"k2", j + 1}});
          }
      }
      rep.add("eigen_residual", {{"at", where}, {"worst", residual.where}}, "H R = E R", "max relative residual",
              residual.dev, tol);
      rep.add("gram_identity", {{"at", where}, {"worst", gram.where}}, "identity", "max |G - 1|", gram.dev, tol);
      rep.add_flag("node_count", {{"at", where}, {"failure", node_failure}}, "k - 1 sign changes",
                   nodes_ok ? "k - 1" : "other", nodes_ok);
      rep.add("small_r_limit", {{"at", where}, {"worst", limit.where}, {"r", "1e-4 sqrt(n_I)"}},
              "R / r^(l+1) -> c L(0)", "relative deviation", limit.dev, std::max(tol, 1e-6));
      rep.add("renormalize_idempotent", {{"at", where}, {"worst", idem.where}}, "c unchanged", "relative change",
              idem.dev, idempotence_tol);
    }
  }
  // A state with a 1% wrong decay length must be rejected.
  RadialState wrong = radial_normalize(QuantumChannel::make(2, 0, 1, 0));
  wrong.nI *= 1.01;
  wrong = renormalize(wrong);
  const double r_wrong = radial_residual(wrong, default_residual_grid(wrong));
  rep.add_flag("perturbed_state_detected", {{"channel", channel_json(wrong.channel)}, {"nI_scale", 1.01}},
               ">= 1e-3", r_wrong, r_wrong >= 1e-3);
  return rep;
}

// ---------------------------------------------------------------------------

VerificationReport twist_suite(const SuiteOptions& opt) {
  preflight(Suite::twist, opt);
  const double tol = pick(opt, default_tolerance(Suite::twist));
  const double norm_tol = opt.tol.value_or(1e-10);
  VerificationReport rep;
  rep.suite = "twist";
  rep.notes.push_back("c_I is computed per channel; agreement across a level is checked, not assumed.");
  rep.notes.push_back("Closed form c_I = n_I (n_I/2)^(n/4 - 1/2) is a derived cross-check.");
  const std::vector<int> dims = dims_of(Suite::twist, opt);
  for (int n : dims) {
    for (int sigma = 0; sigma <= 1; ++sigma) {
      const json where = {{"n", n}, {"sigma", sigma}, {"I_max", 3}};
      Worst norm, osc, coherence, inverse_square, closed, intertwine, limit;
      bool eigen_map = true;
      for (int level = 0; level <= 3; ++level) {
        double c_min = INFINITY;
        double c_max = -INFINITY;
        for (const QuantumChannel& ch : channels_at_level(n, sigma, level)) {
          const json at = channel_json(ch);
          const TwistedState t = make_twisted(ch);
          c_min = std::min(c_min, t.cI);
          c_max = std::max(c_max, t.cI);
          norm.update(std::abs(twisted_norm2(t) - 1.0), at);
          osc.update(oscillator_residual(t, default_oscillator_grid(ch)), at);
          inverse_square.update(std::abs(mean_inverse_square(t.source) + 2.0 * kepler_level_energy(n, sigma, level)),
                                at);
          closed.update(rel(t.cI, twist_constant_closed_form(ch)), at);
          eigen_map = eigen_map && oscillator_eigenvalue(ch) == 2.0 * level + sigma + 0.5 * n;

          double dev = 0.0;
          double scale = 0.0;
          const auto grid = default_oscillator_grid(ch);
          const double sign = twisted_eval(t, grid.front()) * oscillator_radial_eval(ch, grid.front()) < 0 ? -1.0 : 1.0;
          for (double r : grid) {
            const double o = oscillator_radial_eval(ch, r);
            dev = std::max(dev, std::abs(twisted_eval(t, r) - sign * o));
            scale = std::max(scale, std::abs(o));
          }
          intertwine.update(dev / scale, at);

          const double a = twisted_eval(t, 1e-4) / std::pow(1e-4, ch.l);
          const double b = twisted_eval(t, 2e-4) / std::pow(2e-4, ch.l);
          limit.update(a != 0.0 ? rel(b, a) : INFINITY, at);
        }
        coherence.update((c_max - c_min) / c_max, {{"I", level}, {"min", c_min}, {"max", c_max}});
      }
      rep.add("isometry", {{"at", where}, {"worst", norm.where}}, 1.0, "norm of twisted state", norm.dev, norm_tol);
      rep.add("oscillator_residual", {{"at", where}, {"worst", osc.where}}, "eigenvalue 2I + sigma + n/2",
              "max relative residual", osc.dev, tol);
      rep.add_flag("eigenvalue_map", {{"at", where}}, "2 n_I = 2I + sigma + n/2", eigen_map ? "exact" : "mismatch",
                   eigen_map);
      rep.add("level_coherence", {{"at", where}, {"worst", coherence.where}}, "one c_I per level",
              "relative spread", coherence.dev, tol);
      rep.add("mean_inverse_square", {{"at", where}, {"worst", inverse_square.where}}, "-2 E_I",
              "<r^-2> by quadrature", inverse_square.dev, tol);
      rep.add("closed_form_constant", {{"at", where}, {"worst", closed.where}}, "n_I (n_I/2)^(n/4-1/2)",
              "quadrature c_I", closed.dev, tol);
      rep.add("intertwining", {{"at", where}, {"worst", intertwine.where}}, "r^l L(r^2) exp(-r^2/2), normalized",
              "twisted state (up to sign)", intertwine.dev, tol);
      rep.add("small_r_scaling", {{"at", where}, {"worst", limit.where}}, "T / r^l finite and nonzero",
              "relative change r = 1e-4 -> 2e-4", limit.dev, std::max(tol, 1e-6));
    }
  }
  if (std::find(dims.begin(), dims.end(), 2) != dims.end()) {
    const QuantumChannel ground = QuantumChannel::make(2, 0, 1, 0);
    const TwistedState t = make_twisted(ground);
    rep.add("ground_constant", {{"channel", channel_json(ground)}}, 0.5, t.cI, std::abs(t.cI - 0.5), tol);
    double dev = 0.0;
    for (double r : default_oscillator_grid(ground))
      dev = std::max(dev, std::abs(twisted_eval(t, r) - std::sqrt(2.0) * std::exp(-0.5 * r * r)));
    rep.add("ground_profile", {{"channel", channel_json(ground)}}, "sqrt(2) exp(-r^2/2)", "twisted state", dev, tol);
  }
  return rep;
}

// ---------------------------------------------------------------------------

VerificationReport micz2d_suite(const SuiteOptions& opt) {
  preflight(Suite::micz2d, opt);
  const double tol = pick(opt, default_tolerance(Suite::micz2d));
  VerificationReport rep;
  rep.suite = "micz2d";
  rep.notes.push_back("psi(rho, theta) = 2 rho Psi(rho^2, 2 theta); theta in [0, pi).");
  rep.notes.push_back("Operator identity checked as H psi = 2 rho (h Psi) o pi.");
  const auto grid = default_plane_grid();

  struct Named {
    std::string name;
    PlaneFunction f;
  };
  const std::vector<Named> tests = {
      {"exp(-2r)", plane::radial_exponential(0.0, 2.0, 0.0, Monodromy::periodic)},
      {"exp(-r) cos(phi)", plane::radial_exponential_cos(0.0, 1.0, 1.0)},
      {"r exp(-r) exp(i phi/2)", plane::radial_exponential(1.0, 1.0, 0.5, Monodromy::antiperiodic)},
  };
  for (const auto& t : tests) {
    const double d = operator_identity_residual(t.f, grid);
    rep.add("operator_identity " + t.name, {{"mu", 0.5 * twice_mu(t.f.monodromy)}, {"grid_points", grid.size()}},
            "H psi = 2 rho (h Psi) o pi", "max relative deviation", d, tol);
  }

  // Parity of transported functions under theta -> theta + pi.
  for (const auto& t : tests) {
    const PlaneFunction psi = transport_wavefunction(t.f);
    const double sign = t.f.monodromy == Monodromy::periodic ? 1.0 : -1.0;
    double dev = 0.0;
    for (const auto& p : grid)
      dev = std::max(dev, std::abs(psi.eval(p.radius, p.angle + std::numbers::pi).v - sign * psi.eval(p.radius, p.angle).v));
    rep.add("parity " + t.name, {{"mu", 0.5 * twice_mu(t.f.monodromy)}}, sign > 0 ? "even" : "odd",
            "max |psi(theta + pi) -+ psi(theta)|", dev, tol);
  }

  const PlaneFunction hydrogen = tests[0].f;
  const double micz_res = micz_eigen_residual(hydrogen, -2.0, grid);
  rep.add("micz_ground_state", {{"Psi", "exp(-2r)"}}, "h Psi = -2 Psi", "max relative residual", micz_res, tol);
  const double kepler_res = kepler_eigen_residual(transport_wavefunction(hydrogen), kepler_level_energy(2, 0, 0), grid);
  rep.add("eigenfunction_transport", {{"Psi", "exp(-2r)"}, {"energy", kepler_level_energy(2, 0, 0)}},
          "H psi = -2 psi", "max relative residual", kepler_res, tol);

  const PlaneFunction e1 = plane::radial_exponential(0.0, 1.0, 0.0, Monodromy::periodic);
  const std::vector<std::pair<PlaneFunction, PlaneFunction>> pairs = {
      {e1, e1}, {e1, tests[1].f}, {hydrogen, hydrogen}, {tests[2].f, tests[2].f}};
  for (const auto& [a, b] : pairs) rep.subsuites.push_back(inner_product_check(a, b, tol));
  rep.subsuites[0].suite += " exp(-r), exp(-r)";
  rep.subsuites[1].suite += " exp(-r), exp(-r) cos(phi)";
  rep.subsuites[2].suite += " exp(-2r), exp(-2r)";
  rep.subsuites[3].suite += " mu=1/2";
  const cplx half_pi = micz_inner_product(e1, e1);
  rep.add("inner_product_value", {{"Psi", "exp(-r)"}}, std::numbers::pi / 2, half_pi.real(),
          std::abs(half_pi - std::numbers::pi / 2), tol);

  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> radius(0.05, 3.0);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  double metric_dev = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double rho = radius(rng);
    const auto g = pullback_metric(rho, angle(rng));
    const double factor = 4.0 * rho * rho;
    metric_dev = std::max({metric_dev, std::abs(g[0] - factor) / factor, std::abs(g[1]) / factor,
                           std::abs(g[2] - factor * rho * rho) / (factor * rho * rho)});
  }
  rep.add("metric_pullback", {{"points", 20}}, "4 rho^2 (d rho^2 + rho^2 d theta^2)", "Jacobian of pi", metric_dev,
          opt.tol.value_or(1e-10));

  // n = 2 Kepler levels against the MICZ radial problem (m = 1, l = mu).
  const double spec_tol = opt.tol.value_or(1e-6);
  for (int sigma = 0; sigma <= 1; ++sigma) {
    const RadialFamilyParams p(HalfInt::from_twice(2), HalfInt::from_twice(sigma));
    const RadialSpectrum s = solve_radial_family(p, SolverConfig::defaults_for(p, 4));
    Worst w;
    json expected = json::array();
    json actual = json::array();
    for (int level = 0; level < 4; ++level) {
      const double e = kepler_level_energy(2, sigma, level);
      expected.push_back(e);
      actual.push_back(s.eigenvalues[level]);
      w.update(rel(s.eigenvalues[level], e), {{"I", level}});
    }
    rep.add("spectrum_transport sigma=" + std::to_string(sigma),
            {{"m", 1}, {"l", 0.5 * sigma}, {"levels", 4}, {"worst", w.where}}, expected, actual, w.dev, spec_tol,
            w.dev);
  }
  return rep;
}

// ---------------------------------------------------------------------------

VerificationReport eigensolver_suite(const SuiteOptions& opt) {
  preflight(Suite::eigensolver, opt);
  const double tol = pick(opt, default_tolerance(Suite::eigensolver));
  const double relaxed = 10.0 * tol;
  VerificationReport rep;
  rep.suite = "eigensolver";
  rep.notes.push_back("Factored cell-integrated discretization of -(1/2)u'' + [l'(l'+1)/(2r^2) - 1/r]u = E u, "
                      "Richardson-extrapolated over three grids.");
  rep.notes.push_back("Channels with l' < 0 use the relaxed tolerance 10 * tol.");

  VerificationReport fam;
  fam.suite = "radial_family";
  bool identity_ok = true;
  for (const RadialFamilyParams& p : family_matrix()) {
    const json at = {{"m", p.m().value()}, {"l", p.l().value()}, {"lprime", p.lprime()}};
    identity_ok = identity_ok && centrifugal_sixteenths(p) == lprime_product_sixteenths(p);
    const RadialSpectrum s = solve_radial_family(p, SolverConfig::defaults_for(p, 3));
    json expected = json::array();
    Worst w;
    for (int k = 1; k <= 3; ++k) {
      expected.push_back(radial_family_energy(p, k));
      w.update(rel(s.eigenvalues[k - 1], radial_family_energy(p, k)), {{"k", k}});
    }
    json params = at;
    if (s.warning) params["warning"] = *s.warning;
    fam.add("energies " + p.str(), params, expected, s.eigenvalues, w.dev, p.lprime() < 0 ? relaxed : tol, w.dev);

    if (p.four_lprime() >= 0) {
      json slopes = json::array();
      double worst_slope = 0.0;
      for (int k = 1; k <= 3; ++k) {
        const double e = radial_family_energy(p, k);
        for (std::size_t g = 0; g + 1 < s.per_grid.size(); ++g) {
          const double slope =
              std::log2(std::abs(s.per_grid[g][k - 1] - e) / std::abs(s.per_grid[g + 1][k - 1] - e));
          slopes.push_back(slope);
          worst_slope = std::max(worst_slope, std::abs(slope - 2.0));
        }
      }
      fam.add("convergence_order " + p.str(), at, 2.0, slopes, worst_slope, 0.2);
    }

    const double overlap = eigenvector_overlap(p, SolverConfig::defaults_for(p, 1), 1);
    fam.add("ground_overlap " + p.str(), at, 1.0, overlap, 1.0 - overlap, std::max(1e-6, tol));
  }
  fam.add_flag("centrifugal_identity", {{"families", family_matrix().size()}},
               "l^2 + (m-1) l + (m/2)(m/2-1) = l'(l'+1)", identity_ok ? "exact" : "mismatch", identity_ok);
  rep.subsuites.push_back(std::move(fam));

  VerificationReport kep;
  kep.suite = "kepler_channels";
  for (int n : dims_of(Suite::eigensolver, opt))
    for (int sigma = 0; sigma <= 1; ++sigma)
      for (int l = sigma; l <= 4; l += 2) {
        const QuantumChannel ch = QuantumChannel::make(n, sigma, 1, l);
        const RadialFamilyParams p = family_of(ch);
        const RadialSpectrum s = solve_kepler_channel(ch, SolverConfig::defaults_for(p, 3));
        json expected = json::array();
        Worst w;
        for (int k = 1; k <= 3; ++k) {
          const double e = channel_energy(QuantumChannel::make(n, sigma, k, l));
          expected.push_back(e);
          w.update(rel(s.eigenvalues[k - 1], e), {{"k", k}});
        }
        kep.add("channel n=" + std::to_string(n) + " sigma=" + std::to_string(sigma) + " l=" + std::to_string(l),
                {{"n", n}, {"sigma", sigma}, {"l", l}, {"lprime", p.lprime()}, {"worst", w.where}}, expected,
                s.eigenvalues, w.dev, p.lprime() < 0 ? relaxed : tol, w.dev);
      }
  rep.subsuites.push_back(std::move(kep));
  return rep;
}

// ---------------------------------------------------------------------------

VerificationReport run_suite(Suite s, const SuiteOptions& opt) {
  preflight(s, opt);
  switch (s) {
    case Suite::algebra: return algebra_suite(opt);
    case Suite::radial: return radial_suite(opt);
    case Suite::twist: return twist_suite(opt);
    case Suite::micz2d: return micz2d_suite(opt);
    case Suite::eigensolver: return eigensolver_suite(opt);
    case Suite::all: {
      VerificationReport rep;
      rep.suite = "all";
      for (Suite sub : {Suite::algebra, Suite::radial, Suite::twist, Suite::micz2d, Suite::eigensolver})
        rep.subsuites.push_back(run_suite(sub, opt));
      return rep;
    }
  }
  fail(ErrorKind::parameter, "unknown suite");
}

}  // namespace o1kepler
