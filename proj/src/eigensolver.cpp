#include "o1kepler/eigensolver.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "o1kepler/error.hpp"
#include "o1kepler/specialfn.hpp"

namespace o1kepler {
namespace {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
  std::vector<double> mass;     // cell-averaged r^{2l'+2}
  std::vector<double> centres;  // cell centres
};

Tridiagonal assemble(const RadialFamilyParams& p, double rmax, int cells) {
  const double lp = p.lprime();
  const double expo = 2.0 * lp + 2.0;  // >= 1 since l' >= -1/2
  const double h = rmax / cells;
  std::vector<double> face_pow(cells + 1);   // x^expo
  std::vector<double> face_pow1(cells + 1);  // x^(expo+1)
  for (int i = 0; i <= cells; ++i) {
    const double x = h * i;
    face_pow[i] = std::pow(x, expo);
    face_pow1[i] = face_pow[i] * x;
  }
  Tridiagonal t;
  t.diag.resize(cells);
  t.off.resize(cells - 1);
  t.mass.resize(cells);
  t.centres.resize(cells);
  const double h2 = h * h;
  for (int i = 0; i < cells; ++i) {
    t.centres[i] = h * (i + 0.5);
    t.mass[i] = (face_pow1[i + 1] - face_pow1[i]) / ((expo + 1.0) * h);
    const double coulomb = (face_pow[i + 1] - face_pow[i]) / (expo * h);  // average of r^{2l'+1}
    const double stiff = 0.5 * (face_pow[i] + face_pow[i + 1]) / h2;
    t.diag[i] = (stiff - coulomb) / t.mass[i];
  }
  for (int i = 0; i + 1 < cells; ++i)
    t.off[i] = -0.5 * face_pow[i + 1] / h2 / std::sqrt(t.mass[i] * t.mass[i + 1]);
  return t;
}

struct Eigenpairs {
  std::vector<double> values;
  std::vector<double> vectors;  // row-major cells x count, only when requested
};

Eigenpairs lowest(const Tridiagonal& t, int count, bool want_vectors) {
  const auto n = static_cast<lapack_int>(t.diag.size());
  lapack_int found = 0;
  lapack_int nsplit = 0;
  std::vector<double> w(n);
  std::vector<lapack_int> iblock(n);
  std::vector<lapack_int> isplit(n);
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  lapack_int info = LAPACKE_dstebz('I', 'B', n, 0.0, 0.0, 1, count, abstol, t.diag.data(), t.off.data(), &found,
                                   &nsplit, w.data(), iblock.data(), isplit.data());
  if (info != 0 || found != count) {
    fail(ErrorKind::numerical, "eigensolver: dstebz failed (info=" + std::to_string(info) +
                                   ", found=" + std::to_string(found) + " of " + std::to_string(count) + ")");
  }
  Eigenpairs out;
  if (want_vectors) {
    out.vectors.resize(static_cast<std::size_t>(n) * count);
    std::vector<lapack_int> ifail(count);
    info = LAPACKE_dstein(LAPACK_ROW_MAJOR, n, t.diag.data(), t.off.data(), found, w.data(), iblock.data(),
                          isplit.data(), out.vectors.data(), count, ifail.data());
    if (info != 0) fail(ErrorKind::numerical, "eigensolver: dstein failed (info=" + std::to_string(info) + ")");
  }
  // order 'B' groups by split block; sort values (and vector columns) ascending.
  std::vector<int> perm(count);
  for (int i = 0; i < count; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](int a, int b) { return w[a] < w[b]; });
  out.values.resize(count);
  for (int i = 0; i < count; ++i) out.values[i] = w[perm[i]];
  if (want_vectors) {
    std::vector<double> sorted(out.vectors.size());
    for (lapack_int r = 0; r < n; ++r)
      for (int c = 0; c < count; ++c) sorted[r * count + c] = out.vectors[r * count + perm[c]];
    out.vectors.swap(sorted);
  }
  return out;
}

double second_order(const RadialFamilyParams& p) {
  const double q = 2.0 * p.lprime() + 3.0;
  return (q > 2.0 + 1e-9 && q < 4.0 - 1e-9) ? q : 4.0;
}

}  // namespace

SolverConfig SolverConfig::defaults_for(const RadialFamilyParams& p, int num_levels) {
  SolverConfig c;
  c.num_levels = num_levels;
  const double span = num_levels + p.lprime() + 1.0;
  c.rmax = 40.0 * span * span;
  c.npoints = 16000;
  c.refinement_levels = 3;
  c.rmin = c.rmax / c.npoints;
  return c;
}

void SolverConfig::validate() const {
  require(rmin > 0.0 && rmin < rmax, ErrorKind::parameter, "solver config: need 0 < rmin < rmax");
  require(npoints >= 200, ErrorKind::parameter, "solver config: npoints must be >= 200");
  require(refinement_levels >= 2, ErrorKind::parameter, "solver config: refinement_levels must be >= 2");
  require(num_levels >= 1 && num_levels < npoints / 10, ErrorKind::parameter,
          "solver config: num_levels must be in [1, npoints/10)");
}

std::vector<double> discrete_eigenvalues(const RadialFamilyParams& p, double rmax, int cells, int count) {
  require(cells >= 2 && count >= 1 && count < cells, ErrorKind::parameter, "discrete_eigenvalues: bad sizes");
  return lowest(assemble(p, rmax, cells), count, false).values;
}

RadialSpectrum solve_radial_family(const RadialFamilyParams& p, const SolverConfig& cfg) {
  cfg.validate();
  RadialSpectrum out;
  for (int level = 0; level < cfg.refinement_levels; ++level) {
    const int cells = cfg.npoints << level;
    std::vector<double> ev = discrete_eigenvalues(p, cfg.rmax, cells, cfg.num_levels);
    for (int k = 0; k < cfg.num_levels; ++k) {
      if (!(ev[k] < 0.0)) {
        fail(ErrorKind::accuracy, "eigensolver: only " + std::to_string(k) + " bound states found for " +
                                      p.str() + " in a box of radius " + std::to_string(cfg.rmax) +
                                      "; increase rmax");
      }
    }
    out.per_grid.push_back(std::move(ev));
  }

  // Richardson tableau on grids refined by 2.
  std::vector<std::vector<double>> column = out.per_grid;
  double order = 2.0;
  std::vector<double> previous_best = column.back();
  while (column.size() > 1) {
    const double f = std::pow(2.0, order);
    std::vector<std::vector<double>> next;
    for (std::size_t i = 0; i + 1 < column.size(); ++i) {
      std::vector<double> x(cfg.num_levels);
      for (int k = 0; k < cfg.num_levels; ++k) x[k] = (f * column[i + 1][k] - column[i][k]) / (f - 1.0);
      next.push_back(std::move(x));
    }
    out.orders.push_back(order);
    previous_best = column.back();
    column = std::move(next);
    order = out.orders.size() == 1 ? second_order(p) : order + 2.0;
  }
  out.eigenvalues = column.front();
  out.error_estimates.resize(cfg.num_levels);
  double worst = 0.0;
  for (int k = 0; k < cfg.num_levels; ++k) {
    out.error_estimates[k] = std::abs(out.eigenvalues[k] - previous_best[k]);
    worst = std::max(worst, out.error_estimates[k] / std::abs(out.eigenvalues[k]));
  }
  if (worst > 1e-4) {
    out.warning = "Richardson extrapolation has not settled: relative change " + std::to_string(worst) +
                  " between the last two estimates";
  }
  return out;
}

RadialSpectrum solve_kepler_channel(const QuantumChannel& ch, const SolverConfig& cfg) {
  return solve_radial_family(family_of(ch), cfg);
}

double eigenvector_overlap(const RadialFamilyParams& p, const SolverConfig& cfg, int k) {
  cfg.validate();
  require(k >= 1 && k <= cfg.num_levels, ErrorKind::parameter, "eigenvector_overlap: k outside solved levels");
  const int cells = cfg.npoints << (cfg.refinement_levels - 1);
  const Tridiagonal t = assemble(p, cfg.rmax, cells);
  const Eigenpairs e = lowest(t, k, true);
  const double lp = p.lprime();
  const double nu = k + lp;
  const LaguerreParams lag{2.0 * lp + 1.0, k - 1};
  // Discrete L^2(dr) products: u = r^{l'+1} w and int u v dr ~ h sum M_i w_i v_i,
  // with y_i = sqrt(M_i) w_i the symmetric-problem eigenvector.
  double cross = 0.0;
  double num2 = 0.0;
  double ex2 = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double r = t.centres[i];
    const double w_exact = laguerre_eval(lag, 2.0 * r / nu) * std::exp(-r / nu);
    const double y = e.vectors[static_cast<std::size_t>(i) * k + (k - 1)];
    const double root_m = std::sqrt(t.mass[i]);
    cross += root_m * y * w_exact;
    num2 += y * y;
    ex2 += t.mass[i] * w_exact * w_exact;
  }
  return std::abs(cross) / std::sqrt(num2 * ex2);
}

long centrifugal_sixteenths(const RadialFamilyParams& p) {
  // l = a/2, m = b/2:  16 (l^2 + (m-1) l + (m/2)(m/2-1)) = 4a^2 + 4(b-2)a + b(b-4)
  const long a = p.l().twice();
  const long b = p.m().twice();
  return 4 * a * a + 4 * (b - 2) * a + b * (b - 4);
}

long lprime_product_sixteenths(const RadialFamilyParams& p) {
  // l' = q/4:  16 l'(l'+1) = q (q + 4)
  const long q = p.four_lprime();
  return q * (q + 4);
}

}  // namespace o1kepler
