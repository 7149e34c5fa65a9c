#include "o1kepler/micz2d.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "o1kepler/error.hpp"

namespace o1kepler {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQuadTol = 1e-13;

cplx laplacian_polar(const PolarJet& j, double r) { return j.rr + j.r / r + j.aa / (r * r); }

// int_0^inf f(r) r dr by double-exponential quadrature; values that
// overflow far out on the half-line are where the integrand has underflowed.
double radial_integral(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto guarded = [&](double r) {
    const double v = f(r) * r;
    return std::isfinite(v) ? v : 0.0;
  };
  return integrator.integrate(guarded, kQuadTol);
}

cplx polar_inner_product(const PlaneFunction& f1, const PlaneFunction& f2, double angle_period) {
  require(f1.monodromy == f2.monodromy, ErrorKind::parameter,
          "inner product: functions live in different monodromy sectors");
  auto part = [&](bool imag) {
    auto angular = [&](double angle) {
      return radial_integral([&](double r) {
        const cplx z = std::conj(f1.eval(r, angle).v) * f2.eval(r, angle).v;
        return imag ? z.imag() : z.real();
      });
    };
    double err = 0.0;
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(angular, 0.0, angle_period, 12, kQuadTol, &err);
    require(std::isfinite(v), ErrorKind::accuracy, "inner product: quadrature did not converge");
    return v;
  };
  return {part(false), part(true)};
}

}  // namespace

PlaneFunction transport_wavefunction(const PlaneFunction& micz) {
  PlaneFunction out;
  out.monodromy = micz.monodromy;
  out.eval = [inner = micz.eval](double rho, double theta) {
    require(rho > 0.0, ErrorKind::domain, "transport: rho must be positive");
    const PolarJet P = inner(rho * rho, 2.0 * theta);
    const double r2 = rho * rho;
    PolarJet j;
    j.v = 2.0 * rho * P.v;
    j.r = 2.0 * P.v + 4.0 * r2 * P.r;
    j.rr = 12.0 * rho * P.r + 8.0 * rho * r2 * P.rr;
    j.a = 4.0 * rho * P.a;
    j.ra = 4.0 * P.a + 8.0 * r2 * P.ra;
    j.aa = 8.0 * rho * P.aa;
    return j;
  };
  return out;
}

cplx micz_hamiltonian(const PlaneFunction& micz, double r, double phi) {
  require(r > 0.0, ErrorKind::domain, "micz_hamiltonian: r must be positive");
  const PolarJet j = micz.eval(r, phi);
  return -0.5 * laplacian_polar(j, r) - j.v / r;
}

cplx kepler_hamiltonian(const PlaneFunction& psi, double rho, double theta) {
  require(rho > 0.0, ErrorKind::domain, "kepler_hamiltonian: rho must be positive");
  const PolarJet j = psi.eval(rho, theta);
  // g = psi / rho
  PolarJet g;
  g.v = j.v / rho;
  g.r = j.r / rho - j.v / (rho * rho);
  g.rr = j.rr / rho - 2.0 * j.r / (rho * rho) + 2.0 * j.v / (rho * rho * rho);
  g.aa = j.aa / rho;
  return -laplacian_polar(g, rho) / (8.0 * rho) - j.v / (rho * rho);
}

std::vector<PolarPoint> default_plane_grid() {
  std::vector<PolarPoint> g;
  const int nr = 60;
  const int na = 12;
  const double lo = 0.05;
  const double hi = 4.0;
  for (int i = 0; i < nr; ++i) {
    const double rho = lo * std::pow(hi / lo, static_cast<double>(i) / (nr - 1));
    for (int a = 0; a < na; ++a) g.push_back({rho, kPi * a / na});
  }
  return g;
}

double operator_identity_residual(const PlaneFunction& micz, std::span<const PolarPoint> grid) {
  const PlaneFunction psi = transport_wavefunction(micz);
  double dev = 0.0;
  double scale = 0.0;
  for (const auto& p : grid) {
    require(p.radius > 0.0, ErrorKind::domain, "operator_identity_residual: grid point with rho <= 0");
    const cplx lhs = kepler_hamiltonian(psi, p.radius, p.angle);
    const cplx rhs = 2.0 * p.radius * micz_hamiltonian(micz, p.radius * p.radius, 2.0 * p.angle);
    dev = std::max(dev, std::abs(lhs - rhs));
    scale = std::max(scale, std::abs(rhs));
  }
  require(scale > 0.0, ErrorKind::numerical, "operator_identity_residual: h Psi vanishes on the grid");
  return dev / scale;
}

double kepler_eigen_residual(const PlaneFunction& psi, cplx energy, std::span<const PolarPoint> grid) {
  double dev = 0.0;
  double scale = 0.0;
  for (const auto& p : grid) {
    require(p.radius > 0.0, ErrorKind::domain, "kepler_eigen_residual: grid point with rho <= 0");
    const cplx v = psi.eval(p.radius, p.angle).v;
    dev = std::max(dev, std::abs(kepler_hamiltonian(psi, p.radius, p.angle) - energy * v));
    scale = std::max(scale, std::abs(v));
  }
  require(scale > 0.0, ErrorKind::numerical, "kepler_eigen_residual: function vanishes on the grid");
  return dev / scale;
}

double micz_eigen_residual(const PlaneFunction& micz, cplx energy, std::span<const PolarPoint> grid) {
  double dev = 0.0;
  double scale = 0.0;
  for (const auto& p : grid) {
    require(p.radius > 0.0, ErrorKind::domain, "micz_eigen_residual: grid point with r <= 0");
    const cplx v = micz.eval(p.radius, p.angle).v;
    dev = std::max(dev, std::abs(micz_hamiltonian(micz, p.radius, p.angle) - energy * v));
    scale = std::max(scale, std::abs(v));
  }
  require(scale > 0.0, ErrorKind::numerical, "micz_eigen_residual: function vanishes on the grid");
  return dev / scale;
}

cplx kepler_inner_product(const PlaneFunction& psi1, const PlaneFunction& psi2) {
  return polar_inner_product(psi1, psi2, kPi);
}

cplx micz_inner_product(const PlaneFunction& micz1, const PlaneFunction& micz2) {
  return polar_inner_product(micz1, micz2, 2.0 * kPi);
}

VerificationReport inner_product_check(const PlaneFunction& micz1, const PlaneFunction& micz2, double tol) {
  const PlaneFunction psi1 = transport_wavefunction(micz1);
  const PlaneFunction psi2 = transport_wavefunction(micz2);
  VerificationReport rep;
  rep.suite = "inner_product";
  auto compare = [&](const std::string& name, cplx micz_side, cplx kepler_side) {
    const double dev = std::abs(micz_side - kepler_side);
    const double scale = std::max(1.0, std::abs(micz_side));
    std::optional<double> rel;
    if (std::abs(micz_side) > 0.0) rel = dev / std::abs(micz_side);
    rep.add(name, json{{"mu", 0.5 * twice_mu(micz1.monodromy)}},
            json::array({micz_side.real(), micz_side.imag()}), json::array({kepler_side.real(), kepler_side.imag()}),
            dev, tol * scale, rel);
  };
  compare("inner_product", micz_inner_product(micz1, micz2), kepler_inner_product(psi1, psi2));
  compare("norm_first", micz_inner_product(micz1, micz1), kepler_inner_product(psi1, psi1));
  compare("norm_second", micz_inner_product(micz2, micz2), kepler_inner_product(psi2, psi2));
  return rep;
}

std::array<double, 3> pullback_metric(double rho, double theta) {
  // (x, y) = (rho^2 cos 2theta, rho^2 sin 2theta)
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  const double x_r = 2.0 * rho * c;
  const double y_r = 2.0 * rho * s;
  const double x_t = -2.0 * rho * rho * s;
  const double y_t = 2.0 * rho * rho * c;
  return {x_r * x_r + y_r * y_r, x_r * x_t + y_r * y_t, x_t * x_t + y_t * y_t};
}

namespace plane {
namespace {

struct RadialPart {
  double v, d, dd;
};

RadialPart power_exp(double p, double b, double r) {
  const double v = std::pow(r, p) * std::exp(-b * r);
  const double q = p / r - b;
  return {v, q * v, (q * q - p / (r * r)) * v};
}

}  // namespace

PlaneFunction radial_exponential(double power, double decay, double angular, Monodromy m) {
  PlaneFunction f;
  f.monodromy = m;
  f.eval = [=](double r, double phi) {
    const RadialPart R = power_exp(power, decay, r);
    const cplx g = std::polar(1.0, angular * phi);
    const cplx ig = cplx(0.0, angular) * g;
    const cplx iig = -angular * angular * g;
    return PolarJet{R.v * g, R.d * g, R.v * ig, R.dd * g, R.d * ig, R.v * iig};
  };
  return f;
}

PlaneFunction radial_exponential_cos(double power, double decay, double angular) {
  PlaneFunction f;
  f.monodromy = Monodromy::periodic;
  f.eval = [=](double r, double phi) {
    const RadialPart R = power_exp(power, decay, r);
    const double g = std::cos(angular * phi);
    const double dg = -angular * std::sin(angular * phi);
    const double ddg = -angular * angular * g;
    return PolarJet{R.v * g, R.d * g, R.v * dg, R.dd * g, R.d * dg, R.v * ddg};
  };
  return f;
}

PlaneFunction constant_one() {
  PlaneFunction f;
  f.eval = [](double, double) { return PolarJet{1.0, 0.0, 0.0, 0.0, 0.0, 0.0}; };
  return f;
}

}  // namespace plane
}  // namespace o1kepler
