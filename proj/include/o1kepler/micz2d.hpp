#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "o1kepler/report.hpp"

namespace o1kepler {

using cplx = std::complex<double>;

/// Value, gradient and Hessian of a complex function in polar coordinates.
struct PolarJet {
  cplx v;
  cplx r;   // d/dradius
  cplx a;   // d/dangle
  cplx rr;
  cplx ra;
  cplx aa;
};

/// Monodromy of a plane wave function: the factor (-1)^{2 mu} picked up
/// when the angle winds once around its fundamental period (2 pi for
/// MICZ-Kepler sections, pi for the transported O(1)-Kepler functions).
enum class Monodromy { periodic, antiperiodic };

inline int twice_mu(Monodromy m) { return m == Monodromy::periodic ? 0 : 1; }

struct PlaneFunction {
  std::function<PolarJet(double radius, double angle)> eval;
  Monodromy monodromy = Monodromy::periodic;
};

struct PolarPoint {
  double radius = 1.0;
  double angle = 0.0;
};

/// psi(rho, theta) = 2 rho Psi(rho^2, 2 theta), derivatives by the chain rule.
/// mu = 0 lands in the even (sigma = 0) sector, mu = 1/2 in the odd one.
PlaneFunction transport_wavefunction(const PlaneFunction& micz);

/// (h Psi) = -(1/2) Laplacian Psi - Psi / r at a point.
cplx micz_hamiltonian(const PlaneFunction& micz, double r, double phi);

/// (H psi) = -(1/(8 rho)) Laplacian(psi / rho) - psi / rho^2 at a point.
cplx kepler_hamiltonian(const PlaneFunction& psi, double rho, double theta);

/// 60 radii log-spaced on [0.05, 4] times 12 angles in [0, pi).
std::vector<PolarPoint> default_plane_grid();

/// max |H psi - transport(h Psi)| / max |transport(h Psi)| with psi the
/// transport of Psi; zero exactly when H psi = 2 rho pi^*(h Psi), i.e. when
/// (1/rho) H rho = h on pulled-back functions.
double operator_identity_residual(const PlaneFunction& micz, std::span<const PolarPoint> grid);

/// max |H psi - E psi| / max |psi|.
double kepler_eigen_residual(const PlaneFunction& psi, cplx energy, std::span<const PolarPoint> grid);

/// Same for the MICZ-Kepler side.
double micz_eigen_residual(const PlaneFunction& micz, cplx energy, std::span<const PolarPoint> grid);

/// int_0^pi int_0^inf conj(psi1) psi2 rho drho dtheta (transported side).
cplx kepler_inner_product(const PlaneFunction& psi1, const PlaneFunction& psi2);

/// int_0^{2pi} int_0^inf conj(Psi1) Psi2 r dr dphi (MICZ-Kepler side).
cplx micz_inner_product(const PlaneFunction& micz1, const PlaneFunction& micz2);

/// Compares both inner products (and both norms) by adaptive quadrature.
VerificationReport inner_product_check(const PlaneFunction& micz1, const PlaneFunction& micz2, double tol = 1e-8);

/// Pullback of dr^2 + r^2 dphi^2 under (rho, theta) -> (rho^2, 2 theta),
/// from the Jacobian of the Cartesian map: {g_rr, g_rt, g_tt}.
std::array<double, 3> pullback_metric(double rho, double theta);

/// Test functions with analytic derivatives.
namespace plane {
/// r^p e^{-b r} e^{i s phi}; s = 1/2 gives the antiperiodic sector.
PlaneFunction radial_exponential(double power, double decay, double angular, Monodromy m);
/// r^p e^{-b r} cos(s phi)
PlaneFunction radial_exponential_cos(double power, double decay, double angular);
/// Psi = 1
PlaneFunction constant_one();
}  // namespace plane

}  // namespace o1kepler
