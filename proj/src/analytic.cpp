#include "ncw/analytic.hpp"

#include <cmath>
#include <numbers>

namespace ncw {

namespace {

// omega*t folded into [0, 2pi)
double reduced_phase(double t, double omega) {
  double ph = std::fmod(omega * t, 2.0 * std::numbers::pi);
  if (ph < 0.0) ph += 2.0 * std::numbers::pi;
  return ph;
}

double sin2_half(double t, double omega) {
  const double s = std::sin(0.5 * reduced_phase(t, omega));
  return s * s;
}

}  // namespace

double laguerre(int n, double x) {
  if (n < 0) throw DomainError("laguerre: order must be >= 0");
  double lkm1 = 1.0;  // L_0
  if (n == 0) return lkm1;
  double lk = 1.0 - x;  // L_1
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * lk - k * lkm1) / (k + 1.0);
    lkm1 = lk;
    lk = next;
  }
  return lk;
}

double w_coherent(cxd /*alpha0*/, double /*beta*/, double /*t*/, double /*omega*/) {
  return 1.0;  // |f(alpha0, t)| = 1 for every coherent state
}

double w_thermal(double nbar, double beta, double t, double omega) {
  if (nbar < 0.0) throw DomainError("w_thermal: nbar must be >= 0");
  return std::exp(-16.0 * nbar * beta * beta * sin2_half(t, omega));
}

double w_fock(int n, double beta, double t, double omega) {
  const double x = 16.0 * beta * beta * sin2_half(t, omega);
  return std::abs(laguerre(n, x));
}

double w_vsth(double beta, double t, double omega) {
  return std::abs(2.0 * std::exp(-16.0 * beta * beta * sin2_half(t, omega)) - 1.0);
}

double w_cat(double alpha0, double beta, double t, double omega) {
  return 2.0 * w_cat_halved(alpha0, beta, t, omega);
}

double w_cat_halved(double alpha0, double beta, double t, double omega) {
  const double ph = reduced_phase(t, omega);
  const double s2 = sin2_half(t, omega);
  const double e2a = std::exp(-2.0 * alpha0 * alpha0);
  const double body =
      std::cos(4.0 * beta * alpha0 * std::sin(ph)) + e2a * std::cosh(8.0 * beta * alpha0 * s2);
  return std::abs(body) / (2.0 * (1.0 + e2a));
}

double w_analytic(const OscillatorStateSpec& spec, double beta, double t, double omega) {
  switch (spec.family) {
    case Family::Coherent:
      return w_coherent(spec.alpha0, beta, t, omega);
    case Family::Thermal:
      return w_thermal(spec.nbar, beta, t, omega);
    case Family::Fock:
      return w_fock(spec.fock_n, beta, t, omega);
    case Family::VacuumSubtractedThermal:
      return w_vsth(beta, t, omega);
    case Family::Cat:
      return w_cat(spec.cat_alpha0, beta, t, omega);
    case Family::CustomDensity:
      throw UnsupportedFamily("w_analytic: custom densities have no closed form");
  }
  throw Error("w_analytic: unreachable");
}

}  // namespace ncw
