#include "ncw/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace ncw {

namespace {

constexpr double kTraceDeficitTol = 1e-9;

// Coherent-state amplitudes <n|alpha> = e^{-|alpha|^2/2} alpha^n / sqrt(n!),
// built iteratively to stay in range for large |alpha|.
Eigen::VectorXcd coherent_amplitudes(cxd alpha, int dim) {
  Eigen::VectorXcd psi(dim);
  cxd term = std::exp(-0.5 * std::norm(alpha));
  psi(0) = term;
  for (int n = 1; n < dim; ++n) {
    term *= alpha / std::sqrt(double(n));
    psi(n) = term;
  }
  return psi;
}

FockMatrix finalize_density(FockMatrix rho, const std::string& what) {
  double tr = rho.trace().real();
  if (tr < 1.0 - kTraceDeficitTol) {
    std::ostringstream msg;
    msg << what << ": truncated trace " << tr << " below 1 - 1e-9; increase dim";
    throw TruncationFailure(msg.str(), 1.0 - tr);
  }
  rho /= tr;
  return rho;
}

// Gauss-Laguerre nodes/weights for ∫_0^∞ e^{-x} f(x) dx via the
// Golub-Welsch symmetric tridiagonal eigenproblem.
void gauss_laguerre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jac(k, k) = 2.0 * k + 1.0;
    if (k + 1 < n) {
      jac(k, k + 1) = double(k + 1);
      jac(k + 1, k) = double(k + 1);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  nodes.resize(n);
  weights.resize(n);
  for (int k = 0; k < n; ++k) {
    nodes[k] = es.eigenvalues()(k);
    double v0 = es.eigenvectors()(0, k);
    weights[k] = v0 * v0;  // beta_0 = ∫ e^{-x} dx = 1
  }
}

}  // namespace

OscillatorStateSpec OscillatorStateSpec::coherent(cxd a0) {
  OscillatorStateSpec s;
  s.family = Family::Coherent;
  s.alpha0 = a0;
  return s;
}

OscillatorStateSpec OscillatorStateSpec::thermal(double nbar) {
  if (nbar < 0.0) throw DomainError("thermal: nbar must be >= 0");
  OscillatorStateSpec s;
  s.family = Family::Thermal;
  s.nbar = nbar;
  return s;
}

OscillatorStateSpec OscillatorStateSpec::fock(int n) {
  if (n < 0) throw DomainError("fock: N must be >= 0");
  OscillatorStateSpec s;
  s.family = Family::Fock;
  s.fock_n = n;
  return s;
}

OscillatorStateSpec OscillatorStateSpec::vacuum_subtracted_thermal() {
  OscillatorStateSpec s;
  s.family = Family::VacuumSubtractedThermal;
  return s;
}

OscillatorStateSpec OscillatorStateSpec::cat(double a0) {
  OscillatorStateSpec s;
  s.family = Family::Cat;
  s.cat_alpha0 = a0;
  return s;
}

OscillatorStateSpec OscillatorStateSpec::custom_density(FockMatrix rho) {
  if (rho.rows() < 1 || rho.rows() != rho.cols())
    throw InvalidDimension("custom_density: matrix must be square, dim >= 1");
  if (!is_hermitian(rho))
    throw ContractViolation("custom_density: matrix is not Hermitian within 1e-12");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
    throw ContractViolation("custom_density: trace must equal 1 within 1e-10");
  Eigen::SelfAdjointEigenSolver<FockMatrix> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw ContractViolation("custom_density: matrix has eigenvalue below -1e-10");
  OscillatorStateSpec s;
  s.family = Family::CustomDensity;
  s.custom = std::move(rho);
  return s;
}

ClassicalClaim OscillatorStateSpec::classical_claim() const {
  switch (family) {
    case Family::Coherent:
    case Family::Thermal:
      return ClassicalClaim::Classical;
    case Family::Fock:
      return fock_n == 0 ? ClassicalClaim::Classical : ClassicalClaim::Nonclassical;
    case Family::VacuumSubtractedThermal:
      return ClassicalClaim::Nonclassical;
    case Family::Cat:
      return cat_alpha0 == 0.0 ? ClassicalClaim::Classical : ClassicalClaim::Nonclassical;
    case Family::CustomDensity:
      return ClassicalClaim::Unknown;
  }
  return ClassicalClaim::Unknown;
}

std::string OscillatorStateSpec::label() const {
  std::ostringstream os;
  switch (family) {
    case Family::Coherent:
      os << "coherent(alpha0=" << alpha0.real();
      if (alpha0.imag() != 0.0) os << (alpha0.imag() > 0 ? "+" : "") << alpha0.imag() << "i";
      os << ")";
      break;
    case Family::Thermal:
      os << "thermal(nbar=" << nbar << ")";
      break;
    case Family::Fock:
      os << "fock(N=" << fock_n << ")";
      break;
    case Family::VacuumSubtractedThermal:
      os << "vacuum_subtracted_thermal";
      break;
    case Family::Cat:
      os << "cat(alpha0=" << cat_alpha0 << ")";
      break;
    case Family::CustomDensity:
      os << "custom(dim=" << custom.rows() << ")";
      break;
  }
  return os.str();
}

void QubitInit::validate() const {
  if (!(z0 >= 0.0 && z0 <= 1.0)) throw DomainError("QubitInit: z0 must lie in [0, 1]");
  if (std::norm(w0) > z0 * (1.0 - z0) + 1e-15)
    throw DomainError("QubitInit: |w0|^2 exceeds z0 (1 - z0); not a density matrix");
}

FockMatrix build_density(const OscillatorStateSpec& spec, int dim) {
  if (dim < 1) throw InvalidDimension("build_density: dim must be >= 1");
  switch (spec.family) {
    case Family::Coherent: {
      Eigen::VectorXcd psi = coherent_amplitudes(spec.alpha0, dim);
      return finalize_density(psi * psi.adjoint(), "coherent");
    }
    case Family::Thermal: {
      if (spec.nbar < 0.0) throw DomainError("thermal: nbar must be >= 0");
      FockMatrix rho = FockMatrix::Zero(dim, dim);
      const double nb = spec.nbar;
      // p_n = nbar^n / (nbar+1)^{n+1}
      double p = 1.0 / (nb + 1.0);
      for (int n = 0; n < dim; ++n) {
        rho(n, n) = p;
        p *= nb / (nb + 1.0);
      }
      return finalize_density(std::move(rho), "thermal");
    }
    case Family::Fock: {
      if (spec.fock_n >= dim)
        throw TruncationFailure("fock: level N outside truncated space", 1.0);
      FockMatrix rho = FockMatrix::Zero(dim, dim);
      rho(spec.fock_n, spec.fock_n) = 1.0;
      return rho;
    }
    case Family::VacuumSubtractedThermal: {
      // unit-mean thermal with the vacuum removed: weights 2^{-n}, n >= 1
      FockMatrix rho = FockMatrix::Zero(dim, dim);
      double p = 0.5;
      for (int n = 1; n < dim; ++n) {
        rho(n, n) = p;
        p *= 0.5;
      }
      return finalize_density(std::move(rho), "vacuum_subtracted_thermal");
    }
    case Family::Cat: {
      const double a0 = spec.cat_alpha0;
      Eigen::VectorXcd plus = coherent_amplitudes(cxd(a0, 0.0), dim);
      Eigen::VectorXcd minus = coherent_amplitudes(cxd(-a0, 0.0), dim);
      Eigen::VectorXcd psi = (plus + minus) / std::sqrt(2.0 * (1.0 + std::exp(-2.0 * a0 * a0)));
      return finalize_density(psi * psi.adjoint(), "cat");
    }
    case Family::CustomDensity: {
      const int d0 = int(spec.custom.rows());
      if (dim >= d0) {
        FockMatrix rho = FockMatrix::Zero(dim, dim);
        rho.topLeftCorner(d0, d0) = spec.custom;
        return rho;
      }
      double cut = 0.0;
      for (int n = dim; n < d0; ++n) cut += spec.custom(n, n).real();
      if (cut > kTraceDeficitTol)
        throw TruncationFailure("custom: requested dim cuts non-negligible mass", cut);
      return finalize_density(spec.custom.topLeftCorner(dim, dim), "custom");
    }
  }
  throw Error("build_density: unreachable");
}

std::vector<PSample> classical_p_sampler(const OscillatorStateSpec& spec) {
  if (spec.classical_claim() != ClassicalClaim::Classical)
    throw UnsupportedFamily(
        "classical_p_sampler: " + spec.label() +
        " has no valid probability P distribution");
  switch (spec.family) {
    case Family::Coherent:
      return {{spec.alpha0, 1.0}};
    case Family::Fock:  // N = 0 only (vacuum)
    case Family::Cat:   // alpha0 = 0 only (vacuum)
      return {{cxd(0.0, 0.0), 1.0}};
    case Family::Thermal: {
      if (spec.nbar == 0.0) return {{cxd(0.0, 0.0), 1.0}};
      // P_th(alpha) = exp(-|alpha|^2/nbar) / (pi nbar). In polar coordinates
      // with u = r^2/nbar the radial integral is ∫ e^{-u} du; the angular
      // integral of a 2pi-periodic smooth phase is done by the trapezoid rule.
      const int n_rad = 64;
      const int n_ang = 160;
      std::vector<double> u, w;
      gauss_laguerre(n_rad, u, w);
      std::vector<PSample> samples;
      samples.reserve(size_t(n_rad) * n_ang);
      for (int j = 0; j < n_rad; ++j) {
        const double r = std::sqrt(spec.nbar * u[j]);
        const double wj = w[j] / double(n_ang);
        for (int m = 0; m < n_ang; ++m) {
          const double th = 2.0 * std::numbers::pi * m / n_ang;
          samples.push_back({std::polar(r, th), wj});
        }
      }
      return samples;
    }
    default:
      throw UnsupportedFamily("classical_p_sampler: unsupported family");
  }
}

}  // namespace ncw
