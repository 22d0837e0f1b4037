#include "ncw/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ncw {

namespace {

double sin2_half(double t, double omega) {
  const double s = std::sin(0.5 * omega * t);
  return s * s;
}

double witness_scale(double beta, double omega, double t) {
  return std::exp(8.0 * beta * beta * sin2_half(t, omega));
}

void check_density(const FockMatrix& rho) {
  if (rho.rows() < 2 || rho.rows() != rho.cols())
    throw InvalidDimension("oracle: density must be square with dim >= 2");
  if (!is_hermitian(rho))
    throw ContractViolation("oracle: density is not Hermitian within 1e-12");
}

void check_residuals(const Residuals& r) {
  if (r.unitarity > kUnitarityThreshold || r.trace > kTraceThreshold) {
    std::ostringstream msg;
    msg << "oracle rejected: unitarity defect " << r.unitarity << " (threshold "
        << kUnitarityThreshold << "), trace defect " << r.trace << " (threshold "
        << kTraceThreshold << ")";
    throw OracleRejection(msg.str());
  }
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Analytic: return "analytic";
    case Method::GTrace: return "g_trace";
    case Method::Joint: return "joint";
    case Method::Quadrature: return "quadrature";
  }
  return "?";
}

std::vector<double> uniform_grid(int n, double omega) {
  if (n < 2) throw DomainError("uniform_grid: need at least 2 points");
  if (omega <= 0.0) throw DomainError("uniform_grid: omega must be > 0");
  const double period = 2.0 * std::numbers::pi / omega;
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = period * double(i) / double(n - 1);
  return t;
}

cxd f_phase(cxd alpha, double beta, double omega, double t) {
  const double half = 0.5 * omega * t;
  const double re = (alpha * std::exp(cxd(0.0, -half))).real();  // Re(alpha e^{-i wt/2})
  return std::exp(cxd(0.0, -8.0 * beta * re * std::sin(half)));
}

GTraceEvaluator::GTraceEvaluator(const FockMatrix& rho, double beta, double omega)
    : dim_(int(rho.rows())), beta_(beta), omega_(omega) {
  check_density(rho);
  HermEigen plus(displaced_hamiltonian(+1, beta, omega, dim_));
  HermEigen minus(displaced_hamiltonian(-1, beta, omega, dim_));
  lam_plus_ = plus.eigenvalues();
  lam_minus_ = minus.eigenvalues();
  // g(t) = Tr{ V+ e^{-i L+ t} V+† rho V- e^{+i L- t} V-† }
  //      = sum_jk M_jk K_kj e^{-i (l+_j - l-_k) t}
  Eigen::MatrixXcd m = plus.eigenvectors().adjoint() * rho * minus.eigenvectors();
  Eigen::MatrixXcd k = minus.eigenvectors().adjoint() * plus.eigenvectors();
  coeff_ = m.cwiseProduct(k.transpose());
  res_.unitarity = std::max(plus.unitarity_defect(), minus.unitarity_defect());
  res_.trace = std::abs(rho.trace() - cxd(1.0));
  check_residuals(res_);
}

cxd GTraceEvaluator::g(double t) const {
  Eigen::VectorXcd u(dim_), v(dim_);
  for (int j = 0; j < dim_; ++j) u(j) = std::exp(cxd(0.0, -lam_plus_(j) * t));
  for (int k = 0; k < dim_; ++k) v(k) = std::exp(cxd(0.0, lam_minus_(k) * t));
  return u.transpose() * (coeff_ * v);
}

double GTraceEvaluator::witness(double t) const {
  return witness_scale(beta_, omega_, t) * std::abs(g(t));
}

OracleResult g_trace_full(const FockMatrix& rho, double beta, double omega,
                          const std::vector<double>& times) {
  GTraceEvaluator ev(rho, beta, omega);
  OracleResult out;
  out.trace.times = times;
  out.trace.values.reserve(times.size());
  for (double t : times) out.trace.values.push_back(ev.witness(t));
  out.trace.method = Method::GTrace;
  out.trace.beta = beta;
  out.trace.omega = omega;
  out.dim_used = ev.dim();
  out.residuals = ev.residuals();
  return out;
}

WitnessTrace g_trace(const FockMatrix& rho, double beta, double omega,
                     const std::vector<double>& times) {
  return g_trace_full(rho, beta, omega, times).trace;
}

JointResult joint_evolution_full(const FockMatrix& rho, const QubitInit& qubit,
                                 double beta, double omega, double omega0,
                                 const std::vector<double>& times, bool full_dense) {
  check_density(rho);
  qubit.validate();
  if (qubit.w0 == cxd(0.0))
    throw DivisionUndefined("joint_evolution: w(0) = 0, witness undefined");

  const int d = int(rho.rows());
  JointResult out;
  out.trace.method = Method::Joint;
  out.trace.beta = beta;
  out.trace.omega = omega;
  out.trace.times = times;
  out.trace.values.reserve(times.size());
  out.dim_used = d;
  out.residuals.trace = std::abs(rho.trace() - cxd(1.0));

  if (!full_dense) {
    // sigma_z commutes with H, so the joint propagator is block diagonal:
    // U(t) = diag( e^{-i(w0/2 + H+) t}, e^{-i(-w0/2 + H-) t} ).
    HermEigen plus(displaced_hamiltonian(+1, beta, omega, d));
    HermEigen minus(displaced_hamiltonian(-1, beta, omega, d));
    out.residuals.unitarity = std::max(plus.unitarity_defect(), minus.unitarity_defect());
    check_residuals(out.residuals);
    for (double t : times) {
      FockMatrix up = plus.expm(cxd(0.0, -t));
      FockMatrix um = minus.expm(cxd(0.0, -t));
      FockMatrix a = up * rho;
      // tr(A B†) = sum_ij A_ij conj(B_ij)
      cxd tr_pp = (a.array() * up.conjugate().array()).sum();
      cxd tr_pm = (a.array() * um.conjugate().array()).sum();
      cxd tr_mm = ((um * rho).array() * um.conjugate().array()).sum();
      const double z_t = (qubit.z0 * tr_pp).real();
      const double zb_t = ((1.0 - qubit.z0) * tr_mm).real();
      out.z_drift = std::max({out.z_drift, std::abs(z_t - qubit.z0),
                              std::abs(zb_t - (1.0 - qubit.z0))});
      const cxd w_t = std::exp(cxd(0.0, -omega0 * t)) * qubit.w0 * tr_pm;
      out.trace.values.push_back(witness_scale(beta, omega, t) *
                                 std::abs(w_t / qubit.w0));
    }
    return out;
  }

  // Naive cross-check: one dense Hamiltonian on the full 2d space,
  // qubit index major (basis |+>, |->).
  FockMatrix h = FockMatrix::Zero(2 * d, 2 * d);
  h.topLeftCorner(d, d) =
      displaced_hamiltonian(+1, beta, omega, d) + 0.5 * omega0 * FockMatrix::Identity(d, d);
  h.bottomRightCorner(d, d) =
      displaced_hamiltonian(-1, beta, omega, d) - 0.5 * omega0 * FockMatrix::Identity(d, d);
  FockMatrix rho_qo = FockMatrix::Zero(2 * d, 2 * d);
  rho_qo.topLeftCorner(d, d) = qubit.z0 * rho;
  rho_qo.topRightCorner(d, d) = qubit.w0 * rho;
  rho_qo.bottomLeftCorner(d, d) = std::conj(qubit.w0) * rho;
  rho_qo.bottomRightCorner(d, d) = (1.0 - qubit.z0) * rho;

  HermEigen eig(h);
  out.residuals.unitarity = eig.unitarity_defect();
  check_residuals(out.residuals);
  for (double t : times) {
    FockMatrix u = eig.expm(cxd(0.0, -t));
    FockMatrix evolved = u * rho_qo * u.adjoint();
    // partial trace over the oscillator
    Eigen::Matrix2cd q = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int n = 0; n < d; ++n) q(i, j) += evolved(i * d + n, j * d + n);
    out.z_drift = std::max({out.z_drift, std::abs(q(0, 0).real() - qubit.z0),
                            std::abs(q(1, 1).real() - (1.0 - qubit.z0))});
    out.trace.values.push_back(witness_scale(beta, omega, t) *
                               std::abs(q(0, 1) / qubit.w0));
  }
  return out;
}

WitnessTrace joint_evolution(const FockMatrix& rho, const QubitInit& qubit,
                             double beta, double omega, double omega0,
                             const std::vector<double>& times, bool full_dense) {
  return joint_evolution_full(rho, qubit, beta, omega, omega0, times, full_dense).trace;
}

WitnessTrace classical_quadrature_w(const std::vector<PSample>& sampler,
                                    double beta, double omega,
                                    const std::vector<double>& times) {
  WitnessTrace trace;
  trace.method = Method::Quadrature;
  trace.beta = beta;
  trace.omega = omega;
  trace.times = times;
  trace.values.reserve(times.size());
  for (double t : times) {
    cxd w(0.0, 0.0);
    for (const PSample& s : sampler) w += s.weight * f_phase(s.alpha, beta, omega, t);
    trace.values.push_back(std::abs(w));
  }
  return trace;
}

}  // namespace ncw
