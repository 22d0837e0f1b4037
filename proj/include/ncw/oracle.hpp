#pragma once

#include <string>
#include <vector>

#include "ncw/states.hpp"

namespace ncw {

enum class Method { Analytic, GTrace, Joint, Quadrature };

std::string method_name(Method m);

// |W(t)| samples over one oscillator period with provenance.
struct WitnessTrace {
  std::vector<double> times;
  std::vector<double> values;
  Method method = Method::Analytic;
  double beta = 0.0;
  double omega = 1.0;
  std::string family;
};

struct Residuals {
  double unitarity = 0.0;
  double trace = 0.0;
};

struct OracleResult {
  WitnessTrace trace;
  int dim_used = 0;
  Residuals residuals;
};

// Uniform grid of n points on [0, 2*pi/omega], endpoints included.
std::vector<double> uniform_grid(int n, double omega = 1.0);

// f(alpha, t) = exp(-4 i beta (alpha e^{-i omega t/2} + conj(alpha) e^{+i omega t/2}) sin(omega t/2)),
// the unit-modulus phase a coherent state contributes to W(t).
cxd f_phase(cxd alpha, double beta, double omega, double t);

// Residual thresholds at which an oracle result is rejected.
inline constexpr double kUnitarityThreshold = 1e-10;
inline constexpr double kTraceThreshold = 1e-9;

// Evaluates g(t) = Tr{ e^{-i H+ t} rho e^{+i H- t} } and
// |W(t)| = e^{8 beta^2 sin^2(omega t/2)} |g(t)| at arbitrary t, from one
// eigendecomposition of each displaced Hamiltonian. Immutable after
// construction; safe to share read-only across threads.
class GTraceEvaluator {
 public:
  GTraceEvaluator(const FockMatrix& rho, double beta, double omega);

  cxd g(double t) const;
  double witness(double t) const;

  int dim() const { return dim_; }
  const Residuals& residuals() const { return res_; }

 private:
  int dim_;
  double beta_, omega_;
  Eigen::VectorXd lam_plus_, lam_minus_;
  Eigen::MatrixXcd coeff_;  // C_jk = (V+† rho V-)_jk (V-† V+)_kj
  Residuals res_;
};

OracleResult g_trace_full(const FockMatrix& rho, double beta, double omega,
                          const std::vector<double>& times);
WitnessTrace g_trace(const FockMatrix& rho, double beta, double omega,
                     const std::vector<double>& times);

// Full qubit-oscillator evolution: evolves rho_q ⊗ rho_o under
// H = (omega0/2) sigma_z ⊗ 1 + 1 ⊗ omega a†a + omega beta (a + a†) ⊗ sigma_z,
// traces out the oscillator, extracts w(t) = (<sx> - i<sy>)/2 and returns
// |W(t)| = e^{8 beta^2 sin^2(omega t/2)} |w(t)/w(0)|.
struct JointResult {
  WitnessTrace trace;
  int dim_used = 0;
  Residuals residuals;
  double z_drift = 0.0;  // max_t |z(t) - z(0)|
};

// full_dense = true takes the deliberately naive route through one dense
// (2 dim) x (2 dim) Hamiltonian instead of the two sigma_z blocks; retained
// as a third cross-check.
JointResult joint_evolution_full(const FockMatrix& rho, const QubitInit& qubit,
                                 double beta, double omega, double omega0,
                                 const std::vector<double>& times,
                                 bool full_dense = false);
WitnessTrace joint_evolution(const FockMatrix& rho, const QubitInit& qubit,
                             double beta, double omega, double omega0,
                             const std::vector<double>& times,
                             bool full_dense = false);

// W(t) = sum_i w_i f(alpha_i, t) over a classical_p_sampler node set.
WitnessTrace classical_quadrature_w(const std::vector<PSample>& sampler,
                                    double beta, double omega,
                                    const std::vector<double>& times);

}  // namespace ncw
