#pragma once

#include <complex>

#include <Eigen/Dense>

#include "ncw/errors.hpp"

namespace ncw {

using cxd = std::complex<double>;
using FockMatrix = Eigen::MatrixXcd;

// Absolute entrywise tolerance for tagging a matrix Hermitian.
inline constexpr double kHermTol = 1e-12;

// Policy driving the adaptive choice of truncation dimension.
struct TruncationPolicy {
  int initial_dim = 16;
  double tail_tolerance = 1e-12;  // max admissible mass in top 10% of levels
  int max_dim = 1024;
  int growth_factor = 2;

  void validate() const;
};

// Annihilation operator a on a dim-level truncated Fock space:
// <n|a|n+1> = sqrt(n+1).
FockMatrix annihilation(int dim);

// a†a, diagonal (0, 1, ..., dim-1).
FockMatrix number_operator(int dim);

// Displaced-oscillator Hamiltonian H± = omega (a†a ± beta (a + a†)), hbar = 1.
// sign must be +1 or -1; dim >= 2.
FockMatrix displaced_hamiltonian(int sign, double beta, double omega, int dim);

// max_{ij} |A_ij - conj(A_ji)|
double hermiticity_defect(const FockMatrix& a);

bool is_hermitian(const FockMatrix& a, double tol = kHermTol);

// Eigendecomposition of a Hermitian matrix, cached so one factorization
// serves a whole time grid of propagators.
class HermEigen {
 public:
  explicit HermEigen(const FockMatrix& h);

  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  const FockMatrix& eigenvectors() const { return evecs_; }

  // exp(scale * H) = V exp(scale * diag) V†
  FockMatrix expm(cxd scale) const;

  // max |V V† - I|, a proxy for propagator unitarity defect
  double unitarity_defect() const;

 private:
  Eigen::VectorXd evals_;
  FockMatrix evecs_;
};

// exp(scale * H) for Hermitian H via eigendecomposition. For purely
// imaginary scale the result is unitary to ~1e-10.
FockMatrix herm_expm(const FockMatrix& h, cxd scale);

struct OscillatorStateSpec;  // states.hpp

// Smallest tried dimension at which (i) the state's tail mass above level
// 0.9*d is below tail_tolerance and (ii) doubling d moves |W(t)| by less
// than tail_tolerance in sup norm over a coarse 101-point g-trace grid.
// Dimensions grow by policy.growth_factor up to policy.max_dim.
int adaptive_dim(const OscillatorStateSpec& spec, double beta, const TruncationPolicy& policy);

}  // namespace ncw
