#include "ncw/fock.hpp"

#include <Eigen/Eigenvalues>

namespace ncw {

void TruncationPolicy::validate() const {
  if (initial_dim < 1) throw InvalidDimension("initial_dim must be >= 1");
  if (initial_dim > max_dim) throw InvalidDimension("initial_dim exceeds max_dim");
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0))
    throw DomainError("tail_tolerance must lie in (0, 1)");
  if (growth_factor < 2) throw DomainError("growth_factor must be >= 2");
}

FockMatrix annihilation(int dim) {
  if (dim < 1) throw InvalidDimension("annihilation: dim must be >= 1");
  FockMatrix a = FockMatrix::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) a(n, n + 1) = std::sqrt(double(n + 1));
  return a;
}

FockMatrix number_operator(int dim) {
  if (dim < 1) throw InvalidDimension("number_operator: dim must be >= 1");
  FockMatrix n = FockMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = double(k);
  return n;
}

FockMatrix displaced_hamiltonian(int sign, double beta, double omega, int dim) {
  if (dim < 2) throw InvalidDimension("displaced_hamiltonian: dim must be >= 2");
  if (sign != 1 && sign != -1) throw DomainError("displaced_hamiltonian: sign must be +1 or -1");
  FockMatrix a = annihilation(dim);
  FockMatrix h = omega * (a.adjoint() * a + double(sign) * beta * (a + a.adjoint()));
  return h;
}

double hermiticity_defect(const FockMatrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const FockMatrix& a, double tol) {
  return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

HermEigen::HermEigen(const FockMatrix& h) {
  if (!is_hermitian(h))
    throw ContractViolation("HermEigen: input is not Hermitian within 1e-12");
  Eigen::SelfAdjointEigenSolver<FockMatrix> es(h);
  if (es.info() != Eigen::Success)
    throw Error("HermEigen: eigendecomposition failed");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

FockMatrix HermEigen::expm(cxd scale) const {
  const auto dim = evals_.size();
  Eigen::VectorXcd d(dim);
  for (Eigen::Index i = 0; i < dim; ++i) d(i) = std::exp(scale * evals_(i));
  return evecs_ * d.asDiagonal() * evecs_.adjoint();
}

double HermEigen::unitarity_defect() const {
  const auto dim = evecs_.rows();
  return (evecs_ * evecs_.adjoint() - FockMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

FockMatrix herm_expm(const FockMatrix& h, cxd scale) {
  return HermEigen(h).expm(scale);
}

}  // namespace ncw
