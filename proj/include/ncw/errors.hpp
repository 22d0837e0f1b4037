#pragma once

#include <stdexcept>
#include <string>

namespace ncw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested Fock-space dimension is not usable (zero, or below an operator's minimum).
struct InvalidDimension : Error {
  using Error::Error;
};

// An input violated a function contract (e.g. non-Hermitian matrix passed to herm_expm).
struct ContractViolation : Error {
  using Error::Error;
};

// Truncated representation cannot hold the state to the required accuracy.
struct TruncationFailure : Error {
  double residual;
  TruncationFailure(const std::string& msg, double res) : Error(msg), residual(res) {}
};

// Operation requested for a state family it does not support.
struct UnsupportedFamily : Error {
  using Error::Error;
};

// Numerical oracle self-checks (unitarity/trace residuals) exceeded thresholds.
struct OracleRejection : Error {
  using Error::Error;
};

// Parameter outside its mathematical domain (e.g. negative thermal occupation).
struct DomainError : Error {
  using Error::Error;
};

// Witness extraction requires w(0) != 0.
struct DivisionUndefined : Error {
  using Error::Error;
};

}  // namespace ncw
