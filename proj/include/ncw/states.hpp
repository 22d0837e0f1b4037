#pragma once

#include <string>
#include <vector>

#include "ncw/fock.hpp"

namespace ncw {

enum class Family {
  Coherent,
  Thermal,
  Fock,
  VacuumSubtractedThermal,
  Cat,
  CustomDensity,
};

enum class ClassicalClaim { Classical, Nonclassical, Unknown };

// Tagged description of an oscillator state family. Use the factory
// functions; the parameter fields are only meaningful for their family.
struct OscillatorStateSpec {
  Family family = Family::Coherent;
  cxd alpha0{0.0, 0.0};    // Coherent
  double nbar = 0.0;       // Thermal
  int fock_n = 0;          // Fock
  double cat_alpha0 = 0.0; // Cat (real by construction)
  FockMatrix custom;       // CustomDensity

  static OscillatorStateSpec coherent(cxd a0);
  static OscillatorStateSpec thermal(double nbar);
  static OscillatorStateSpec fock(int n);
  static OscillatorStateSpec vacuum_subtracted_thermal();
  static OscillatorStateSpec cat(double a0);
  static OscillatorStateSpec custom_density(FockMatrix rho);

  ClassicalClaim classical_claim() const;
  std::string label() const;
};

// Initial qubit state, rho_q = [[z0, w0], [conj(w0), 1-z0]] in the sigma_z basis.
struct QubitInit {
  double z0 = 0.5;
  cxd w0{0.5, 0.0};

  // enforces 0 <= z0 <= 1 and |w0|^2 <= z0 (1 - z0)
  void validate() const;
};

// Density matrix of the state on a dim-level truncated Fock space,
// renormalized to unit trace. Throws TruncationFailure when the truncated
// trace falls below 1 - 1e-9.
FockMatrix build_density(const OscillatorStateSpec& spec, int dim);

// One quadrature node / atom of a classical P distribution.
struct PSample {
  cxd alpha;
  double weight;
};

// Nodes and weights evaluating W(t) = ∫ d²α P(α) f(α,t) to ~1e-8 for the
// classical families (delta atoms for coherent-like states, Gauss-Laguerre
// radial x uniform angular quadrature for thermal). Refuses nonclassical
// families, whose P is not a probability measure.
std::vector<PSample> classical_p_sampler(const OscillatorStateSpec& spec);

}  // namespace ncw
