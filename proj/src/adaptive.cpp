#include <algorithm>
#include <cmath>

#include "ncw/oracle.hpp"

namespace ncw {

namespace {

double tail_mass(const FockMatrix& rho) {
  const int d = int(rho.rows());
  const int cut = int(std::ceil(0.9 * d));
  double mass = 0.0;
  for (int n = cut; n < d; ++n) mass += rho(n, n).real();
  return mass;
}

std::vector<double> coarse_trace(const FockMatrix& rho, double beta) {
  const auto grid = uniform_grid(101, 1.0);
  GTraceEvaluator ev(rho, beta, 1.0);
  std::vector<double> w;
  w.reserve(grid.size());
  for (double t : grid) w.push_back(ev.witness(t));
  return w;
}

}  // namespace

int adaptive_dim(const OscillatorStateSpec& spec, double beta, const TruncationPolicy& policy) {
  policy.validate();
  double last_residual = 1.0;
  for (long d = std::max(policy.initial_dim, 2); d <= policy.max_dim;
       d *= policy.growth_factor) {
    try {
      FockMatrix rho = build_density(spec, int(d));
      const double tail = tail_mass(rho);
      if (tail >= policy.tail_tolerance) {
        last_residual = tail;
        continue;
      }
      // convergence under doubling, measured in sup norm over the coarse grid:
      // comparing only the two maxima can accept a dimension whose trace is
      // still drifting away from the maximizer
      const auto w1 = coarse_trace(rho, beta);
      const auto w2 = coarse_trace(build_density(spec, int(2 * d)), beta);
      double drift = 0.0;
      for (size_t i = 0; i < w1.size(); ++i)
        drift = std::max(drift, std::abs(w1[i] - w2[i]));
      if (drift < policy.tail_tolerance) return int(d);
      last_residual = drift;
    } catch (const TruncationFailure& e) {
      last_residual = e.residual;
    }
  }
  throw TruncationFailure(
      "adaptive_dim: " + spec.label() + " did not converge up to max_dim", last_residual);
}

}  // namespace ncw
