#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncw/oracle.hpp"

namespace ncw {

// Margin above 1 that max |W| must exceed before a violation is declared.
// Two tiers reflect the two error floors.
inline constexpr double kAnalyticDecisionMargin = 1e-9;
inline constexpr double kOracleDecisionMargin = 1e-7;

double decision_margin(Method m);

struct ViolationReport {
  double max_w = 0.0;
  double argmax_t = 0.0;
  bool violated = false;
  double margin = 0.0;  // max_w - 1
  Method method = Method::Analytic;
  double beta = 0.0;
  double omega = 1.0;
  std::string family;
  int dim_used = 0;  // 0 for analytic traces
};

struct ThresholdResult {
  bool flip_found = false;
  double beta_lo = 0.0;  // violated(beta_lo) = false
  double beta_hi = 0.0;  // violated(beta_hi) = true
  std::vector<double> scan_grid;
  double resolution = 0.0;
};

enum class Verdict { CertifiedNonclassical, NoCertificate };

std::string verdict_name(Verdict v);

// Golden-section maximization of a smooth unimodal f on [a, b].
// Returns argmax; fills *fmax when non-null.
double golden_max(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-10, double* fmax = nullptr);

// Grid scan of |W| over one period followed by golden-section refinement of
// the maximum in a ±1-grid-step bracket.
ViolationReport scan_period(const std::function<double(double)>& witness,
                            double beta, double omega, Method method,
                            const std::string& family, int grid_points = 2001,
                            int dim_used = 0);

// Builds the witness function for the spec + method, then scans. Oracle
// methods resolve the truncation dimension through adaptive_dim.
ViolationReport scan_period(const OscillatorStateSpec& spec, double beta,
                            double omega, Method method,
                            const TruncationPolicy& policy = {},
                            int grid_points = 2001,
                            const QubitInit& qubit = {}, double omega0 = 1.0);

// Coarse grid over [beta_min, beta_max] then bisection on the first
// false -> true flip of violated(beta). flip_found = false is a valid
// outcome (the verdict is constant on the grid).
ThresholdResult beta_threshold(const OscillatorStateSpec& spec,
                               double beta_min, double beta_max,
                               double resolution,
                               Method method = Method::Analytic,
                               double omega = 1.0,
                               const TruncationPolicy& policy = {},
                               int coarse_points = 33);

// Violation certifies non-classicality; absence of violation certifies
// nothing (never "classical").
Verdict classify(const ViolationReport& report);

}  // namespace ncw
