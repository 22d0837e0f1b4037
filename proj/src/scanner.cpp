#include "ncw/scanner.hpp"

#include <algorithm>
#include <cmath>

#include "ncw/analytic.hpp"

namespace ncw {

double decision_margin(Method m) {
  return m == Method::Analytic ? kAnalyticDecisionMargin : kOracleDecisionMargin;
}

std::string verdict_name(Verdict v) {
  return v == Verdict::CertifiedNonclassical ? "certified-nonclassical" : "no-certificate";
}

double golden_max(const std::function<double(double)>& f, double a, double b,
                  double tol, double* fmax) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (fmax) *fmax = std::max({fm, f1, f2});
  if (f1 >= f2 && f1 >= fm) return x1;
  if (f2 >= f1 && f2 >= fm) return x2;
  return xm;
}

ViolationReport scan_period(const std::function<double(double)>& witness,
                            double beta, double omega, Method method,
                            const std::string& family, int grid_points,
                            int dim_used) {
  if (grid_points < 3) throw DomainError("scan_period: need at least 3 grid points");
  const auto grid = uniform_grid(grid_points, omega);
  int best = 0;
  double best_w = -1.0;
  for (int i = 0; i < grid_points; ++i) {
    const double w = witness(grid[i]);
    if (w > best_w) {
      best_w = w;
      best = i;
    }
  }
  const double lo = grid[std::max(best - 1, 0)];
  const double hi = grid[std::min(best + 1, grid_points - 1)];
  double fmax = best_w;
  double argmax = golden_max(witness, lo, hi, 1e-11 * (grid.back() + 1.0), &fmax);
  if (fmax < best_w) {  // refinement never loses the grid maximum
    fmax = best_w;
    argmax = grid[best];
  }

  ViolationReport rep;
  rep.max_w = fmax;
  rep.argmax_t = argmax;
  rep.margin = fmax - 1.0;
  rep.violated = rep.margin > decision_margin(method);
  rep.method = method;
  rep.beta = beta;
  rep.omega = omega;
  rep.family = family;
  rep.dim_used = dim_used;
  return rep;
}

ViolationReport scan_period(const OscillatorStateSpec& spec, double beta,
                            double omega, Method method,
                            const TruncationPolicy& policy, int grid_points,
                            const QubitInit& qubit, double omega0) {
  switch (method) {
    case Method::Analytic: {
      auto fn = [&](double t) { return w_analytic(spec, beta, t, omega); };
      return scan_period(fn, beta, omega, method, spec.label(), grid_points, 0);
    }
    case Method::GTrace: {
      const int dim = adaptive_dim(spec, beta, policy);
      const FockMatrix rho = build_density(spec, dim);
      GTraceEvaluator ev(rho, beta, omega);
      auto fn = [&](double t) { return ev.witness(t); };
      return scan_period(fn, beta, omega, method, spec.label(), grid_points, dim);
    }
    case Method::Joint: {
      const int dim = adaptive_dim(spec, beta, policy);
      const FockMatrix rho = build_density(spec, dim);
      // pointwise evaluation reuses the block propagators through a
      // one-point time grid
      auto fn = [&](double t) {
        return joint_evolution(rho, qubit, beta, omega, omega0, {0.0, t}).values[1];
      };
      // grid pass in one call, then refine pointwise
      const auto grid = uniform_grid(grid_points, omega);
      const auto trace = joint_evolution(rho, qubit, beta, omega, omega0, grid);
      int best = 0;
      for (int i = 1; i < grid_points; ++i)
        if (trace.values[i] > trace.values[best]) best = i;
      const double lo = grid[std::max(best - 1, 0)];
      const double hi = grid[std::min(best + 1, grid_points - 1)];
      double fmax = trace.values[best];
      double argmax = golden_max(fn, lo, hi, 1e-11 * (grid.back() + 1.0), &fmax);
      if (fmax < trace.values[best]) {
        fmax = trace.values[best];
        argmax = grid[best];
      }
      ViolationReport rep;
      rep.max_w = fmax;
      rep.argmax_t = argmax;
      rep.margin = fmax - 1.0;
      rep.violated = rep.margin > decision_margin(method);
      rep.method = method;
      rep.beta = beta;
      rep.omega = omega;
      rep.family = spec.label();
      rep.dim_used = dim;
      return rep;
    }
    case Method::Quadrature: {
      const auto sampler = classical_p_sampler(spec);
      auto fn = [&](double t) {
        cxd w(0.0, 0.0);
        for (const PSample& s : sampler) w += s.weight * f_phase(s.alpha, beta, omega, t);
        return std::abs(w);
      };
      return scan_period(fn, beta, omega, method, spec.label(), grid_points, 0);
    }
  }
  throw Error("scan_period: unreachable");
}

ThresholdResult beta_threshold(const OscillatorStateSpec& spec, double beta_min,
                               double beta_max, double resolution, Method method,
                               double omega, const TruncationPolicy& policy,
                               int coarse_points) {
  if (!(beta_min >= 0.0 && beta_max > beta_min))
    throw DomainError("beta_threshold: need 0 <= beta_min < beta_max");
  if (resolution <= 0.0) throw DomainError("beta_threshold: resolution must be > 0");
  if (coarse_points < 2) throw DomainError("beta_threshold: need at least 2 grid points");

  auto violated = [&](double beta) {
    return scan_period(spec, beta, omega, method, policy).violated;
  };

  ThresholdResult res;
  res.resolution = resolution;
  res.scan_grid.resize(coarse_points);
  for (int i = 0; i < coarse_points; ++i)
    res.scan_grid[i] = beta_min + (beta_max - beta_min) * double(i) / double(coarse_points - 1);

  bool prev = violated(res.scan_grid[0]);
  int flip = -1;
  for (int i = 1; i < coarse_points && flip < 0; ++i) {
    const bool cur = violated(res.scan_grid[i]);
    if (!prev && cur) flip = i;
    prev = cur;
  }
  if (flip < 0) return res;  // verdict constant on the grid: a valid "no flip" result

  double lo = res.scan_grid[flip - 1];
  double hi = res.scan_grid[flip];
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (violated(mid) ? hi : lo) = mid;
  }
  res.flip_found = true;
  res.beta_lo = lo;
  res.beta_hi = hi;
  return res;
}

Verdict classify(const ViolationReport& report) {
  return report.violated ? Verdict::CertifiedNonclassical : Verdict::NoCertificate;
}

}  // namespace ncw
