#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ncw/analytic.hpp"
#include "ncw/scanner.hpp"

using namespace ncw;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("golden section refines a smooth maximum") {
  auto f = [](double x) { return -(x - 1.234567) * (x - 1.234567); };
  double fmax = 0.0;
  const double xmax = golden_max(f, 0.0, 3.0, 1e-12, &fmax);
  CHECK(xmax == doctest::Approx(1.234567).epsilon(1e-8));
  CHECK(fmax == doctest::Approx(0.0));
}

TEST_CASE("scan_period on the Fock N=1 analytic trace") {
  const auto rep = scan_period(OscillatorStateSpec::fock(1), 0.5, 1.0, Method::Analytic);
  CHECK(rep.violated);
  CHECK(rep.max_w == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(rep.argmax_t == doctest::Approx(kPi).epsilon(1e-6));
  CHECK(rep.margin == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(classify(rep) == Verdict::CertifiedNonclassical);
  CHECK(rep.argmax_t >= 0.0);
  CHECK(rep.argmax_t <= 2.0 * kPi);
}

TEST_CASE("scan_period on non-violating families") {
  const auto thermal = scan_period(OscillatorStateSpec::thermal(3.0), 0.5, 1.0, Method::Analytic);
  CHECK_FALSE(thermal.violated);
  CHECK(classify(thermal) == Verdict::NoCertificate);

  const auto cat5 = scan_period(OscillatorStateSpec::cat(5.0), 0.5, 1.0, Method::Analytic);
  CHECK_FALSE(cat5.violated);

  const auto vsth =
      scan_period(OscillatorStateSpec::vacuum_subtracted_thermal(), 0.5, 1.0, Method::Analytic);
  CHECK_FALSE(vsth.violated);
  CHECK(vsth.max_w == doctest::Approx(1.0).epsilon(1e-9));
  // nonclassical state with no certificate: verdict must stay agnostic
  CHECK(OscillatorStateSpec::vacuum_subtracted_thermal().classical_claim() ==
        ClassicalClaim::Nonclassical);
  CHECK(classify(vsth) == Verdict::NoCertificate);
}

TEST_CASE("analytic and oracle scan verdicts agree for the paper families") {
  const std::vector<std::pair<OscillatorStateSpec, bool>> cases = {
      {OscillatorStateSpec::coherent({1.0, 0.0}), false},
      {OscillatorStateSpec::thermal(1.0), false},
      {OscillatorStateSpec::fock(1), true},
      {OscillatorStateSpec::fock(15), false},
      {OscillatorStateSpec::vacuum_subtracted_thermal(), false},
      {OscillatorStateSpec::cat(1.0), true},
      {OscillatorStateSpec::cat(5.0), false},
  };
  for (const auto& [spec, expect] : cases) {
    const auto analytic = scan_period(spec, 0.5, 1.0, Method::Analytic, {}, 501);
    const auto oracle = scan_period(spec, 0.5, 1.0, Method::GTrace, {}, 501);
    CHECK(analytic.violated == expect);
    CHECK(oracle.violated == expect);
    CHECK(oracle.dim_used >= 2);
    CHECK(std::abs(analytic.max_w - oracle.max_w) < 1e-7);
  }
}

TEST_CASE("joint-method scan agrees with analytic on Fock N=1") {
  const auto rep = scan_period(OscillatorStateSpec::fock(1), 0.5, 1.0, Method::Joint, {}, 501);
  CHECK(rep.violated);
  CHECK(rep.max_w == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("beta threshold for Fock N=1 brackets 1/sqrt(8)") {
  const auto res =
      beta_threshold(OscillatorStateSpec::fock(1), 0.05, 0.5, 1e-4, Method::Analytic);
  REQUIRE(res.flip_found);
  const double expected = 1.0 / std::sqrt(8.0);
  CHECK(res.beta_hi - res.beta_lo <= 1e-4);
  CHECK(res.beta_lo <= expected + 1e-4);
  CHECK(res.beta_hi >= expected - 1e-4);
  // endpoints straddle the verdict flip
  CHECK_FALSE(scan_period(OscillatorStateSpec::fock(1), res.beta_lo, 1.0, Method::Analytic).violated);
  CHECK(scan_period(OscillatorStateSpec::fock(1), res.beta_hi, 1.0, Method::Analytic).violated);
}

TEST_CASE("beta threshold reports no flip for never-violating families") {
  const auto fock0 = beta_threshold(OscillatorStateSpec::fock(0), 0.05, 1.0, 1e-3);
  CHECK_FALSE(fock0.flip_found);
  const auto vsth =
      beta_threshold(OscillatorStateSpec::vacuum_subtracted_thermal(), 0.05, 1.0, 1e-3);
  CHECK_FALSE(vsth.flip_found);
}

TEST_CASE("cat alpha0=1 flips below beta = 0.5") {
  // the violation margin scales like beta^2, so the flip sits just above 0
  const auto res = beta_threshold(OscillatorStateSpec::cat(1.0), 0.0, 0.5, 1e-3);
  REQUIRE(res.flip_found);
  CHECK(res.beta_hi < 0.5);
  CHECK(scan_period(OscillatorStateSpec::cat(1.0), 0.5, 1.0, Method::Analytic).violated);
}

TEST_CASE("classify never says classical") {
  // exhaustive over the two possible reports
  ViolationReport rep;
  rep.violated = false;
  CHECK(classify(rep) == Verdict::NoCertificate);
  rep.violated = true;
  CHECK(classify(rep) == Verdict::CertifiedNonclassical);
}

TEST_CASE("decision margins per method") {
  CHECK(decision_margin(Method::Analytic) == kAnalyticDecisionMargin);
  CHECK(decision_margin(Method::GTrace) == kOracleDecisionMargin);
  CHECK(decision_margin(Method::Joint) == kOracleDecisionMargin);
}

TEST_CASE("scan_period input validation") {
  CHECK_THROWS_AS(scan_period(OscillatorStateSpec::fock(1), 0.5, 1.0, Method::Analytic, {}, 2),
                  DomainError);
  CHECK_THROWS_AS(beta_threshold(OscillatorStateSpec::fock(1), 0.5, 0.2, 1e-3), DomainError);
  CHECK_THROWS_AS(beta_threshold(OscillatorStateSpec::fock(1), 0.1, 0.5, 0.0), DomainError);
}
