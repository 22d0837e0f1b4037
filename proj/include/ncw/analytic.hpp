#pragma once

#include "ncw/states.hpp"

namespace ncw {

// Laguerre polynomial L_n(x) by the three-term recurrence
// L_{k+1}(x) = ((2k+1-x) L_k - k L_{k-1}) / (k+1).
double laguerre(int n, double x);

// Closed-form |W(t)| for the oscillator state families. hbar = 1 and the
// time argument is accepted unreduced; omega*t is folded into [0, 2pi)
// internally.

// |W| = 1 for every coherent state.
double w_coherent(cxd alpha0, double beta, double t, double omega = 1.0);

// |W| = exp(-16 nbar beta^2 sin^2(omega t / 2)).
double w_thermal(double nbar, double beta, double t, double omega = 1.0);

// |W| = |L_N(16 beta^2 sin^2(omega t / 2))|.
double w_fock(int n, double beta, double t, double omega = 1.0);

// Unit-mean thermal state with the vacuum removed:
// |W| = |2 exp(-16 beta^2 sin^2(omega t / 2)) - 1|, always <= 1.
double w_vsth(double beta, double t, double omega = 1.0);

// Even cat state (|a0> + |-a0>)/norm, a0 real:
// |W| = |cos(4 beta a0 sin(omega t)) + exp(-2 a0^2) cosh(8 beta a0 sin^2(omega t/2))|
//       / (1 + exp(-2 a0^2)).
// Normalization fixed so the a0 = 0 limit gives exactly 1 (vacuum), matching
// the numerical g-trace computation.
double w_cat(double alpha0, double beta, double t, double omega = 1.0);

// Variant of w_cat with the normalization halved. It returns 1/2 at
// alpha0 = 0 instead of 1 and fails the oracle cross-check; kept only as a
// negative control in the test suites.
double w_cat_halved(double alpha0, double beta, double t, double omega = 1.0);

// Dispatch on the family. Throws UnsupportedFamily for CustomDensity,
// which has no closed form.
double w_analytic(const OscillatorStateSpec& spec, double beta, double t, double omega = 1.0);

}  // namespace ncw
