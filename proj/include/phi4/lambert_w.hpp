#pragma once

// Lambert W for all integer branches: real branches 0 and -1, complex W_k in
// the standard branch convention (cuts on the negative real axis, closed from
// above), and the two overflow-safe scalar forms W0(e^x), W_{-1}(-e^{-t})
// that the closed-form evaluators use so that no huge exponential is ever
// materialised.

#include <complex>

#include "phi4/errors.hpp"

namespace phi4::special {

// Side from which a point sitting exactly on a branch cut is approached.
enum class CutSide { above, below };

// Real branch W0 on [-1/e, inf).
double lambert_w0(double x);

// Real branch W_{-1} on [-1/e, 0).
double lambert_wm1(double x);

// Dispatch on branch in {0, -1}; domain errors outside the branch range.
double lambert_w_real(int branch, double x);

// W_k(z) with w e^w = z. For z on (-inf, 0] the approach side must be chosen;
// default is +i0. Residual |w e^w - z| <= 1e-12 (1+|z|).
std::complex<double> lambert_w(int k, std::complex<double> z, CutSide side = CutSide::above);

// W0(e^x) for any real x (Wright omega on the real line).
double w0_of_exp(double x);

// W_{-1}(-e^{-t}) for t >= 1.
double wm1_of_negexp(double t);

// W0(-e^{-t}) for t >= 1 (value in (-1, 0)).
double w0_of_negexp(double t);

// Solves w + Log w = ell (principal Log) for |ell| >> 1; this is the
// asymptotic form of every branch of W evaluated with an unreduced logarithm
// and is what K(z, lambda) needs when e^{(1+z)/lambda} overflows.
std::complex<double> w_of_exp_unreduced(std::complex<double> ell);

} // namespace phi4::special
