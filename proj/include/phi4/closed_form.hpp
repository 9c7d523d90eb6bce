#pragma once

// Exact solution of the planar 2-point-function integral equation:
//   K(a,l)  = l W((1/l) e^{(1+a)/l}) - 1 - a   (branch by sign of l / region)
//   L(a,l)  = log((a + K)/a)
//   I_l(a)  = K - l L
//   tau_a(p), the Carleman angle function
//   N_l(a,b), the symmetric line integral entering the numerator
//   G_l(a,b) = (1+a+b) e^{N} / ((a + S_b)(b + S_a)),  S_x = 1 + x + K(x,l)
// plus two independent integral representations of G used for cross-checks.

#include <complex>

#include "phi4/quadrature.hpp"

namespace phi4::cf {

struct EvalPoint {
    double a = 0.0;
    double b = 0.0;
    std::complex<double> lambda{0.0, 0.0};
};

struct GValue {
    std::complex<double> g;
    std::complex<double> n_value;
    double err_estimate = 0.0;
};

// Real path, lambda > -1. Solves K = -lambda log(1+a+K); never materialises
// e^{(1+a)/lambda} (both Lambert factors go through the scalar forms in
// lambert_w.hpp), so small lambda is exact up to rounding.
double K(double a, double lambda);

// lambda W((1/lambda) e^{(1+p)/lambda}) = 1 + p + K(p, lambda); the recurring
// denominator building block.
double S_factor(double p, double lambda);

// Holomorphic extension. Exactly one of z, lambda may be complex:
//  - z real >= 0, lambda complex in the region right of the critical curve;
//  - lambda real > 0, z off the cuts Im z = +-pi lambda, Re z <= -(1+l-l log l);
//  - lambda real in (-1,0), z off the real ray left of -1+|l|-|l|log|l|.
std::complex<double> K_complex(std::complex<double> z, std::complex<double> lambda);

double L(double a, double lambda);    // a >= 0 (a = 0 returns -log(1+lambda))
double I_lambda(double a, double lambda);

// Continuous angle function: atan2(lambda pi, a + S(p) - lambda log(S(p)-1)),
// in [0,pi] for lambda > 0 and [-pi,0] for lambda < 0; tau(a,0,lambda) = 0 by
// continuity.
double tau(double a, double p, double lambda);

// N_lambda(a,b) by quadrature of its real-line integral along t = sinh(u)/2.
double N(double a, double b, double lambda, double* err_estimate = nullptr);
std::complex<double> N_complex(double a, double b, std::complex<double> lambda,
                               double* err_estimate = nullptr);

// Closed-form G; real and positive for real lambda in (-1/log4, inf).
double G_real(double a, double b, double lambda, double* err_estimate = nullptr);
GValue G(const EvalPoint& pt);

// G through the one-sided Hilbert transform of tau (lambda > 0, b > 0).
double G_hilbert(double a, double b, double lambda, const quad::QuadSpec& spec = {});

// G through the manifestly symmetric double-integral representation
// (lambda > 0 strictly).
double G_alt(double a, double b, double lambda, const quad::QuadSpec& spec = {});

} // namespace phi4::cf
