#pragma once

// Adaptive Gauss-Kronrod integration, Cauchy principal values and one-sided
// Hilbert transforms on [0,inf), plus the finite-interval Tricomi residual
// used to validate angle functions.

#include <complex>
#include <functional>
#include <vector>

#include "phi4/errors.hpp"

namespace phi4::quad {

struct QuadSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    // Semi-infinite integrals are split here; the remainder is folded back
    // onto (0,1] by p -> tail_cutoff/u and integrated to machine accuracy.
    double tail_cutoff = 1e4;
};

template <class V>
struct QuadResult {
    V value{};
    double err_estimate = 0.0;
    int subdivisions_used = 0;
};

using RealResult = QuadResult<double>;
using ComplexResult = QuadResult<std::complex<double>>;

// Endpoint substitution hints for integrands with an integrable algebraic or
// logarithmic singularity at an endpoint (x -> u^2 map at that end).
enum class Endpoint { none, lo, hi };

RealResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     const QuadSpec& spec = {}, Endpoint singular = Endpoint::none);

ComplexResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                double lo, double hi, const QuadSpec& spec = {});

// Integral of f over [lo, inf): [lo, lo+tail_cutoff] adaptively, tail by the
// p = tail_cutoff/u fold. f must decay at least like p^(-1-delta).
// extra_breaks forces panel boundaries at known kinks or
// difference-quotient points; tail_err, when given, receives the error
// attributed to the folded tail alone.
RealResult integrate_half_line(const std::function<double(double)>& f, double lo,
                               const QuadSpec& spec = {},
                               const std::vector<double>& extra_breaks = {},
                               double* tail_err = nullptr);
ComplexResult integrate_half_line_complex(const std::function<std::complex<double>(double)>& f,
                                          double lo, const QuadSpec& spec = {});

// Same with the c/(1+p) counterterm subtracted from f inside the quadrature;
// for integrands that only converge after that subtraction.
RealResult integrate_half_line_ct(const std::function<double(double)>& f, double c,
                                  const QuadSpec& spec = {});

// PV integral of f(x)/(x - pole) dx over [lo, hi], lo < pole < hi, f Hoelder
// at the pole. Uses the subtraction f(x) -> (f(x)-f(pole))/(x-pole) plus the
// analytic term f(pole) * log((hi-pole)/(pole-lo)); the window [pole-w,pole+w]
// with w = min(pole-lo, hi-pole) is kept as separate panels so the rule is
// exact on constants.
RealResult principal_value(const std::function<double(double)>& f, double lo, double hi,
                           double pole, const QuadSpec& spec = {});

// One-sided Hilbert transform (1/pi) PV int_0^inf f(p)/(p-a) dp for a >= 0.
// a = 0 is the endpoint-pole case: the integral is taken as written, which
// requires f(p)/p integrable at 0.
double hilbert_halfline(const std::function<double(double)>& f, double a,
                        const QuadSpec& spec = {});

// Finite Hilbert transform (1/pi) PV int_0^L2 f(p)/(p-a) dp, 0 < a < L2.
double hilbert_finite(const std::function<double(double)>& f, double a, double L2,
                      const QuadSpec& spec = {});

// Residual of the finite-interval identity
//   H_b[e^{H[tau]} sin tau] - (e^{H_b[tau]} cos tau(b) - 1)
// for a Hoelder-continuous tau on [0, L2]; zero up to quadrature error for
// every such tau.
double tricomi_check(const std::function<double(double)>& tau, double L2, double b,
                     const QuadSpec& spec = {});

} // namespace phi4::quad
