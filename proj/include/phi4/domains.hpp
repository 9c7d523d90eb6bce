#pragma once

// Analyticity geometry in the coupling plane: the cochleoid branch
// boundaries, the critical curve C traced by the branch points of K, the
// envelope E bounding the joint holomorphicity domain Omega_N, membership
// tests, and the Lambert branch index map.

#include <complex>
#include <vector>

namespace phi4::domains {

struct CurveSample {
    double param;
    std::complex<double> point;
};

enum class Curve { c_critical, c_a, envelope, b_plus, b_minus, b_zero, n_lambda_curve };

struct RegionVerdict {
    bool inside = false;
    double distance_estimate = 0.0;
    Curve nearest_curve = Curve::envelope;
    bool boundary_flag = false;  // within the 1e-9 indeterminate band
};

const char* curve_name(Curve c);

// theta -> -(1+a) (sin theta / theta) e^{i theta}; theta = 0 gives -(1+a).
std::vector<CurveSample> cochleoid(double a, double theta_lo, double theta_hi, int n);

// alpha -> -e^{1 - alpha cot alpha + i alpha} on (-pi, pi); alpha = 0 gives -1.
std::vector<CurveSample> critical_curve(double alpha_lo, double alpha_hi, int n);

struct EnvelopeResult {
    double t_E;
    double psi;  // t_E = tan(psi)/2
    std::vector<CurveSample> samples;
};

// Envelope E of the rays P(t) + a m(t), a >= 0, with P = (1/2+it)/log(1/2-it)
// and m = 1/log(1/2-it); t_E solves Im(conj(m) P') = 0.
EnvelopeResult envelope(int n);

// Region right of the critical curve C (joint holomorphicity of K and L for
// all a >= 0).
RegionVerdict in_omega_K(std::complex<double> lambda);

// Region right of the envelope E (joint holomorphicity of N and G for all
// a, b >= 0); contains the real interval (-1/log4, inf).
RegionVerdict in_omega_N(std::complex<double> lambda);

// Branch index k of W_k in K(a, lambda) for complex lambda (the assignment
// whose boundaries are every second spiral of the cochleoid). Throws on the
// 1e-9 threshold band.
int branch_index_lambda(double a, std::complex<double> lambda);

// {-1/2 + it + lambda log(1/2 + it)}, the obstruction to complexifying a at
// fixed real lambda.
std::vector<CurveSample> n_lambda_curve(double lambda, double t_lo, double t_hi, int n);

// Intersection of Re z > -1/2 with the region right of the n_lambda curve.
RegionVerdict in_omega_lambda_ab(std::complex<double> z, double lambda);

} // namespace phi4::domains
