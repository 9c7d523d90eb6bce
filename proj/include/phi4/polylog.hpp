#pragma once

// Dilogarithm on C (cut [1, inf)) and Nielsen polylogarithms S_{n,p}(z) for
// real z <= 1 by direct quadrature of their defining integral.

#include <complex>

#include "phi4/lambert_w.hpp"  // CutSide
#include "phi4/quadrature.hpp"

namespace phi4::special {

inline constexpr double kZeta2 = 1.644934066848226436472415166646025;
inline constexpr double kZeta3 = 1.202056903159594285399738161511450;
inline constexpr double kZeta4 = 1.082323233711138191516003696541168;

// Li2(z), absolute accuracy ~1e-15 for |z| <= 10; points on the cut [1, inf)
// take the side flag (default +i0).
std::complex<double> dilog(std::complex<double> z, CutSide side = CutSide::above);

// Real-line fast path for x <= 1.
double dilog_real(double x);

// S_{n,p}(z) = (-1)^{n+p-1}/((n-1)! p!) int_0^1 log^{n-1}(t) log^p(1-zt) dt/t,
// n, p >= 1, z <= 1. S_{n,1} = Li_{n+1}.
double nielsen(int n, int p, double z, const quad::QuadSpec& spec = {});

} // namespace phi4::special
