#include "phi4/polylog.hpp"

#include <cmath>

#include "phi4/errors.hpp"

namespace phi4::special {

namespace {

using cplx = std::complex<double>;

// B_{2k}/(2k+1)! for the expansion Li2(z) = sum_k B_k u^{k+1}/(k+1)!,
// u = -log(1-z); only even Bernoulli numbers enter beyond B_1 = -1/2.
constexpr double kBernFac[16] = {
    2.7777777777777777778e-02,   // B_2/3!
    -2.7777777777777777778e-04,  // B_4/5!
    4.7241118669690098262e-06,   // B_6/7!
    -9.1857730746619635509e-08,  // B_8/9!
    1.8978869988970999072e-09,   // B_10/11!
    -4.0647616451442255268e-11,  // B_12/13!
    8.9216910204564525552e-13,   // B_14/15!
    -1.9939295860721075687e-14,  // B_16/17!
    4.5189800296199181917e-16,   // B_18/19!
    -1.0356517612181247014e-17,  // B_20/21!
    2.3952186210261867457e-19,   // B_22/23!
    -5.5817858743250093363e-21,  // B_24/25!
    1.3091507554183212858e-22,   // B_26/27!
    -3.0874198024267402932e-24,  // B_28/29!
    7.3159756527022034203e-26,   // B_30/31!
    -1.7408456572340007409e-27,  // B_32/33!
};

// core series in u = -log(1-z); converges fast for the post-transform region
// |z| <= 1, Re z <= 1/2
template <class T>
T dilog_series(T z) {
    const T u = -std::log(1.0 - z);
    const T u2 = u * u;
    T sum = u - 0.25 * u2;
    T upow = u * u2;  // u^{2k+1}
    for (double c : kBernFac) {
        const T term = c * upow;
        sum += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
        upow *= u2;
    }
    return sum;
}

template <class T>
T dilog_impl(T z) {
    const double az = std::abs(z);
    if (az == 0.0) return T{};
    if (az > 1.0) {
        // inversion onto |1/z| < 1
        const T lz = std::log(-z);
        return -kZeta2 - 0.5 * lz * lz - dilog_impl(1.0 / z);
    }
    if (std::real(z) > 0.5) {
        // reflection onto Re <= 1/2
        if (std::abs(1.0 - z) < 1e-14) return T{kZeta2};
        return kZeta2 - std::log(z) * std::log(1.0 - z) - dilog_impl(1.0 - z);
    }
    return dilog_series(z);
}

} // namespace

std::complex<double> dilog(std::complex<double> z, CutSide side) {
    if (z.imag() == 0.0) {
        if (z.real() >= 1.0) {
            // on the cut: a signed zero steers every log onto the chosen side
            return dilog_impl(cplx(z.real(), side == CutSide::above ? +0.0 : -0.0));
        }
        return cplx(dilog_real(z.real()), 0.0);
    }
    return dilog_impl(z);
}

double dilog_real(double x) {
    if (x > 1.0) throw DomainError("dilog_real: x > 1 lies on the cut; use dilog() with a side");
    if (x == 1.0) return kZeta2;
    if (x < -1.0) {
        const double l = std::log(-x);
        return -kZeta2 - 0.5 * l * l - dilog_real(1.0 / x);
    }
    if (x > 0.5) return kZeta2 - std::log(x) * std::log(1.0 - x) - dilog_real(1.0 - x);
    return dilog_series(x);
}

double nielsen(int n, int p, double z, const quad::QuadSpec& spec) {
    if (n < 1 || p < 1) throw DomainError("nielsen: need n, p >= 1");
    if (z > 1.0) throw DomainError("nielsen: z must be <= 1");
    if (z == 0.0) return 0.0;
    double fact = 1.0;  // (n-1)! p!
    for (int i = 2; i < n; ++i) fact *= i;
    for (int i = 2; i <= p; ++i) fact *= i;
    const double sign = ((n + p - 1) % 2 == 0) ? 1.0 : -1.0;
    // t = u^2 turns the t->0 log-power endpoint into u^{2p-1} log^{n-1}(u)
    auto f = [&](double u) {
        const double lt = 2.0 * std::log(u);
        const double lg = std::log1p(-z * u * u);
        double v = 2.0 / u;
        for (int i = 0; i < n - 1; ++i) v *= lt;
        for (int i = 0; i < p; ++i) v *= lg;
        return v;
    };
    quad::QuadSpec s = spec;
    s.abs_tol = std::min(s.abs_tol, 1e-11);
    auto r = quad::integrate(f, 0.0, 1.0, s,
                             z == 1.0 ? quad::Endpoint::hi : quad::Endpoint::none);
    return sign / fact * r.value;
}

} // namespace phi4::special
