#include "phi4/lambert_w.hpp"

#include <cmath>
#include <limits>

namespace phi4::special {

namespace {

constexpr double kE = 2.718281828459045235360287471352662;
constexpr double kInvE = 0.367879441171442321595523770161461;
constexpr double kPi = 3.14159265358979323846264338327950;
using cplx = std::complex<double>;

// Halley steps on w e^w = x, written so that exp(w) never overflows for the
// sign of w at hand (for w >= 0 iterate on w - x e^{-w}).
double halley_real(double w, double x) {
    for (int it = 0; it < 60; ++it) {
        double dw;
        if (w >= 0.0) {
            const double ew = std::exp(-w);
            const double r = w - x * ew;
            dw = r / (1.0 + w - (w + 2.0) * r / (2.0 * w + 2.0));
        } else {
            const double ew = std::exp(w);
            const double r = w * ew - x;
            dw = r / (ew * (1.0 + w) - (w + 2.0) * r / (2.0 * w + 2.0));
        }
        w -= dw;
        if (std::abs(dw) <= 1e-16 * (std::abs(w) + 1e-300)) break;
    }
    return w;
}

// Series around the branch point z = -1/e in p = sqrt(2(e z + 1)).
template <class T>
T branch_point_series(T p) {
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 +
                  p * (-43.0 / 540.0 + p * (769.0 / 17280.0 + p * (-221.0 / 8505.0))))));
}

} // namespace

double lambert_w0(double x) {
    if (std::isnan(x)) throw DomainError("lambert_w0: NaN argument");
    if (x < -kInvE) {
        if (x > -kInvE - 4e-16) x = -kInvE;  // round-off at the branch point
        else throw DomainError("lambert_w0: x < -1/e");
    }
    if (x == 0.0) return 0.0;
    double p2 = 2.0 * (kE * x + 1.0);
    if (p2 <= 0.0) return -1.0;
    double w;
    if (x < -0.30) {
        w = branch_point_series(std::sqrt(p2));
        if (p2 < 2e-6) return w;  // series already at machine accuracy
    } else if (x < 1.5) {
        // [2/2] Pade of W0 at 0
        w = x * (60.0 + x * (114.0 + 17.0 * x)) / (60.0 + x * (174.0 + 101.0 * x));
    } else {
        const double l1 = std::log(x), l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }
    return halley_real(w, x);
}

double lambert_wm1(double x) {
    if (std::isnan(x)) throw DomainError("lambert_wm1: NaN argument");
    if (x >= 0.0) throw DomainError("lambert_wm1: x must be < 0");
    if (x < -kInvE) {
        if (x > -kInvE - 4e-16) x = -kInvE;
        else throw DomainError("lambert_wm1: x < -1/e");
    }
    double p2 = 2.0 * (kE * x + 1.0);
    if (p2 <= 0.0) return -1.0;
    double w;
    if (x < -0.25) {
        w = branch_point_series(-std::sqrt(p2));
        if (p2 < 2e-6) return w;
    } else {
        // w = log(-x) - log(-log(-x)) + correction
        const double l1 = std::log(-x), l2 = std::log(-l1);
        w = l1 - l2 + l2 / l1;
    }
    return halley_real(w, x);
}

double lambert_w_real(int branch, double x) {
    if (branch == 0) return lambert_w0(x);
    if (branch == -1) return lambert_wm1(x);
    throw DomainError("lambert_w_real: only branches 0 and -1 attain real values");
}

namespace {

cplx halley_complex(cplx w, cplx z) {
    for (int it = 0; it < 100; ++it) {
        cplx dw;
        if (w.real() >= 0.0) {
            const cplx ew = std::exp(-w);
            const cplx r = w - z * ew;
            dw = r / (1.0 + w - (w + 2.0) * r / (2.0 * w + 2.0));
        } else {
            const cplx ew = std::exp(w);
            const cplx r = w * ew - z;
            dw = r / (ew * (1.0 + w) - (w + 2.0) * r / (2.0 * w + 2.0));
        }
        w -= dw;
        if (std::abs(dw) <= 1e-15 * (std::abs(w) + 1e-300)) return w;
    }
    throw ConvergenceError("lambert_w: Halley iteration failed to converge");
}

cplx asymptotic_seed(cplx z, int k) {
    const cplx ell = std::log(z) + cplx(0.0, 2.0 * kPi * k);
    return ell - std::log(ell);
}

} // namespace

std::complex<double> lambert_w(int k, std::complex<double> z, CutSide side) {
    if (std::isnan(z.real()) || std::isnan(z.imag()))
        throw DomainError("lambert_w: NaN argument");
    const bool on_cut = (z.imag() == 0.0) && (z.real() < 0.0);
    if (on_cut && side == CutSide::below) {
        // W_k(x - i0) = conj(W_{-k}(x + i0))
        return std::conj(lambert_w(-k, cplx(z.real(), +0.0), CutSide::above));
    }
    if (on_cut) z = cplx(z.real(), +0.0);
    if (z == 0.0) {
        if (k == 0) return 0.0;
        throw DomainError("lambert_w: z = 0 is a logarithmic singularity of branch k != 0");
    }

    cplx w;
    const double bp_dist = std::abs(z + kInvE);
    if (k == 0) {
        if (z.imag() == 0.0 && z.real() >= -kInvE) return lambert_w0(z.real());
        if (bp_dist < 0.30) {
            w = branch_point_series(std::sqrt(2.0 * (kE * z + 1.0)));
        } else if (z.real() > -1.0 && z.real() < 1.5 && std::abs(z.imag()) < 1.0 &&
                   -2.5 * std::abs(z.imag()) - 0.2 < z.real()) {
            w = z * (60.0 + z * (114.0 + 17.0 * z)) / (60.0 + z * (174.0 + 101.0 * z));
        } else {
            w = asymptotic_seed(z, 0);
        }
    } else if (k == -1) {
        if (z.imag() == 0.0 && z.real() >= -kInvE && z.real() < 0.0)
            return lambert_wm1(z.real());
        if (bp_dist < 0.30 && z.imag() >= 0.0) {
            w = branch_point_series(-std::sqrt(2.0 * (kE * z + 1.0)));
        } else {
            w = asymptotic_seed(z, -1);
        }
    } else if (k == 1) {
        if (bp_dist < 0.30 && z.imag() < 0.0) {
            w = branch_point_series(-std::sqrt(2.0 * (kE * z + 1.0)));
        } else {
            w = asymptotic_seed(z, 1);
        }
    } else {
        w = asymptotic_seed(z, k);
    }
    return halley_complex(w, z);
}

double w0_of_exp(double x) {
    if (x < -36.0) return std::exp(x);  // W0(e^x) = e^x (1 + O(e^x))
    if (x < 690.0) return lambert_w0(std::exp(x));
    // w + log w = x, fixed point then Newton polish
    double w = x - std::log(x);
    for (int it = 0; it < 8; ++it) w = x - std::log(w);
    for (int it = 0; it < 4; ++it) {
        const double f = w + std::log(w) - x;
        w -= f * w / (w + 1.0);
    }
    return w;
}

double wm1_of_negexp(double t) {
    if (t < 1.0) {
        if (t > 1.0 - 1e-12) t = 1.0;
        else throw DomainError("wm1_of_negexp: t must be >= 1");
    }
    if (t < 690.0) return lambert_wm1(-std::exp(-t));
    // w + log(-w) = -t
    double w = -(t + std::log(t));
    for (int it = 0; it < 8; ++it) w = -(t + std::log(-w));
    for (int it = 0; it < 4; ++it) {
        const double f = w + std::log(-w) + t;
        w -= f * w / (w + 1.0);
    }
    return w;
}

double w0_of_negexp(double t) {
    if (t < 1.0) {
        if (t > 1.0 - 1e-12) t = 1.0;
        else throw DomainError("w0_of_negexp: t must be >= 1");
    }
    if (t > 36.0) return -std::exp(-t);  // W0(-e) = -e(1 + O(e)), e = e^{-t}
    return lambert_w0(-std::exp(-t));
}

std::complex<double> w_of_exp_unreduced(std::complex<double> ell) {
    if (std::abs(ell) < 2.0)
        throw DomainError("w_of_exp_unreduced: |ell| too small for the asymptotic form");
    cplx w = ell - std::log(ell);
    for (int it = 0; it < 12; ++it) w = ell - std::log(w);
    for (int it = 0; it < 6; ++it) {
        const cplx f = w + std::log(w) - ell;
        const cplx dw = f * w / (w + 1.0);
        w -= dw;
        if (std::abs(dw) <= 1e-15 * std::abs(w)) break;
    }
    return w;
}

} // namespace phi4::special
