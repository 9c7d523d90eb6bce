#include "phi4/closed_form.hpp"

#include <cmath>

#include "phi4/domains.hpp"
#include "phi4/errors.hpp"
#include "phi4/lambert_w.hpp"

namespace phi4::cf {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846264338327950;
constexpr double kLog4 = 1.386294361119890618834464242916353;
constexpr cplx kI{0.0, 1.0};

void require_lambda_gt_m1(double lambda) {
    if (!(lambda > -1.0))
        throw DomainError("K/L: real lambda must be > -1 (branch point of the real continuation)");
}

} // namespace

double S_factor(double p, double lambda) {
    if (lambda == 0.0) return 1.0 + p;
    require_lambda_gt_m1(lambda);
    if (lambda > 0.0) {
        // l W0((1/l)e^{(1+p)/l}) = l * W0(e^x), x = (1+p)/l - log l
        return lambda * special::w0_of_exp((1.0 + p) / lambda - std::log(lambda));
    }
    const double al = -lambda;
    return al * (-special::wm1_of_negexp((1.0 + p) / al + std::log(al)));
}

double K(double a, double lambda) {
    if (a < 0.0) throw DomainError("K: a must be >= 0");
    if (lambda == 0.0) return 0.0;
    return S_factor(a, lambda) - 1.0 - a;
}

std::complex<double> K_complex(std::complex<double> z, std::complex<double> lambda) {
    const bool z_real = (z.imag() == 0.0);
    const bool l_real = (lambda.imag() == 0.0);
    if (z_real && z.real() >= 0.0 && l_real && lambda.real() > -1.0)
        return cplx(K(z.real(), lambda.real()), 0.0);

    cplx log_lambda;
    if (!l_real) {
        if (z_real && z.real() >= 0.0) {
            // the genuine obstruction for this a is the solid part of the
            // cochleoid boundary C_a, the piece at or beyond the critical
            // curve's radius at the same angle
            const double a = z.real();
            const double phi = std::arg(lambda);
            const double alpha = phi - (phi > 0.0 ? kPi : -kPi);
            const double sinc = (alpha == 0.0) ? 1.0 : std::sin(alpha) / alpha;
            const double r_cut = (1.0 + a) * sinc;
            const double acot = (alpha == 0.0) ? 1.0 : alpha * std::cos(alpha) / std::sin(alpha);
            const double r_crit = std::exp(1.0 - acot);
            if (r_cut >= r_crit && std::abs(std::abs(lambda) - r_cut) < 1e-12 * (1.0 + r_cut))
                throw DomainError("K_complex: lambda on the solid cut of C_a (left of the critical curve C)");
        }
        log_lambda = std::log(lambda);
    } else if (lambda.real() > 0.0) {
        const double l = lambda.real();
        const double cut_re = -(1.0 + l - l * std::log(l));
        if (std::abs(std::abs(z.imag()) - kPi * l) < 1e-12 && z.real() <= cut_re)
            throw DomainError(z.imag() > 0 ? "K_complex: z on the cut B+_lambda"
                                           : "K_complex: z on the cut B-_lambda");
        log_lambda = std::log(l);
    } else if (lambda.real() > -1.0 && lambda.real() < 0.0) {
        const double al = -lambda.real();
        if (z.imag() == 0.0 && z.real() < -1.0 + al - al * std::log(al))
            throw DomainError("K_complex: z on the cut B0_lambda");
        // the branch ladder is indexed from the side of the negative lambda
        // axis matching sign(Im z); values glue continuously across Im z = 0
        const double s = (z.imag() >= 0.0) ? 1.0 : -1.0;
        log_lambda = cplx(std::log(al), s * kPi);
    } else {
        throw DomainError("K_complex: real lambda must be > -1");
    }

    const cplx ell = (1.0 + z) / lambda - log_lambda;
    cplx w;
    if (std::abs(ell.real()) < 680.0) {
        const int k = static_cast<int>(std::ceil(ell.imag() / (2.0 * kPi) - 0.5));
        w = special::lambert_w(k, std::exp(ell));
    } else if (ell.real() <= -680.0 &&
               std::abs(ell.imag()) <= kPi) {  // principal branch, w ~ e^ell ~ 0
        w = std::exp(ell);
    } else {
        w = special::w_of_exp_unreduced(ell);
    }
    return lambda * w - 1.0 - z;
}

double L(double a, double lambda) {
    if (a < 0.0) throw DomainError("L: a must be >= 0");
    require_lambda_gt_m1(lambda);
    if (lambda == 0.0) return 0.0;
    if (a == 0.0) return -std::log1p(lambda);
    return std::log1p(K(a, lambda) / a);
}

double I_lambda(double a, double lambda) {
    return K(a, lambda) - lambda * L(a, lambda);
}

double tau(double a, double p, double lambda) {
    if (lambda == 0.0) return 0.0;
    if (p <= 0.0) return 0.0;  // S - 1 -> 0+, the log term dominates
    const double kp = K(p, lambda);
    const double sm1 = p + kp;  // = S_factor(p, lambda) - 1 > 0
    const double x = a + 1.0 + p + kp - lambda * std::log(sm1);
    return std::atan2(lambda * kPi, x);
}

namespace {

// Integrand of N along t = sinh(u)/2:
//   (1/2 pi i) log(1 - l log(1/2-it)/(a+1/2+it)) d/dt log(1 - l log(1/2+it)/(b+1/2-it))
// with the derivative written out so no log-branch mismatch can enter.
cplx n_integrand(double u, double a, double b, cplx lambda) {
    const double t = 0.5 * std::sinh(u);
    const double ch = 0.5 * std::cosh(u);
    const cplx l1 = std::log(cplx(0.5, -t));
    const cplx d1 = cplx(a + 0.5, t);
    const cplx fa = std::log(1.0 - lambda * l1 / d1);
    const cplx l2 = std::log(cplx(0.5, t));
    const cplx d2 = cplx(b + 0.5, -t);
    const cplx wf = 1.0 - lambda * l2 / d2;
    const cplx l2p = kI / cplx(0.5, t);
    const cplx wp = -lambda * (l2p * d2 + l2 * kI) / (d2 * d2);
    return fa * wp / wf / (2.0 * kPi * kI) * ch;
}

cplx n_eval(double a, double b, cplx lambda, double* err_estimate) {
    // \int_{-U}^{U}: t ranges to sinh(19)/2 ~ 4.5e7, beyond which the
    // integrand is below 1e-12 in our lambda range
    const double U = 19.0;
    quad::QuadSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-12;
    spec.max_subdivisions = 4000;
    auto f = [&](double u) { return n_integrand(u, a, b, lambda); };
    auto r = quad::integrate_complex(f, -U, U, spec);
    if (err_estimate) *err_estimate = r.err_estimate;
    return r.value;
}

void require_real_in_omega_n(double lambda) {
    if (!(lambda > -1.0 / kLog4))
        throw DomainError("N/G: real lambda must be > -1/log 4 (boundary of Omega_N)");
}

} // namespace

double N(double a, double b, double lambda, double* err_estimate) {
    if (a < 0.0 || b < 0.0) throw DomainError("N: a, b must be >= 0");
    if (lambda == 0.0) {
        if (err_estimate) *err_estimate = 0.0;
        return 0.0;
    }
    require_real_in_omega_n(lambda);
    return n_eval(a, b, cplx(lambda, 0.0), err_estimate).real();
}

std::complex<double> N_complex(double a, double b, std::complex<double> lambda,
                               double* err_estimate) {
    if (a < 0.0 || b < 0.0) throw DomainError("N: a, b must be >= 0");
    if (lambda.imag() == 0.0) {
        const double nr = N(a, b, lambda.real(), err_estimate);
        return cplx(nr, 0.0);
    }
    auto v = domains::in_omega_N(lambda);
    if (!v.inside) throw DomainError("N_complex: lambda outside Omega_N (left of the envelope E)");
    return n_eval(a, b, lambda, err_estimate);
}

double G_real(double a, double b, double lambda, double* err_estimate) {
    if (a < 0.0 || b < 0.0) throw DomainError("G: a, b must be >= 0");
    if (lambda == 0.0) {
        if (err_estimate) *err_estimate = 0.0;
        return 1.0 / (1.0 + a + b);
    }
    require_real_in_omega_n(lambda);
    double nerr = 0.0;
    const double n = N(a, b, lambda, &nerr);
    const double sa = S_factor(a, lambda);
    const double sb = S_factor(b, lambda);
    const double g = (1.0 + a + b) * std::exp(n) / ((a + sb) * (b + sa));
    if (err_estimate) *err_estimate = std::abs(g) * nerr;
    return g;
}

GValue G(const EvalPoint& pt) {
    if (pt.lambda.imag() == 0.0) {
        double err = 0.0;
        const double nr = N(pt.a, pt.b, pt.lambda.real(), &err);
        const double g = G_real(pt.a, pt.b, pt.lambda.real());
        return {cplx(g, 0.0), cplx(nr, 0.0), std::abs(g) * err};
    }
    double err = 0.0;
    const cplx n = N_complex(pt.a, pt.b, pt.lambda, &err);
    const cplx sa = K_complex(cplx(pt.a, 0.0), pt.lambda) + 1.0 + pt.a;
    const cplx sb = K_complex(cplx(pt.b, 0.0), pt.lambda) + 1.0 + pt.b;
    const cplx g = (1.0 + pt.a + pt.b) * std::exp(n) / ((pt.a + sb) * (pt.b + sa));
    return {g, n, std::abs(g) * err};
}

double G_hilbert(double a, double b, double lambda, const quad::QuadSpec& spec) {
    if (!(lambda > 0.0)) throw DomainError("G_hilbert: lambda must be > 0");
    if (!(b > 0.0))
        throw DomainError("G_hilbert: b = 0 is the endpoint-pole limit of the transform");
    auto tau_a = [&](double p) { return tau(a, p, lambda); };
    const double h = quad::hilbert_halfline(tau_a, b, spec);
    const double kb = K(b, lambda);
    const double x = a + 1.0 + b + kb - lambda * std::log(b + kb);
    return std::exp(h) / std::hypot(lambda * kPi, x);
}

double G_alt(double a, double b, double lambda, const quad::QuadSpec& spec) {
    if (!(lambda > 0.0)) throw DomainError("G_alt: representation valid for lambda > 0 only");
    // theta_c(v) = arctan_{[0,pi]}(lambda pi / (1 + c + v - lambda log v))
    auto theta = [&](double c, double v) {
        return std::atan2(lambda * kPi, 1.0 + c + v - lambda * std::log(v));
    };
    quad::QuadSpec inner_spec = spec;
    inner_spec.abs_tol = std::max(spec.abs_tol * 1e-2, 1e-12);
    inner_spec.rel_tol = inner_spec.abs_tol;
    auto inner = [&](double v) {
        auto f = [&](double u) {
            const double d = 1.0 + u + v;
            return theta(b, u) / (d * d);
        };
        return quad::integrate_half_line(f, 0.0, inner_spec).value;
    };
    auto outer_f = [&](double v) { return theta(a, v) * inner(v); };
    const double dbl = quad::integrate_half_line(outer_f, 0.0, spec).value / (kPi * kPi);
    const double denom = S_factor(a, lambda) + S_factor(b, lambda) - 1.0;
    return std::exp(-dbl) / denom;
}

} // namespace phi4::cf
