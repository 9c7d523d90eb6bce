#include "phi4/domains.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "phi4/errors.hpp"

namespace phi4::domains {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846264338327950;
constexpr double kLog4 = 1.386294361119890618834464242916353;
constexpr double kBand = 1e-9;  // indeterminate band around boundaries
constexpr cplx kI{0.0, 1.0};

cplx P_ray(double t) { return cplx(0.5, t) / std::log(cplx(0.5, -t)); }
cplx m_ray(double t) { return 1.0 / std::log(cplx(0.5, -t)); }

cplx P_prime(double t) {
    const cplx L = std::log(cplx(0.5, -t));
    return (kI * L + kI * cplx(0.5, t) / cplx(0.5, -t)) / (L * L);
}

cplx m_prime(double t) {
    const cplx L = std::log(cplx(0.5, -t));
    return kI / (cplx(0.5, -t) * (L * L));
}

double envelope_g(double t) { return std::imag(std::conj(m_ray(t)) * P_prime(t)); }

// a-parameter of the tangency point on the ray family at t (real by
// construction); nonnegative for |t| >= t_E
double envelope_a(double t) {
    const double num = std::imag(std::conj(m_ray(t)) * P_prime(t));
    const double den = std::imag(std::conj(m_ray(t)) * m_prime(t));
    return -num / den;
}

cplx envelope_point(double t, double t_E) {
    if (std::abs(t) <= t_E) return P_ray(t);
    return P_ray(t) + m_ray(t) * envelope_a(t);
}

double bisect(double lo, double hi, const std::function<double(double)>& f) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0 || hi - lo < 1e-15 * (1.0 + std::abs(mid))) return mid;
        if ((flo < 0) == (fm < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

const EnvelopeResult& cached_envelope() {
    static EnvelopeResult env = [] {
        EnvelopeResult e = envelope(4096);
        return e;
    }();
    return env;
}

// crossings of the horizontal ray {x > re, y = im} with the sampled polyline
int ray_crossings(const std::vector<CurveSample>& poly, double re, double im) {
    int n = 0;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
        const double y1 = poly[i].point.imag(), y2 = poly[i + 1].point.imag();
        if ((y1 > im) == (y2 > im)) continue;
        const double f = (im - y1) / (y2 - y1);
        const double x = poly[i].point.real() + f * (poly[i + 1].point.real() - poly[i].point.real());
        if (x > re) ++n;
    }
    return n;
}

double polyline_distance(const std::vector<CurveSample>& poly, cplx z) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& s : poly) d = std::min(d, std::abs(z - s.point));
    return d;
}

} // namespace

const char* curve_name(Curve c) {
    switch (c) {
        case Curve::c_critical: return "C (critical curve)";
        case Curve::c_a: return "C_a (cochleoid)";
        case Curve::envelope: return "E (envelope)";
        case Curve::b_plus: return "B+_lambda";
        case Curve::b_minus: return "B-_lambda";
        case Curve::b_zero: return "B0_lambda";
        case Curve::n_lambda_curve: return "N_lambda";
    }
    return "?";
}

std::vector<CurveSample> cochleoid(double a, double theta_lo, double theta_hi, int n) {
    if (n < 2) throw DomainError("cochleoid: need n >= 2");
    std::vector<CurveSample> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double th = theta_lo + (theta_hi - theta_lo) * i / (n - 1);
        const double sinc = (th == 0.0) ? 1.0 : std::sin(th) / th;
        out.push_back({th, -(1.0 + a) * sinc * std::exp(cplx(0.0, th))});
    }
    return out;
}

std::vector<CurveSample> critical_curve(double alpha_lo, double alpha_hi, int n) {
    if (n < 2) throw DomainError("critical_curve: need n >= 2");
    std::vector<CurveSample> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double al = alpha_lo + (alpha_hi - alpha_lo) * i / (n - 1);
        const double acot = (al == 0.0) ? 1.0 : al * std::cos(al) / std::sin(al);
        out.push_back({al, -std::exp(cplx(1.0 - acot, al))});
    }
    return out;
}

EnvelopeResult envelope(int n) {
    if (n < 2) throw DomainError("envelope: need n >= 2");
    EnvelopeResult e;
    e.t_E = bisect(0.1, 1.5, envelope_g);
    e.psi = std::atan(2.0 * e.t_E);
    // params: linear in [-4, 4], then log-spaced arms out to |t| = 1e4
    std::vector<double> ts;
    const int n_lin = (3 * n) / 4, n_arm = (n - n_lin) / 2;
    for (int i = 0; i < n_lin; ++i) ts.push_back(-4.0 + 8.0 * i / (n_lin - 1));
    for (int i = 1; i <= n_arm; ++i) {
        const double t = 4.0 * std::pow(2500.0, static_cast<double>(i) / n_arm);
        ts.push_back(t);
        ts.push_back(-t);
    }
    ts.push_back(e.t_E);
    ts.push_back(-e.t_E);
    ts.push_back(0.0);
    std::sort(ts.begin(), ts.end());
    e.samples.reserve(ts.size());
    for (double t : ts) e.samples.push_back({t, envelope_point(t, e.t_E)});
    return e;
}

RegionVerdict in_omega_K(std::complex<double> lambda) {
    RegionVerdict v;
    v.nearest_curve = Curve::c_critical;
    const double phi = std::arg(lambda);
    if (phi == 0.0) {  // the positive axis never meets C
        v.inside = true;
        v.distance_estimate = std::abs(lambda - cplx(-1.0, 0.0));  // to the apex at -1
        // refine against the curve
        auto cc = critical_curve(-3.0, 3.0, 512);
        v.distance_estimate = std::min(v.distance_estimate, polyline_distance(cc, lambda));
        return v;
    }
    const double alpha = phi - (phi > 0.0 ? kPi : -kPi);
    const double acot = (alpha == 0.0) ? 1.0 : alpha * std::cos(alpha) / std::sin(alpha);
    const double rc = std::exp(1.0 - acot);
    const double r = std::abs(lambda);
    v.inside = r < rc;
    v.distance_estimate = std::abs(r - rc);
    v.boundary_flag = v.distance_estimate < kBand * (1.0 + rc);
    return v;
}

RegionVerdict in_omega_N(std::complex<double> lambda) {
    RegionVerdict v;
    v.nearest_curve = Curve::envelope;
    const auto& env = cached_envelope();
    if (lambda.imag() == 0.0) {
        const double x0 = -1.0 / kLog4;
        v.inside = lambda.real() > x0;
        v.distance_estimate = std::abs(lambda.real() - x0);
        v.boundary_flag = v.distance_estimate < kBand;
        if (lambda.real() > 0.0) v.distance_estimate = polyline_distance(env.samples, lambda);
        return v;
    }
    // lambda lies left of the envelope exactly when some ray P(t) + a m(t)
    // with a >= 0 passes through it; the a solving that is
    //   a(t) = (lambda - P(t))/m(t) = lambda log(1/2 - it) - 1/2 - it,
    // so Im a(t) = 0 must be scanned and Re a checked at each root.
    auto a_of_t = [&](double t) {
        return lambda * std::log(cplx(0.5, -t)) - cplx(0.5, t);
    };
    const double T = 10.0 + 4.0 * std::abs(lambda) * (5.0 + std::log1p(std::abs(lambda)));
    const int n_scan = 4000;
    v.inside = true;
    double min_hit_gap = std::numeric_limits<double>::infinity();
    double prev_t = -T;
    double prev_g = a_of_t(prev_t).imag();
    for (int i = 1; i <= n_scan; ++i) {
        const double t = -T + 2.0 * T * i / n_scan;
        const double gg = a_of_t(t).imag();
        if ((prev_g < 0.0) != (gg < 0.0)) {
            double lo = prev_t, hi = t, flo = prev_g;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = a_of_t(mid).imag();
                if ((flo < 0.0) == (fm < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            const double are = a_of_t(0.5 * (lo + hi)).real();
            if (are >= 0.0) v.inside = false;
            min_hit_gap = std::min(min_hit_gap, std::abs(are));
        }
        prev_t = t;
        prev_g = gg;
    }
    v.distance_estimate = polyline_distance(env.samples, lambda);
    v.boundary_flag = (min_hit_gap < kBand) || v.distance_estimate < kBand;
    return v;
}

int branch_index_lambda(double a, std::complex<double> lambda) {
    if (a < 0.0) throw DomainError("branch_index_lambda: a must be >= 0");
    if (lambda.imag() == 0.0) {
        if (lambda.real() > 0.0) return 0;
        if (lambda.real() == 0.0)
            throw DomainError("branch_index_lambda: lambda = 0 touches every branch");
        // negative axis: W_{-1} inside |lambda| < 1+a, W_0 outside (the +i0
        // side index; values glue continuously across the axis)
        const double r = -lambda.real();
        if (std::abs(r - (1.0 + a)) < kBand * (2.0 + a))
            throw DomainError("branch_index_lambda: on the W_0/W_{-1} threshold |lambda| = 1+a");
        return r < 1.0 + a ? -1 : 0;
    }
    const cplx ell = (1.0 + a) / lambda - std::log(lambda);
    const double y = ell.imag();
    // thresholds sit at odd multiples of pi in Im ell
    const double nearest = (2.0 * std::round((y - kPi) / (2.0 * kPi)) + 1.0) * kPi;
    if (std::abs(y - nearest) < kBand)
        throw DomainError("branch_index_lambda: lambda on a lambda_k(phi) threshold");
    return static_cast<int>(std::ceil(y / (2.0 * kPi) - 0.5));
}

std::vector<CurveSample> n_lambda_curve(double lambda, double t_lo, double t_hi, int n) {
    if (n < 2) throw DomainError("n_lambda_curve: need n >= 2");
    std::vector<CurveSample> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double t = t_lo + (t_hi - t_lo) * i / (n - 1);
        out.push_back({t, cplx(-0.5, t) + lambda * std::log(cplx(0.5, t))});
    }
    return out;
}

RegionVerdict in_omega_lambda_ab(std::complex<double> z, double lambda) {
    if (!(lambda > -1.0 / kLog4))
        throw DomainError("in_omega_lambda_ab: real lambda must be > -1/log 4");
    RegionVerdict v;
    const double half_dist = z.real() + 0.5;
    if (half_dist <= 0.0) {
        v.inside = false;
        v.nearest_curve = Curve::n_lambda_curve;
        v.distance_estimate = -half_dist;
        v.boundary_flag = -half_dist < kBand;
        return v;
    }
    const double T = std::max(1e4, 4.0 * std::abs(z.imag()) + 10.0);
    auto poly = n_lambda_curve(lambda, -T, T, 8192);
    const int c = ray_crossings(poly, z.real(), z.imag());
    v.inside = (c % 2 == 0);
    const double dcurve = polyline_distance(poly, z);
    v.distance_estimate = std::min(dcurve, half_dist);
    v.nearest_curve = Curve::n_lambda_curve;
    v.boundary_flag = v.distance_estimate < kBand;
    return v;
}

} // namespace phi4::domains
