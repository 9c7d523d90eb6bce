#include "phi4/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>

namespace phi4::quad {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
double vabs(const V& v) {
    return std::abs(v);
}

template <class V>
struct Segment {
    double lo, hi;
    V value;
    double err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

// One Gauss-Kronrod 15 application on [lo, hi]; QUADPACK-style error estimate.
template <class V, class F>
Segment<V> gk15(const F& f, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    V fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    V res_k = kWgk[7] * fv[7];
    V res_g = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        res_k += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) res_g += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    res_k *= h;
    res_g *= h;
    const V mean = res_k / (hi - lo);
    double resasc = kWgk[7] * vabs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (vabs(fv[i] - mean) + vabs(fv[14 - i] - mean));
    resasc *= std::abs(h);
    double err = vabs(res_k - res_g);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {lo, hi, res_k, err};
}

template <class V, class F>
QuadResult<V> adaptive(const F& f, const std::vector<double>& breaks, const QuadSpec& spec) {
    std::priority_queue<Segment<V>> heap;
    V total{};
    double toterr = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i] == breaks[i + 1]) continue;
        auto s = gk15<V>(f, breaks[i], breaks[i + 1]);
        total += s.value;
        toterr += s.err;
        heap.push(s);
    }
    int used = static_cast<int>(breaks.size()) - 1;
    while (toterr > std::max(spec.abs_tol, spec.rel_tol * vabs(total))) {
        if (used >= spec.max_subdivisions || heap.empty()) {
            char msg[128];
            std::snprintf(msg, sizeof msg, "quadrature: error %.3e above tolerance after %d subdivisions",
                          toterr, used);
            throw ConvergenceError(msg);
        }
        Segment<V> s = heap.top();
        heap.pop();
        const double mid = 0.5 * (s.lo + s.hi);
        if (mid <= s.lo || mid >= s.hi) {
            // interval at floating-point resolution; accept its estimate
            continue;
        }
        auto a = gk15<V>(f, s.lo, mid);
        auto b = gk15<V>(f, mid, s.hi);
        total += a.value + b.value - s.value;
        toterr += a.err + b.err - s.err;
        heap.push(a);
        heap.push(b);
        ++used;
    }
    return {total, toterr, used};
}

std::vector<double> default_breaks(double lo, double hi) {
    // a single panel plus a midpoint split gives the estimator something to
    // compare against on awkward integrands
    return {lo, 0.5 * (lo + hi), hi};
}

} // namespace

RealResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     const QuadSpec& spec, Endpoint singular) {
    if (singular == Endpoint::lo) {
        // x = lo + u^2 softens an algebraic/log singularity at lo
        const double span = hi - lo;
        auto g = [&](double u) { return 2.0 * u * f(lo + u * u); };
        return integrate(g, 0.0, std::sqrt(span), spec, Endpoint::none);
    }
    if (singular == Endpoint::hi) {
        const double span = hi - lo;
        auto g = [&](double u) { return 2.0 * u * f(hi - u * u); };
        return integrate(g, 0.0, std::sqrt(span), spec, Endpoint::none);
    }
    return adaptive<double>(f, default_breaks(lo, hi), spec);
}

ComplexResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                double lo, double hi, const QuadSpec& spec) {
    return adaptive<std::complex<double>>(f, default_breaks(lo, hi), spec);
}

namespace {

template <class V, class F>
QuadResult<V> half_line_impl(const F& f, double lo, const QuadSpec& spec,
                             const std::vector<double>& extra_breaks = {},
                             double* tail_err = nullptr) {
    const double T = std::max(spec.tail_cutoff, lo + 1.0);
    std::vector<double> br{lo};
    for (double b : {lo + 1.0, lo + 10.0, lo + 100.0, lo + 1000.0})
        if (b < T) br.push_back(b);
    for (double b : extra_breaks)
        if (b > lo && b < T) br.push_back(b);
    br.push_back(T);
    std::sort(br.begin(), br.end());
    auto head = adaptive<V>(f, br, spec);
    // p = T/u folds [T, inf) onto (0, 1]
    auto tail_f = [&](double u) { return f(T / u) * (T / (u * u)); };
    auto tail = adaptive<V>(tail_f, std::vector<double>{0.0, 0.5, 1.0}, spec);
    if (tail_err) *tail_err = tail.err_estimate;
    return {head.value + tail.value, head.err_estimate + tail.err_estimate,
            head.subdivisions_used + tail.subdivisions_used};
}

} // namespace

RealResult integrate_half_line(const std::function<double(double)>& f, double lo,
                               const QuadSpec& spec, const std::vector<double>& extra_breaks,
                               double* tail_err) {
    return half_line_impl<double>(f, lo, spec, extra_breaks, tail_err);
}

ComplexResult integrate_half_line_complex(const std::function<std::complex<double>(double)>& f,
                                          double lo, const QuadSpec& spec) {
    return half_line_impl<std::complex<double>>(f, lo, spec);
}

RealResult integrate_half_line_ct(const std::function<double(double)>& f, double c,
                                  const QuadSpec& spec) {
    auto g = [&](double p) { return f(p) - c / (1.0 + p); };
    return half_line_impl<double>(g, 0.0, spec);
}

RealResult principal_value(const std::function<double(double)>& f, double lo, double hi,
                           double pole, const QuadSpec& spec) {
    if (!(lo < pole && pole < hi))
        throw DomainError("principal_value: pole must lie strictly inside [lo, hi]");
    const double fp = f(pole);
    auto g = [&](double x) { return (f(x) - fp) / (x - pole); };
    const double w = std::min(pole - lo, hi - pole);
    std::vector<double> br{lo};
    if (pole - w > lo) br.push_back(pole - w);
    br.push_back(pole);
    if (pole + w < hi) br.push_back(pole + w);
    br.push_back(hi);
    auto r = adaptive<double>(g, br, spec);
    r.value += fp * std::log((hi - pole) / (pole - lo));
    return r;
}

double hilbert_halfline(const std::function<double(double)>& f, double a,
                        const QuadSpec& spec) {
    constexpr double kPi = 3.14159265358979323846;
    if (a < 0.0) throw DomainError("hilbert_halfline: a must be >= 0");
    const double T = std::max(spec.tail_cutoff, 4.0 * (a + 1.0));
    double head;
    if (a == 0.0) {
        auto g = [&](double p) { return f(p) / p; };
        head = adaptive<double>(g, std::vector<double>{0.0, 1.0, T}, spec).value;
    } else {
        head = principal_value(f, 0.0, T, a, spec).value;
    }
    auto tail_f = [&](double u) {
        const double p = T / u;
        return f(p) / (p - a) * (T / (u * u));
    };
    auto tail = adaptive<double>(tail_f, std::vector<double>{0.0, 0.5, 1.0}, spec);
    if (!std::isfinite(tail.value) || tail.err_estimate > 1e3 * std::max(1.0, std::abs(tail.value)))
        throw ConvergenceError("hilbert_halfline: tail does not converge (integrand decays too slowly)");
    return (head + tail.value) / kPi;
}

double hilbert_finite(const std::function<double(double)>& f, double a, double L2,
                      const QuadSpec& spec) {
    constexpr double kPi = 3.14159265358979323846;
    return principal_value(f, 0.0, L2, a, spec).value / kPi;
}

double tricomi_check(const std::function<double(double)>& tau, double L2, double b,
                     const QuadSpec& spec) {
    if (!(0.0 < b && b < L2)) throw DomainError("tricomi_check: need 0 < b < L2");
    auto H = [&](double p) { return hilbert_finite(tau, p, L2, spec); };
    auto F = [&](double p) { return std::exp(H(p)) * std::sin(tau(p)); };
    const double lhs = hilbert_finite(F, b, L2, spec);
    const double rhs = std::exp(H(b)) * std::cos(tau(b)) - 1.0;
    return lhs - rhs;
}

} // namespace phi4::quad
