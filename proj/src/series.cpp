#include "phi4/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>

#include "phi4/closed_form.hpp"
#include "phi4/polylog.hpp"

namespace phi4::series {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950;

} // namespace

StirlingTable::StirlingTable(int max_n) : max_n_(max_n) {
    if (max_n < 1) throw DomainError("StirlingTable: max_n must be >= 1");
    if (max_n > 33) throw DomainError("StirlingTable: 128-bit overflow beyond max_n = 33");
    v_.assign(static_cast<std::size_t>(max_n) * (max_n + 1) / 2, 0);
    auto at = [this](int n, int k) -> __int128& {
        return v_[static_cast<std::size_t>(n - 1) * n / 2 + (k - 1)];
    };
    at(1, 1) = 1;
    for (int n = 1; n < max_n; ++n)
        for (int k = 1; k <= n + 1; ++k) {
            __int128 val = 0;
            if (k > 1) val += at(n, k - 1);
            if (k <= n) val -= static_cast<__int128>(n) * at(n, k);
            at(n + 1, k) = val;
        }
}

__int128 StirlingTable::s(int n, int k) const {
    if (n < 1 || n > max_n_) throw DomainError("StirlingTable::s: n out of range");
    if (k < 1 || k > n) return 0;
    return v_[static_cast<std::size_t>(n - 1) * n / 2 + (k - 1)];
}

double StirlingTable::s_double(int n, int k) const {
    return static_cast<double>(s(n, k));
}

SeriesCoeffs I_coeffs_conjecture(double a, int order) {
    if (order < 1) throw DomainError("I_coeffs_conjecture: order >= 1");
    if (!(a > 0.0)) throw DomainError("I_coeffs_conjecture: a > 0 (a -> 0 by continuity)");
    StirlingTable st(std::max(1, order));
    SeriesCoeffs out;
    out.order = order;
    out.eval_a = a;
    out.coeffs.assign(order + 1, 0.0);
    const double La = std::log1p(a);
    out.coeffs[1] = -La;
    for (int m = 2; m <= order; ++m) {
        const int n = m - 1;
        double c = std::pow(La / a, n) / n + std::pow(La / (1.0 + a), n) / n;
        double fact_nm1 = 1.0;  // (n-1)!
        for (int i = 2; i < n; ++i) fact_nm1 *= i;
        double inner = 0.0;
        double jfact = 1.0;  // j!
        double sgn = -1.0;   // (-1)^j
        for (int j = 1; j <= n - 1; ++j) {
            jfact *= j;
            const double ratio_pow = std::pow((1.0 + a) / a, n - j) + 1.0;
            double kfact = 1.0;
            double Lk = 1.0;  // log^k
            double sum_k = 0.0;
            for (int k = 0; k <= n; ++k) {
                if (k > 0) {
                    kfact *= k;
                    Lk *= La;
                }
                const int idx = n - k;
                if (idx >= 1 && idx <= j) sum_k += st.s_double(j, idx) / kfact * Lk;
            }
            inner += sgn / jfact * ratio_pow * sum_k;
            sgn = -sgn;
        }
        c += fact_nm1 / std::pow(1.0 + a, n) * inner;
        out.coeffs[m] = c;
    }
    return out;
}

namespace {

// Exact differentiation on sums  c * log^p(1+a) * a^{-q} * (1+a)^{-r}.
using Monomial = std::array<int, 3>;  // (p, q, r)
using Expr = std::map<Monomial, double>;

void add_term(Expr& e, Monomial m, double c) {
    if (c == 0.0) return;
    auto [it, fresh] = e.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0.0) e.erase(it);
    }
}

Expr ddx(const Expr& e) {
    Expr out;
    for (const auto& [m, c] : e) {
        const auto [p, q, r] = m;
        if (p > 0) add_term(out, {p - 1, q, r + 1}, c * p);
        if (q != 0) add_term(out, {p, q + 1, r}, -c * q);
        if (r != 0) add_term(out, {p, q, r + 1}, -c * r);
    }
    return out;
}

double eval(const Expr& e, double a) {
    const double La = std::log1p(a);
    double s = 0.0;
    for (const auto& [m, c] : e) {
        const auto [p, q, r] = m;
        s += c * std::pow(La, p) * std::pow(a, -q) * std::pow(1.0 + a, -r);
    }
    return s;
}

// d^{n-1}/da^{n-1} of (-log(1+a))^n [/ a], divided by n!
double lb_term(int n, bool over_a, double a) {
    Expr e;
    add_term(e, {n, over_a ? 1 : 0, 0}, (n % 2 == 0) ? 1.0 : -1.0);
    for (int i = 0; i < n - 1; ++i) e = ddx(e);
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return eval(e, a) / fact;
}

} // namespace

SeriesCoeffs K_coeffs_derivative_form(double a, int order) {
    if (order < 1) throw DomainError("K_coeffs_derivative_form: order >= 1");
    SeriesCoeffs out;
    out.order = order;
    out.eval_a = a;
    out.coeffs.assign(order + 1, 0.0);
    for (int n = 1; n <= order; ++n) out.coeffs[n] = lb_term(n, false, a);
    return out;
}

SeriesCoeffs I_coeffs_derivative_form(double a, int order) {
    if (order < 1) throw DomainError("I_coeffs_derivative_form: order >= 1");
    if (!(a > 0.0)) throw DomainError("I_coeffs_derivative_form: a > 0");
    SeriesCoeffs out;
    out.order = order;
    out.eval_a = a;
    out.coeffs.assign(order + 1, 0.0);
    for (int m = 1; m <= order; ++m) {
        double c = lb_term(m, false, a);
        if (m >= 2) c -= lb_term(m - 1, true, a);
        out.coeffs[m] = c;
    }
    return out;
}

std::pair<double, double> KL_stirling_series(double a, double lambda, int order_n,
                                             int order_m, bool* warned) {
    if (warned) *warned = std::abs(a) >= 1.0;
    // double-precision recursion; the series only needs ~1e-16 relative
    // accuracy per entry, which the recursion preserves
    const int nmax = order_n + order_m;
    std::vector<std::vector<double>> s(nmax + 1);
    s[1] = {0.0, 1.0};
    for (int n = 1; n < nmax; ++n) {
        s[n + 1].assign(n + 2, 0.0);
        for (int k = 1; k <= n + 1; ++k)
            s[n + 1][k] = (k > 1 ? s[n][k - 1] : 0.0) -
                          static_cast<double>(n) * (k <= n ? s[n][k] : 0.0);
    }
    double K = 0.0, L = 0.0;
    double mlam_n = 1.0;  // (-lambda)^n
    for (int n = 1; n <= order_n; ++n) {
        mlam_n *= -lambda;
        double am = 1.0, mfact = 1.0;  // a^m, m!
        // L has an m = 0 term
        L += s[n][n] / n * mlam_n;
        for (int m = 1; m <= order_m; ++m) {
            am *= a;
            mfact *= m;
            K += s[m + n - 1][n] * mlam_n * am / mfact;
            L += s[m + n][n] / (m + n) * mlam_n * am / mfact;
        }
    }
    return {K, L};
}

GSeries2 G_series2(double a, double b) {
    if (a < 0.0 || b < 0.0) throw DomainError("G_series2: a, b >= 0");
    const double s = 1.0 + a + b;
    // (1+2x) log(1+x)/(x(1+x)) -> 1 as x -> 0
    auto edge = [](double x) {
        if (x < 1e-8) return 1.0 + 0.5 * x;
        return (1.0 + 2.0 * x) * std::log1p(x) / (x * (1.0 + x));
    };
    const double la = std::log1p(a), lb = std::log1p(b);
    GSeries2 g;
    g.c0 = 1.0 / s;
    g.c1 = (la + lb) / (s * s);
    g.c2 = -(edge(a) + edge(b)) / (s * s) +
           (la * la + la * lb + lb * lb + special::kZeta2 - special::dilog_real(-a) -
            special::dilog_real(-b)) /
               (s * s * s);
    return g;
}

double N2_coeff(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("N2_coeff: a, b > 0");
    if (a < b) std::swap(a, b);  // exact symmetry
    const double s = 1.0 + a + b;
    return (special::kZeta2 - special::dilog_real(-a) - special::dilog_real(-b)) / (s * s) -
           std::log1p(a) / (a * s) - std::log1p(b) / (b * s);
}

namespace {

std::vector<double> circle_coeffs(const std::function<std::complex<double>(std::complex<double>)>& f,
                                  int nmax, double rho, int M) {
    using cplx = std::complex<double>;
    std::vector<cplx> vals(M);
    for (int m = 0; m <= M / 2; ++m)
        vals[m] = f(rho * std::exp(cplx(0.0, 2.0 * kPi * m / M)));
    for (int m = M / 2 + 1; m < M; ++m) vals[m] = std::conj(vals[M - m]);  // f(conj) = conj f
    std::vector<double> cs(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        cplx c = 0.0;
        for (int m = 0; m < M; ++m)
            c += vals[m] * std::exp(cplx(0.0, -2.0 * kPi * n * m / M));
        cs[n] = (c / static_cast<double>(M) / std::pow(rho, n)).real();
    }
    return cs;
}

} // namespace

std::vector<double> g_lambda_coeffs(double a, double b, int nmax, double rho, int m_samples) {
    auto f = [&](std::complex<double> lam) { return cf::G({a, b, lam}).g; };
    return circle_coeffs(f, nmax, rho, m_samples);
}

std::vector<double> n_lambda_coeffs(double a, double b, int nmax, double rho, int m_samples) {
    auto f = [&](std::complex<double> lam) { return cf::N_complex(a, b, lam); };
    return circle_coeffs(f, nmax, rho, m_samples);
}

} // namespace phi4::series
