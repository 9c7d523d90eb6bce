// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code = number of failures.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "phi4/closed_form.hpp"
#include "phi4/domains.hpp"
#include "phi4/identities.hpp"
#include "phi4/lambert_w.hpp"
#include "phi4/oracle.hpp"
#include "phi4/polylog.hpp"
#include "phi4/quadrature.hpp"
#include "phi4/series.hpp"

namespace {

using namespace phi4;
using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846;
constexpr double kLog4 = 1.3862943611198906;

int g_failures = 0;

void report(int criterion, const char* what, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s  (%s)\n", pass ? "PASS" : "FAIL", criterion, what,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

int thread_count() {
    if (const char* env = std::getenv("THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

template <class F>
void parallel_for(int n, F&& body) {
    const int nt = std::min(thread_count(), n);
    if (nt <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += nt) body(i);
        });
    for (auto& th : pool) th.join();
}

// ---- criterion 1: the closed form solves the equation ---------------------
void criterion_1() {
    const std::vector<double> lams = {0.25, 0.5, 1.0, 2.0};
    const std::vector<double> abs = {0.0, 0.5, 1.0, 2.0, 4.0};
    struct Point { double a, b, l; };
    std::vector<Point> pts;
    for (double l : lams)
        for (double a : abs)
            for (double b : abs) pts.push_back({a, b, l});
    std::vector<double> rel(pts.size(), 0.0);
    quad::QuadSpec spec;
    spec.abs_tol = spec.rel_tol = 1e-9;
    parallel_for(static_cast<int>(pts.size()), [&](int i) {
        const auto [a, b, l] = pts[i];
        auto g = [l = l](double x, double y) { return cf::G_real(x, y, l); };
        rel[i] = oracle::residual(g, a, b, l, spec).rel_residual;
    });
    double worst = 0.0;
    int worst_i = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (rel[i] > worst) {
            worst = rel[i];
            worst_i = static_cast<int>(i);
        }
    char d[160];
    std::snprintf(d, sizeof d,
                  "%zu points, worst rel residual %.3e at (a,b,lambda)=(%g,%g,%g), tol 1e-4",
                  pts.size(), worst, pts[worst_i].a, pts[worst_i].b, pts[worst_i].l);
    report(1, "closed-form G solves the integral equation", worst <= 1e-4, d);
}

// ---- criterion 2: negative-coupling continuation ---------------------------
void criterion_2() {
    const std::vector<double> abs = {0.0, 0.5, 1.0, 2.0, 4.0};
    struct Point { double a, b, l; };
    std::vector<Point> pts;
    for (double l : {-0.5, -0.7})
        for (double a : abs)
            for (double b : abs) pts.push_back({a, b, l});
    std::vector<double> rel(pts.size(), 0.0);
    quad::QuadSpec spec;
    spec.abs_tol = spec.rel_tol = 1e-9;
    parallel_for(static_cast<int>(pts.size()), [&](int i) {
        const auto [a, b, l] = pts[i];
        auto g = [l = l](double x, double y) { return cf::G_real(x, y, l); };
        rel[i] = oracle::residual(g, a, b, l, spec).rel_residual;
    });
    double worst = 0.0;
    for (double r : rel) worst = std::max(worst, r);
    bool graceful = false;
    std::string msg;
    try {
        cf::G_real(1.0, 1.0, -0.73);
    } catch (const DomainError& e) {
        graceful = true;
        msg = e.what();
    }
    char d[200];
    std::snprintf(d, sizeof d,
                  "worst rel residual %.3e (tol 1e-4); lambda=-0.73 rejected: %s",
                  worst, graceful ? "yes" : "NO");
    report(2, "analytic continuation to lambda in (-1/log4, 0)", worst <= 1e-4 && graceful, d);
}

// ---- criterion 3: identity suite -------------------------------------------
void criterion_3() {
    using identities::IdentityId;
    quad::QuadSpec spec;
    spec.abs_tol = spec.rel_tol = 1e-9;
    double worst_pos = 0.0, worst_neg = 0.0;
    const double as[] = {0.5, 1.0, 2.0};
    const double ls[] = {0.3, 0.8, 1.5};
    struct Item { IdentityId id; std::map<std::string, double> p; bool neg; };
    std::vector<Item> items;
    for (double a : as)
        for (double l : ls) {
            for (auto id : {IdentityId::L_LambertInt, IdentityId::K_Lambert_int, IdentityId::J2})
                items.push_back({id, {{"a", a}, {"lambda", l}}, false});
            for (auto id : {IdentityId::L_Lambert_int, IdentityId::J1})
                items.push_back({id, {{"a", a}, {"lambda", l}, {"z_re", 0.7}}, false});
            for (auto id : {IdentityId::HTArctanLog, IdentityId::logW0_path})
                items.push_back({id, {{"a", a}, {"lambda", l}, {"b", 1.3}}, false});
        }
    for (double a : {0.5, 1.0, 2.0})
        for (double l : {-0.3, -0.5}) {
            items.push_back({IdentityId::Jneg_2, {{"a", a}, {"lambda", l}}, true});
            items.push_back({IdentityId::Jneg_1, {{"a", a}, {"lambda", l}, {"z_re", 1.0}}, true});
        }
    std::vector<double> res(items.size(), 0.0);
    parallel_for(static_cast<int>(items.size()), [&](int i) {
        res[i] = identities::check(items[i].id, items[i].p, spec).residual;
    });
    for (std::size_t i = 0; i < items.size(); ++i)
        (items[i].neg ? worst_neg : worst_pos) = std::max(items[i].neg ? worst_neg : worst_pos,
                                                          res[i]);
    // the paper's warning: the naive single-branch continuation is wrong
    const auto c = identities::check(IdentityId::Jneg_2, {{"a", 1.0}, {"lambda", -0.5}}, spec);
    const double naive_gap = std::abs(c.lhs.real() - cf::K(1.0, -0.5));
    char d[200];
    std::snprintf(d, sizeof d,
                  "positive-lambda worst %.3e, negative pair worst %.3e (tol 1e-6); "
                  "naive W_{-1}-only continuation off by %.3f (> 1e-2)",
                  worst_pos, worst_neg, naive_gap);
    report(3, "Lambert-W integral identities", worst_pos <= 1e-6 && worst_neg <= 1e-6 &&
           naive_gap > 1e-2, d);
}

// ---- criterion 4: perturbative agreement -----------------------------------
void criterion_4() {
    double worst_rel = 0.0;
    for (double a : {0.3, 1.0, 3.0}) {
        auto c1 = series::I_coeffs_conjecture(a, 8);
        auto c2 = series::I_coeffs_derivative_form(a, 8);
        for (int m = 1; m <= 8; ++m)
            worst_rel = std::max(worst_rel, std::abs(c1.coeffs[m] - c2.coeffs[m]) /
                                                std::abs(c2.coeffs[m]));
    }
    // order-2 G coefficients including the zeta(2) - Li2 block
    double worst_c = 0.0;
    for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.5}}) {
        auto g2 = series::G_series2(a, b);
        auto cs = series::g_lambda_coeffs(a, b, 3, 0.3, 16);
        worst_c = std::max({worst_c, std::abs(g2.c0 - cs[0]), std::abs(g2.c1 - cs[1]),
                            std::abs(g2.c2 - cs[2])});
    }
    char d[160];
    std::snprintf(d, sizeof d,
                  "Stirling vs Lagrange-Buermann rel %.3e (tol 1e-7); order-2 G coeffs %.3e "
                  "(tol 1e-8)",
                  worst_rel, worst_c);
    report(4, "perturbative series agree across routes", worst_rel <= 1e-7 && worst_c <= 1e-8, d);
}

// ---- criterion 5: [lambda^2] N ----------------------------------------------
void criterion_5() {
    double worst = 0.0;
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{1.0, 2.0}, std::pair{0.5, 3.0}}) {
        auto cs = series::n_lambda_coeffs(a, b, 3, 0.3, 16);
        worst = std::max(worst, std::abs(cs[2] - series::N2_coeff(a, b)));
    }
    char d[96];
    std::snprintf(d, sizeof d, "worst |extracted - closed form| = %.3e (tol 1e-5)", worst);
    report(5, "lambda^2 coefficient of N", worst <= 1e-5, d);
}

// ---- criterion 6: domain geometry numbers ----------------------------------
void criterion_6() {
    auto env = domains::envelope(2048);
    const bool geo_ok = std::abs(env.t_E - 0.582) <= 1e-3 && std::abs(env.psi - 0.861) <= 1e-3;
    char d1[120];
    std::snprintf(d1, sizeof d1, "t_E = %.6f (0.582 +- 1e-3), psi = %.6f (0.861 +- 1e-3)",
                  env.t_E, env.psi);
    report(6, "envelope tangency numbers", geo_ok, d1);

    // radius of convergence of G's lambda-series at a = b = 0: the ratio
    // |c_{n+1}/c_n| at n = 12 from Cauchy-circle coefficients of the closed
    // form, asked to approach log 4 within 5%
    auto cs = series::g_lambda_coeffs(0.0, 0.0, 14, 0.5, 64);
    const double ratio = std::abs(cs[13] / cs[12]);
    const bool radius_ok = std::abs(ratio - kLog4) <= 0.05 * kLog4;
    char d2[300];
    std::snprintf(d2, sizeof d2,
                  "|c_13/c_12| = %.4f vs log4 = %.4f +- 5%%; at a=b=0 the Lambert factors "
                  "degenerate and the -1/log4 branch point of G = e^N is exp(-c log^2)-flat, "
                  "so its imprint is below every computable order (see decisions ledger)",
                  ratio, kLog4);
    report(6, "empirical series radius at a=b=0", radius_ok, d2);
}

// ---- criterion 7: finite-cutoff oracle converges to the closed form --------
void criterion_7() {
    auto rows = oracle::compare_oracle_to_closedform(0.5, {25.0, 100.0, 400.0}, 96);
    const bool monotone = rows[0].second > rows[1].second && rows[1].second > rows[2].second;
    const bool small = rows[2].second <= 5e-2;
    char d[160];
    std::snprintf(d, sizeof d, "interior deviations %.3e > %.3e > %.3e, final tol 5e-2",
                  rows[0].second, rows[1].second, rows[2].second);
    report(7, "cutoff convergence of the fixed-point oracle", monotone && small, d);
}

// ---- criterion 8: special-function substrate --------------------------------
void criterion_8() {
    // Lambert residual on 1e4 random points across branches -2..2
    std::mt19937 rng(20240820);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst_w = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const int k = (i % 5) - 2;
        const cplx z = std::polar(std::pow(10.0, 3.0 * U(rng)), kPi * U(rng) * 0.999);
        const cplx w = special::lambert_w(k, z);
        worst_w = std::max(worst_w, std::abs(w * std::exp(w) - z) / (1.0 + std::abs(z)));
    }

    // Nielsen generating identity vs a direct 2F1 evaluation
    auto hyp2f1 = [](double x, double y, double z) {
        auto ser = [](double aa, double bb, double cc, double zz) {
            double term = 1.0, sum = 1.0;
            for (int m = 0; m < 500; ++m) {
                term *= (aa + m) * (bb + m) / ((cc + m) * (m + 1.0)) * zz;
                sum += term;
                if (std::abs(term) < 1e-17 * std::abs(sum)) break;
            }
            return sum;
        };
        if (z > -0.9) return ser(-x, y, 1.0 - x, z);
        return std::pow(1.0 - z, x) * ser(-x, 1.0 - x - y, 1.0 - x, z / (z - 1.0));
    };
    double worst_n = 0.0;
    for (double z : {-1.0, -0.5, 0.5}) {
        double S[5][5];
        for (int n = 1; n <= 4; ++n)
            for (int p = 1; p <= 4; ++p) S[n][p] = special::nielsen(n, p, z);
        for (double x : {0.08, -0.06})
            for (double y : {0.08, -0.05}) {
                double sum = 1.0, xn = 1.0;
                for (int n = 1; n <= 4; ++n) {
                    xn *= x;
                    double yp = 1.0;
                    for (int p = 1; p <= 4; ++p) {
                        yp *= y;
                        sum -= S[n][p] * xn * yp;
                    }
                }
                worst_n = std::max(worst_n, std::abs(sum - hyp2f1(x, y, z)));
            }
    }

    // finite-interval Carleman identities on sampled angle functions
    quad::QuadSpec spec;
    spec.abs_tol = spec.rel_tol = 1e-9;
    double worst_t = 0.0;
    const double L2 = 4.0;
    auto tau1 = [L2](double p) { return 0.3 * p * (L2 - p) / (L2 * L2); };
    auto tau2 = [](double p) { return 0.4 * p * std::exp(-p); };
    for (auto& tau : {std::function<double(double)>(tau1), std::function<double(double)>(tau2)}) {
        worst_t = std::max(worst_t, std::abs(quad::tricomi_check(tau, L2, 0.7 * L2, spec)));
        auto H = [&](double p) { return quad::hilbert_finite(tau, p, L2, spec); };
        const double rhs = quad::integrate(tau, 0.0, L2, spec).value;
        for (double sgn : {1.0, -1.0}) {
            auto F = [&](double p) { return std::exp(sgn * H(p)) * std::sin(tau(p)); };
            worst_t = std::max(worst_t,
                               std::abs(quad::integrate(F, 0.0, L2, spec).value - rhs));
        }
    }
    char d[200];
    std::snprintf(d, sizeof d,
                  "W residual %.2e (tol 1e-12), Nielsen/2F1 %.2e (tol 1e-6), "
                  "Carleman identities %.2e (tol 1e-6)",
                  worst_w, worst_n, worst_t);
    report(8, "special-function substrate", worst_w <= 1e-12 && worst_n <= 1e-6 && worst_t <= 1e-6,
           d);
}

} // namespace

int main() {
    std::printf("acceptance suite: exact 2-point function vs its defining equation\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    std::printf("%d criterion check(s) failed\n", g_failures);
    return g_failures;
}
