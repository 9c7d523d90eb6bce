#include "phi4/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "phi4/closed_form.hpp"
#include "phi4/errors.hpp"

namespace phi4::oracle {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    constexpr double kPi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

struct Discretisation {
    double L2, lambda, mu2;
    std::vector<double> p, w;    // nodes, weights on (0, L2)
    std::vector<double> M;       // PV matrix, row-major n x n
    std::vector<double> ell;     // log((L2 - p_i)/p_i)
    int n;

    // U = M * G (PV in the first argument, second fixed per column)
    std::vector<double> pv_apply(const std::vector<double>& G) const {
        std::vector<double> U(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const double m = M[static_cast<std::size_t>(i) * n + k];
                if (m == 0.0) continue;
                const double* gk = &G[static_cast<std::size_t>(k) * n];
                double* ui = &U[static_cast<std::size_t>(i) * n];
                for (int j = 0; j < n; ++j) ui[j] += m * gk[j];
            }
        return U;
    }

    // F(G): the equation solved for G(a,b) on the left
    std::vector<double> fixed_point_map(const std::vector<double>& G) const {
        const auto U = pv_apply(G);
        // W2 = M (M G^T)^T = M G M^T; with G symmetric M G M^T = M (M G)^T = U applied again
        std::vector<double> Ut(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                Ut[static_cast<std::size_t>(i) * n + j] = U[static_cast<std::size_t>(j) * n + i];
        const auto W2 = pv_apply(Ut);
        std::vector<double> F(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const std::size_t ij = static_cast<std::size_t>(i) * n + j;
                const double u = U[ij];
                const double v = U[static_cast<std::size_t>(j) * n + i];
                const double den = p[i] + p[j] + mu2 + lambda * (ell[i] + ell[j]) +
                                   lambda * lambda * W2[ij];
                F[ij] = (1.0 + lambda * u) * (1.0 + lambda * v) / den;
            }
        return F;
    }
};

Discretisation make_disc(double lambda, double L2, int n) {
    Discretisation d;
    d.L2 = L2;
    d.lambda = lambda;
    d.mu2 = 1.0 - 2.0 * lambda * std::log1p(L2);
    d.n = n;
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    d.p.resize(n);
    d.w.resize(n);
    const double c = 0.25;  // rational map clustering nodes near 0
    for (int i = 0; i < n; ++i) {
        const double xi = 0.5 * (x[i] + 1.0);
        d.p[i] = L2 * c * xi / (1.0 + c - xi);
        d.w[i] = 0.5 * w[i] * L2 * c * (1.0 + c) / ((1.0 + c - xi) * (1.0 + c - xi));
    }
    d.ell.resize(n);
    for (int i = 0; i < n; ++i) d.ell[i] = std::log((L2 - d.p[i]) / d.p[i]);
    // PV weights: fint f/(q - p_i) = sum_{j != i} w_j (f_j - f_i)/(p_j - p_i)
    //   + f_i log((L2-p_i)/p_i) + w_i f'(p_i), with f' from a 3-point stencil
    d.M.assign(static_cast<std::size_t>(n) * n, 0.0);
    auto at = [&](int i, int j) -> double& { return d.M[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            at(i, j) = d.w[j] / (d.p[j] - d.p[i]);
            s += at(i, j);
        }
        at(i, i) = d.ell[i] - s;
        // centred derivative correction at interior nodes; at the first and
        // last node the weight is negligible and a one-sided stencil only
        // destabilises the iteration
        if (i > 0 && i < n - 1) {
            const double hm = d.p[i] - d.p[i - 1], hp = d.p[i + 1] - d.p[i];
            at(i, i - 1) += d.w[i] * (-hp / (hm * (hm + hp)));
            at(i, i) += d.w[i] * ((hp - hm) / (hm * hp));
            at(i, i + 1) += d.w[i] * (hm / (hp * (hm + hp)));
        }
    }
    return d;
}

} // namespace

GridFunction solve_fixed_point(double lambda, double cutoff, int n_nodes, double damping,
                               double tol, int max_iter,
                               const std::function<double(double, double)>* init0) {
    constexpr double kLog4 = 1.386294361119890618834464242916353;
    if (!(lambda > -1.0 / kLog4))
        throw DomainError("solve_fixed_point: lambda must be > -1/log 4");
    if (n_nodes < 16) throw DomainError("solve_fixed_point: need n_nodes >= 16");
    if (!(damping > 0.0 && damping <= 1.0))
        throw DomainError("solve_fixed_point: damping in (0, 1]");
    auto d = make_disc(lambda, cutoff, n_nodes);
    const int n = d.n;
    auto init_grid = [&] {
        std::vector<double> G0(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                G0[static_cast<std::size_t>(i) * n + j] =
                    init0 ? (*init0)(d.p[i], d.p[j]) : 1.0 / (1.0 + d.p[i] + d.p[j]);
        return G0;
    };
    std::vector<double> G = init_grid();

    // Damped iteration with Anderson mixing over a short window. The plain
    // damped map has a repelling direction once lambda gets close to 1, so
    // the window (a quasi-Newton correction built from the last few residual
    // differences) carries the iteration where pure damping cannot converge
    // at any step size. Oscillating updates still halve the damping; a
    // diverging iterate restarts cautiously with a shorter step.
    const std::size_t nn = G.size();
    constexpr int kWindow = 5;
    std::vector<std::vector<double>> dx_hist, df_hist;
    std::vector<double> f_prev, x_prev;
    double delta = 0.0;
    int it = 0;
    int osc_count = 0;
    double prev_dot_sign = 0.0;
    for (; it < max_iter; ++it) {
        auto F = d.fixed_point_map(G);
        std::vector<double> f(nn);
        delta = 0.0;
        double gmax = 0.0;
        for (std::size_t k = 0; k < nn; ++k) {
            f[k] = F[k] - G[k];
            delta = std::max(delta, std::abs(f[k]));
            gmax = std::max(gmax, std::abs(G[k]));
        }
        if (gmax > 1e6 || !std::isfinite(gmax) || !std::isfinite(delta)) {
            if (damping <= 0.02)
                throw ConvergenceError("solve_fixed_point: diverges even at damping 0.02");
            damping *= 0.5;
            G = init_grid();
            dx_hist.clear();
            df_hist.clear();
            f_prev.clear();
            x_prev.clear();
            osc_count = 0;
            continue;
        }
        if (delta <= tol) {
            ++it;
            break;
        }
        if (!f_prev.empty()) {
            std::vector<double> dx(nn), df(nn);
            double dot = 0.0;
            for (std::size_t k = 0; k < nn; ++k) {
                dx[k] = G[k] - x_prev[k];
                df[k] = f[k] - f_prev[k];
                dot += f[k] * f_prev[k];
            }
            dx_hist.push_back(std::move(dx));
            df_hist.push_back(std::move(df));
            if (static_cast<int>(dx_hist.size()) > kWindow) {
                dx_hist.erase(dx_hist.begin());
                df_hist.erase(df_hist.begin());
            }
            if (dot < 0.0 && prev_dot_sign < 0.0) {
                if (++osc_count >= 3 && damping > 0.05) {
                    damping *= 0.5;
                    osc_count = 0;
                }
            } else {
                osc_count = 0;
            }
            prev_dot_sign = dot;
        }
        x_prev = G;
        f_prev = f;
        const int m = static_cast<int>(dx_hist.size());
        std::vector<double> gamma(m, 0.0);
        if (m > 0) {
            // least squares min || f - sum_j gamma_j df_j || via the Gram system
            std::vector<double> A(static_cast<std::size_t>(m) * m, 0.0), b(m, 0.0);
            for (int i = 0; i < m; ++i) {
                for (int j = 0; j <= i; ++j) {
                    double s = 0.0;
                    for (std::size_t k = 0; k < nn; ++k) s += df_hist[i][k] * df_hist[j][k];
                    A[i * m + j] = A[j * m + i] = s;
                }
                for (std::size_t k = 0; k < nn; ++k) b[i] += df_hist[i][k] * f[k];
                A[i * m + i] *= 1.0 + 1e-10;
                A[i * m + i] += 1e-30;
            }
            // Cholesky-free small Gaussian elimination with partial pivoting
            std::vector<int> piv(m);
            for (int i = 0; i < m; ++i) piv[i] = i;
            for (int c = 0; c < m; ++c) {
                int pr = c;
                for (int r = c + 1; r < m; ++r)
                    if (std::abs(A[r * m + c]) > std::abs(A[pr * m + c])) pr = r;
                if (pr != c) {
                    for (int j = 0; j < m; ++j) std::swap(A[c * m + j], A[pr * m + j]);
                    std::swap(b[c], b[pr]);
                }
                if (A[c * m + c] == 0.0) continue;
                for (int r = c + 1; r < m; ++r) {
                    const double fct = A[r * m + c] / A[c * m + c];
                    for (int j = c; j < m; ++j) A[r * m + j] -= fct * A[c * m + j];
                    b[r] -= fct * b[c];
                }
            }
            for (int r = m - 1; r >= 0; --r) {
                double s = b[r];
                for (int j = r + 1; j < m; ++j) s -= A[r * m + j] * gamma[j];
                gamma[r] = (A[r * m + r] != 0.0) ? s / A[r * m + r] : 0.0;
            }
        }
        for (std::size_t k = 0; k < nn; ++k) {
            double corr = 0.0;
            for (int j = 0; j < m; ++j)
                corr += gamma[j] * (dx_hist[j][k] + damping * df_hist[j][k]);
            G[k] += damping * f[k] - corr;
        }
        // keep the iterate exactly symmetric against rounding drift
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) {
                const double v = 0.5 * (G[static_cast<std::size_t>(i) * n + j] +
                                        G[static_cast<std::size_t>(j) * n + i]);
                G[static_cast<std::size_t>(i) * n + j] = v;
                G[static_cast<std::size_t>(j) * n + i] = v;
            }
    }
    if (delta > tol)
        throw ConvergenceError("solve_fixed_point: last max|dG| = " + std::to_string(delta) +
                               " after " + std::to_string(it) + " iterations");
    GridFunction out;
    out.cutoff = cutoff;
    out.lambda = lambda;
    out.tol = tol;
    out.iterations = it;
    out.final_delta = delta;
    out.nodes = d.p;
    out.weights = d.w;
    out.values = std::move(G);
    return out;
}

double discrete_residual(const GridFunction& g) {
    auto d = make_disc(g.lambda, g.cutoff, g.n());
    auto F = d.fixed_point_map(g.values);
    double r = 0.0;
    for (std::size_t k = 0; k < F.size(); ++k) r = std::max(r, std::abs(F[k] - g.values[k]));
    return r;
}

namespace {

// natural cubic spline through (x_i, y_i); evaluates inside [x_0, x_{n-1}]
struct Spline {
    std::vector<double> x, y, y2;
    void build(const std::vector<double>& xs, const std::vector<double>& ys) {
        x = xs;
        y = ys;
        const int n = static_cast<int>(x.size());
        y2.assign(n, 0.0);
        std::vector<double> u(n, 0.0);
        for (int i = 1; i < n - 1; ++i) {
            const double sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
            const double pp = sig * y2[i - 1] + 2.0;
            y2[i] = (sig - 1.0) / pp;
            u[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
            u[i] = (6.0 * u[i] / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / pp;
        }
        for (int i = n - 2; i >= 0; --i) y2[i] = y2[i] * y2[i + 1] + u[i];
    }
    double eval(double xq) const {
        int lo = 0, hi = static_cast<int>(x.size()) - 1;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            (x[mid] > xq ? hi : lo) = mid;
        }
        const double h = x[hi] - x[lo];
        const double A = (x[hi] - xq) / h, B = (xq - x[lo]) / h;
        return A * y[lo] + B * y[hi] +
               ((A * A * A - A) * y2[lo] + (B * B * B - B) * y2[hi]) * (h * h) / 6.0;
    }
};

// tensor product spline over the grid, clamped to the node range
struct Spline2D {
    std::vector<double> xs;
    std::vector<Spline> rows;  // spline along the second index for each row
    void build(const GridFunction& g) {
        xs = g.nodes;
        const int n = g.n();
        rows.resize(n);
        for (int i = 0; i < n; ++i) {
            std::vector<double> yi(g.values.begin() + static_cast<std::size_t>(i) * n,
                                   g.values.begin() + static_cast<std::size_t>(i + 1) * n);
            rows[i].build(xs, yi);
        }
    }
    double eval(double a, double b) const {
        const double bq = std::clamp(b, xs.front(), xs.back());
        const double aq = std::clamp(a, xs.front(), xs.back());
        std::vector<double> col(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) col[i] = rows[i].eval(bq);
        Spline s;
        s.build(xs, col);
        return s.eval(aq);
    }
};

} // namespace

double refined_rule_residual(const GridFunction& g, int refine_factor) {
    auto fine = make_disc(g.lambda, g.cutoff, refine_factor * g.n());
    // interpolate H = (1+a+b) G in the unit coordinate of the rational node
    // map, where the mesh is quasi-uniform and H is flat
    const double c = 0.25, L2 = g.cutoff;
    auto to_x = [&](double p) { return (1.0 + c) * p / (c * L2 + p); };
    const int nc = g.n();
    GridFunction h = g;
    h.nodes.resize(nc);
    for (int i = 0; i < nc; ++i) h.nodes[i] = to_x(g.nodes[i]);
    for (int i = 0; i < nc; ++i)
        for (int j = 0; j < nc; ++j)
            h.values[static_cast<std::size_t>(i) * nc + j] *=
                1.0 + g.nodes[i] + g.nodes[j];
    Spline2D sp;
    sp.build(h);
    const int n = fine.n;
    std::vector<double> Gf(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            Gf[static_cast<std::size_t>(i) * n + j] =
                sp.eval(to_x(fine.p[i]), to_x(fine.p[j])) /
                (1.0 + fine.p[i] + fine.p[j]);
    auto F = fine.fixed_point_map(Gf);
    double r = 0.0;
    // measured over the interior: outside the spline's node range it would
    // extrapolate, and against the p -> 0 edge the two rules resolve the
    // log((L2-p)/p) kernel differently at any order
    const double lo = g.nodes[std::min(2, nc - 1)];
    const double hi = 0.5 * g.cutoff;
    for (int i = 0; i < n; ++i) {
        if (fine.p[i] < lo || fine.p[i] > hi) continue;
        for (int j = 0; j < n; ++j) {
            if (fine.p[j] < lo || fine.p[j] > hi) continue;
            r = std::max(r, std::abs(F[static_cast<std::size_t>(i) * n + j] -
                                     Gf[static_cast<std::size_t>(i) * n + j]));
        }
    }
    return r;
}

ResidualReport residual(const std::function<double(double, double)>& g, double a, double b,
                        double lambda, const quad::QuadSpec& spec) {
    ResidualReport rep;
    rep.a = a;
    rep.b = b;
    const double gab = g(a, b);
    rep.lhs = (1.0 + a + b) * gab;

    double tail_err_total = 0.0;

    // memoised slices g(., b) and g(a, .)
    std::map<double, double> memo_pb, memo_aq;
    auto g_pb = [&](double p) {
        auto it = memo_pb.find(p);
        if (it != memo_pb.end()) return it->second;
        const double v = g(p, b);
        memo_pb.emplace(p, v);
        return v;
    };
    auto g_aq = [&](double q) {
        auto it = memo_aq.find(q);
        if (it != memo_aq.end()) return it->second;
        const double v = g(a, q);
        memo_aq.emplace(q, v);
        return v;
    };

    // single kernels, exactly as written in the equation
    auto term1_f = [&](double p) {
        return (g_pb(p) - gab) / (p - a) + gab / (1.0 + p);
    };
    auto term2_f = [&](double q) {
        return (g_aq(q) - gab) / (q - b) + gab / (1.0 + q);
    };
    double te = 0.0;
    const double t1 = quad::integrate_half_line(term1_f, 0.0, spec, {a}, &te).value;
    tail_err_total += te;
    const double t2 = quad::integrate_half_line(term2_f, 0.0, spec, {b}, &te).value;
    tail_err_total += te;

    // double term: the antisymmetric numerator is combined before dividing;
    // it vanishes on both pole lines, so each iterated integral is regular
    double t3 = 0.0;
    if (lambda != 0.0) {
        quad::QuadSpec inner_spec = spec;
        inner_spec.abs_tol = std::max(spec.abs_tol * 0.1, 1e-9);
        inner_spec.rel_tol = inner_spec.abs_tol;
        inner_spec.tail_cutoff = std::min(spec.tail_cutoff, 1e3);
        quad::QuadSpec outer_spec = inner_spec;
        outer_spec.abs_tol = 10.0 * inner_spec.abs_tol;
        outer_spec.rel_tol = outer_spec.abs_tol;
        auto inner = [&](double p) {
            const double gp_b = g_pb(p);
            auto f = [&](double q) {
                return (gab * g(p, q) - g_aq(q) * gp_b) / (q - b);
            };
            return quad::integrate_half_line(f, 0.0, inner_spec, {b}).value;
        };
        auto outer_f = [&](double p) { return inner(p) / (p - a); };
        t3 = quad::integrate_half_line(outer_f, 0.0, outer_spec, {a}, &te).value;
        tail_err_total += std::abs(lambda * lambda) * te;
    }

    rep.rhs = 1.0 + lambda * (t1 + t2) - lambda * lambda * t3;
    rep.abs_residual = std::abs(rep.lhs - rep.rhs);
    rep.rel_residual = rep.abs_residual / (1.0 + std::abs(rep.lhs));
    rep.tail_estimate = tail_err_total;
    return rep;
}

std::vector<std::pair<double, double>> compare_oracle_to_closedform(
    double lambda, const std::vector<double>& cutoffs, int n_nodes) {
    std::vector<std::pair<double, double>> out;
    for (double L2 : cutoffs) {
        auto grid = solve_fixed_point(lambda, L2, n_nodes);
        double dev = 0.0;
        for (int i = 0; i < grid.n(); ++i) {
            if (grid.nodes[i] > L2 / 4.0) break;
            for (int j = 0; j <= i; ++j) {
                const double gc = cf::G_real(grid.nodes[i], grid.nodes[j], lambda);
                dev = std::max(dev, std::abs(gc - grid.value(i, j)));
            }
        }
        out.emplace_back(L2, dev);
    }
    return out;
}

void write_csv(const GridFunction& g, std::ostream& os) {
    os.precision(17);
    os << "a_b";
    for (double p : g.nodes) os << ',' << p;
    os << '\n';
    for (int i = 0; i < g.n(); ++i) {
        os << g.nodes[i];
        for (int j = 0; j < g.n(); ++j) os << ',' << g.value(i, j);
        os << '\n';
    }
}

std::string metadata_json(const GridFunction& g) {
    nlohmann::json j;
    j["schema"] = "phi4-lambert/1";
    j["lambda"] = g.lambda;
    j["cutoff"] = g.cutoff;
    j["tol"] = g.tol;
    j["iterations"] = g.iterations;
    j["n_nodes"] = g.n();
    j["final_delta"] = g.final_delta;
    return j.dump();
}

} // namespace phi4::oracle
