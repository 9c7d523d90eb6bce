// Command-line front end: closed-form evaluation, series tables, the
// finite-cutoff oracle, the identity verification suite, and boundary-curve
// emission.

#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phi4/closed_form.hpp"
#include "phi4/domains.hpp"
#include "phi4/errors.hpp"
#include "phi4/identities.hpp"
#include "phi4/oracle.hpp"
#include "phi4/series.hpp"

namespace {

using nlohmann::json;
using namespace phi4;

constexpr const char* kSchema = "phi4-lambert/1";

int thread_count() {
    if (const char* env = std::getenv("THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
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

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

void print_human(std::ostream& os, const char* name, double v) {
    os.precision(12);
    os << name << " = " << v << '\n';
}

// ---------------------------------------------------------------- eval ----
int run_eval(double a, double b, double lam_re, double lam_im, const std::string& grid,
             const std::string& format, const std::string& out_path) {
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    if (!grid.empty()) {
        // --grid amin:amax:n sweeps a = b over the range at fixed lambda
        double lo, hi;
        int n;
        if (std::sscanf(grid.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 2)
            throw CLI::ValidationError("--grid expects lo:hi:n with n >= 2");
        std::vector<double> as(n), gs(n), ns(n);
        for (int i = 0; i < n; ++i) as[i] = lo + (hi - lo) * i / (n - 1);
        parallel_for(n, [&](int i) {
            auto gv = cf::G({as[i], as[i], {lam_re, lam_im}});
            gs[i] = gv.g.real();
            ns[i] = gv.n_value.real();
        });
        os << "a,b,lambda,G,N\n";
        os.precision(17);
        for (int i = 0; i < n; ++i)
            os << as[i] << ',' << as[i] << ',' << lam_re << ',' << gs[i] << ',' << ns[i] << '\n';
        return 0;
    }
    const cf::EvalPoint pt{a, b, {lam_re, lam_im}};
    const auto gv = cf::G(pt);
    const double sa = 1.0 + a + (lam_im == 0.0 ? cf::K(a, lam_re)
                                               : cf::K_complex({a, 0.0}, pt.lambda).real());
    const double sb = 1.0 + b + (lam_im == 0.0 ? cf::K(b, lam_re)
                                               : cf::K_complex({b, 0.0}, pt.lambda).real());
    if (format == "json") {
        json j;
        j["schema"] = kSchema;
        j["a"] = a;
        j["b"] = b;
        j["lambda"] = {{"re", lam_re}, {"im", lam_im}};
        j["G"] = {{"re", gv.g.real()}, {"im", gv.g.imag()}};
        j["N"] = {{"re", gv.n_value.real()}, {"im", gv.n_value.imag()}};
        j["S_a"] = sa;
        j["S_b"] = sb;
        j["err_estimate"] = gv.err_estimate;
        os << j.dump() << '\n';
    } else {
        if (lam_im == 0.0) {
            print_human(os, "G", gv.g.real());
            print_human(os, "N", gv.n_value.real());
        } else {
            os.precision(12);
            os << "G = " << gv.g.real() << (gv.g.imag() < 0 ? " - " : " + ")
               << std::abs(gv.g.imag()) << "i\n";
            os << "N = " << gv.n_value.real() << (gv.n_value.imag() < 0 ? " - " : " + ")
               << std::abs(gv.n_value.imag()) << "i\n";
        }
        print_human(os, "S_a (= lambda W((1/l)e^{(1+a)/l}))", sa);
        print_human(os, "S_b (= lambda W((1/l)e^{(1+b)/l}))", sb);
        os.precision(3);
        os << "err_estimate = " << gv.err_estimate << '\n';
    }
    return 0;
}

// -------------------------------------------------------------- series ----
int run_series(int order, const std::string& at, const std::string& format,
               const std::string& out_path) {
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    double a = 0.0, b = 0.0;
    const bool has_b = at.find(',') != std::string::npos;
    if (std::sscanf(at.c_str(), "%lf,%lf", &a, &b) < 1)
        throw CLI::ValidationError("--at expects a or a,b");
    auto c1 = series::I_coeffs_conjecture(a, order);
    auto c2 = series::I_coeffs_derivative_form(a, order);
    double maxdiff = 0.0;
    for (int m = 1; m <= order; ++m)
        maxdiff = std::max(maxdiff, std::abs(c1.coeffs[m] - c2.coeffs[m]));
    if (format == "json") {
        json j;
        j["schema"] = kSchema;
        j["a"] = a;
        j["order"] = order;
        j["stirling_form"] = std::vector<double>(c1.coeffs.begin() + 1, c1.coeffs.end());
        j["derivative_form"] = std::vector<double>(c2.coeffs.begin() + 1, c2.coeffs.end());
        j["max_discrepancy"] = maxdiff;
        if (has_b) {
            auto g2 = series::G_series2(a, b);
            j["b"] = b;
            j["G_order2"] = {g2.c0, g2.c1, g2.c2};
            if (a > 0.0 && b > 0.0) j["N2"] = series::N2_coeff(a, b);
        }
        os << j.dump() << '\n';
    } else {
        os << "# I_lambda(a) coefficients at a = " << a << '\n';
        os << "order  stirling_form      derivative_form    |diff|\n";
        for (int m = 1; m <= order; ++m) {
            char line[128];
            std::snprintf(line, sizeof line, "%5d  %- .12g  %- .12g  %.3g\n", m, c1.coeffs[m],
                          c2.coeffs[m], std::abs(c1.coeffs[m] - c2.coeffs[m]));
            os << line;
        }
        os.precision(3);
        os << "max discrepancy = " << maxdiff << '\n';
        if (has_b) {
            auto g2 = series::G_series2(a, b);
            os.precision(12);
            os << "# G(a,b) to second order at (a,b) = (" << a << ", " << b << ")\n";
            os << "c0 = " << g2.c0 << "\nc1 = " << g2.c1 << "\nc2 = " << g2.c2 << '\n';
            if (a > 0.0 && b > 0.0) os << "[l^2] N = " << series::N2_coeff(a, b) << '\n';
        }
    }
    return 0;
}

// -------------------------------------------------------------- oracle ----
int run_oracle(double lam, std::vector<double> cutoffs, int nodes, double damping, double tol,
               int max_iter, const std::string& out_path) {
    if (cutoffs.empty()) cutoffs = {100.0};
    std::cout.precision(12);
    for (double L2 : cutoffs) {
        auto g = oracle::solve_fixed_point(lam, L2, nodes, damping, tol, max_iter);
        double dev = 0.0;
        for (int i = 0; i < g.n(); ++i) {
            if (g.nodes[i] > L2 / 4.0) break;
            for (int j = 0; j <= i; ++j) {
                if (g.nodes[j] > L2 / 4.0) break;
                dev = std::max(dev,
                               std::abs(cf::G_real(g.nodes[i], g.nodes[j], lam) - g.value(i, j)));
            }
        }
        std::cout << "cutoff = " << L2 << "  iterations = " << g.iterations
                  << "  max|dG| = " << g.final_delta
                  << "  max deviation from closed form (interior) = " << dev << '\n';
        if (!out_path.empty()) {
            const std::string base =
                cutoffs.size() == 1 ? out_path
                                    : out_path + "." + std::to_string(static_cast<int>(L2));
            std::ofstream csv(base);
            if (!csv) throw std::runtime_error("cannot open " + base);
            oracle::write_csv(g, csv);
            std::ofstream meta(base + ".json");
            meta << oracle::metadata_json(g) << '\n';
        }
    }
    return 0;
}

// -------------------------------------------------------------- verify ----
struct SuiteItem {
    identities::IdentityId id;
    std::map<std::string, double> params;
    double tolerance;
};

std::vector<SuiteItem> verification_suite() {
    using identities::IdentityId;
    std::vector<SuiteItem> items;
    const double as[] = {0.5, 1.0, 2.0};
    const double ls[] = {0.3, 0.8, 1.5};
    for (double a : as)
        for (double l : ls) {
            for (auto id : {IdentityId::L_LambertInt, IdentityId::K_Lambert_int, IdentityId::J2})
                items.push_back({id, {{"a", a}, {"lambda", l}}, 1e-6});
            for (auto id : {IdentityId::L_Lambert_int, IdentityId::J1})
                items.push_back({id, {{"a", a}, {"lambda", l}, {"z_re", 0.7}}, 1e-6});
            for (auto id : {IdentityId::HTArctanLog, IdentityId::logW0_path})
                items.push_back({id, {{"a", a}, {"lambda", l}, {"b", 1.3}}, 1e-6});
        }
    for (auto [zr, zi] : {std::pair{1.0, 1.0}, std::pair{-0.5, 2.0}})
        items.push_back(
            {IdentityId::J1, {{"a", 1.0}, {"lambda", 0.8}, {"z_re", zr}, {"z_im", zi}}, 1e-6});
    for (double a : {0.5, 1.0, 2.0})
        for (double l : {-0.3, -0.5}) {
            items.push_back({IdentityId::Jneg_2, {{"a", a}, {"lambda", l}}, 1e-6});
            items.push_back({IdentityId::Jneg_1, {{"a", a}, {"lambda", l}, {"z_re", 1.0}}, 1e-6});
            items.push_back({IdentityId::CorollaryNeg, {{"a", a}, {"lambda", l}}, 1e-6});
        }
    items.push_back({IdentityId::Tricomi18, {{"L2", 4.0}, {"b", 2.0}, {"tau_kind", 0.0}}, 1e-6});
    items.push_back({IdentityId::Tricomi18, {{"L2", 1.0}, {"b", 0.5}, {"tau_kind", 1.0}}, 1e-6});
    items.push_back(
        {IdentityId::TauIdentity, {{"L2", 2.0}, {"tau_kind", 2.0}, {"sign", 1.0}}, 1e-6});
    items.push_back(
        {IdentityId::TauIdentity, {{"L2", 2.0}, {"tau_kind", 2.0}, {"sign", -1.0}}, 1e-6});
    return items;
}

int run_verify(const std::string& suite, const std::string& out_path) {
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    auto all = verification_suite();
    std::vector<SuiteItem> items;
    for (const auto& it : all)
        if (suite == "all" || suite == identities::identity_name(it.id)) items.push_back(it);
    if (items.empty()) throw CLI::ValidationError("unknown suite: " + suite);
    quad::QuadSpec spec;
    spec.abs_tol = spec.rel_tol = 1e-9;
    std::vector<std::string> records(items.size());
    std::vector<char> ok(items.size(), 0);
    parallel_for(static_cast<int>(items.size()), [&](int i) {
        const auto c = identities::check(items[i].id, items[i].params, spec);
        records[i] = identities::to_json(c, items[i].tolerance);
        ok[i] = c.residual <= items[i].tolerance;
    });
    bool all_pass = true;
    for (std::size_t i = 0; i < items.size(); ++i) {
        os << records[i] << '\n';
        all_pass = all_pass && ok[i];
    }
    return all_pass ? 0 : 1;
}

// -------------------------------------------------------------- curves ----
int run_curves(const std::string& which, double a, double lam, int samples,
               const std::string& out_path) {
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    std::vector<domains::CurveSample> samples_out;
    constexpr double kPi = 3.14159265358979323846;
    os.precision(17);
    if (which == "critical") {
        samples_out = domains::critical_curve(-3.0, 3.0, samples);
    } else if (which == "cochleoid") {
        samples_out = domains::cochleoid(a, -4.0 * kPi, 4.0 * kPi, samples);
    } else if (which == "envelope") {
        auto env = domains::envelope(samples);
        os << "# t_E = " << env.t_E << "\n# psi = " << env.psi << '\n';
        samples_out = std::move(env.samples);
    } else if (which == "Nlambda") {
        samples_out = domains::n_lambda_curve(lam, -20.0, 20.0, samples);
    } else {
        throw CLI::ValidationError("--which must be critical|cochleoid|envelope|Nlambda");
    }
    os << "param,re,im,curve_id\n";
    for (const auto& s : samples_out)
        os << s.param << ',' << s.point.real() << ',' << s.point.imag() << ',' << which << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form 2-point function of the 2d noncommutative phi^4 model"};
    app.require_subcommand(1);

    double a = 0.0, b = 0.0, lam = 0.0, lam_im = 0.0;
    std::string grid, format = "table", out_path, at = "1.0", suite = "all", which = "critical";
    int order = 6, nodes = 64, max_iter = 20000, samples = 512;
    double damping = 0.5, tol = 1e-10;
    std::vector<double> cutoffs;

    auto* eval = app.add_subcommand("eval", "evaluate G, N and the Lambert factors");
    eval->add_option("a", a, "first argument (>= 0)");
    eval->add_option("b", b, "second argument (>= 0)");
    eval->add_option("lambda", lam, "coupling");
    eval->add_option("--lambda-im", lam_im, "imaginary part of the coupling");
    eval->add_option("--grid", grid, "sweep a = b over lo:hi:n");
    eval->add_option("--format", format, "table|json|csv");
    eval->add_option("-o,--output", out_path, "write to file instead of stdout");

    auto* ser = app.add_subcommand("series", "perturbative coefficients from both routes");
    ser->add_option("--order", order, "highest lambda power")->check(CLI::PositiveNumber);
    ser->add_option("--at", at, "evaluation point a or a,b");
    ser->add_option("--format", format, "table|json");
    ser->add_option("-o,--output", out_path, "write to file");

    auto* orc = app.add_subcommand("oracle", "finite-cutoff fixed-point solve and comparison");
    orc->add_option("--lambda", lam, "coupling")->required();
    orc->add_option("--cutoff", cutoffs, "cutoff(s) Lambda^2");
    orc->add_option("--nodes", nodes, "quadrature nodes per axis");
    orc->add_option("--damping", damping, "initial damping in (0,1]");
    orc->add_option("--tol", tol, "fixed-point tolerance");
    orc->add_option("--max-iter", max_iter, "iteration budget");
    orc->add_option("-o,--output", out_path, "CSV grid output path (+ .json sidecar)");

    auto* ver = app.add_subcommand("verify", "run the identity suite, nonzero exit on failure");
    ver->add_option("--suite", suite, "all or one identity name");
    ver->add_option("-o,--output", out_path, "write JSON records to file");

    auto* cur = app.add_subcommand("curves", "emit boundary curves as CSV");
    cur->add_option("--which", which, "critical|cochleoid|envelope|Nlambda")->required();
    cur->add_option("--a", a, "cochleoid parameter a");
    cur->add_option("--lambda", lam, "coupling for the Nlambda curve");
    cur->add_option("--samples", samples, "sample count");
    cur->add_option("-o,--output", out_path, "write to file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return run_eval(a, b, lam, lam_im, grid, format, out_path);
        if (ser->parsed()) return run_series(order, at, format, out_path);
        if (orc->parsed())
            return run_oracle(lam, cutoffs, nodes, damping, tol, max_iter, out_path);
        if (ver->parsed()) return run_verify(suite, out_path);
        if (cur->parsed()) return run_curves(which, a, lam, samples, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const phi4::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const phi4::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
