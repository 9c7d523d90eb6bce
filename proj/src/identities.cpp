#include "phi4/identities.hpp"

#include <cmath>

#include <json.hpp>

#include "phi4/closed_form.hpp"
#include "phi4/errors.hpp"
#include "phi4/lambert_w.hpp"

namespace phi4::identities {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = 3.14159265358979323846264338327950;
constexpr double kLog4 = 1.386294361119890618834464242916353;

double get(const std::map<std::string, double>& p, const std::string& key) {
    auto it = p.find(key);
    if (it == p.end()) throw DomainError("identity check: missing parameter '" + key + "'");
    return it->second;
}

double get_or(const std::map<std::string, double>& p, const std::string& key, double dflt) {
    auto it = p.find(key);
    return it == p.end() ? dflt : it->second;
}

// arctan_{[0,pi]} (lambda > 0) or arctan_{[-pi,0]} (lambda < 0) of
// lambda pi / (1 + a + u - lambda log u)
double theta0(double u, double a, double lambda) {
    return std::atan2(lambda * kPi, 1.0 + a + u - lambda * std::log(u));
}

// W0((1/l)e^{(1+a)/l}) itself (not times lambda) for -1 < l < 0
double w0_value_neg(double a, double lambda) {
    const double al = -lambda;
    return special::w0_of_negexp((1.0 + a) / al + std::log(al));
}

// the three test angle functions used by the finite-interval checks
std::function<double(double)> tau_kind(int kind, double L2) {
    switch (kind) {
        case 0:
            return [L2](double p) { return 0.3 * p * (L2 - p) / (L2 * L2); };
        case 1:
            return [](double) { return kPi / 6.0; };
        case 2:
            return [](double p) { return 0.4 * p * std::exp(-p); };
        default:
            throw DomainError("identity check: tau_kind must be 0, 1 or 2");
    }
}

} // namespace

const char* identity_name(IdentityId id) {
    switch (id) {
        case IdentityId::L_LambertInt: return "L_LambertInt";
        case IdentityId::L_Lambert_int: return "L_Lambert_int";
        case IdentityId::K_Lambert_int: return "K_Lambert_int";
        case IdentityId::J1: return "J1";
        case IdentityId::J2: return "J2";
        case IdentityId::HTArctanLog: return "HTArctanLog";
        case IdentityId::logW0_path: return "logW0_path";
        case IdentityId::Jneg_1: return "Jneg_1";
        case IdentityId::Jneg_2: return "Jneg_2";
        case IdentityId::CorollaryNeg: return "CorollaryNeg";
        case IdentityId::Tricomi18: return "Tricomi18";
        case IdentityId::TauIdentity: return "TauIdentity";
    }
    return "?";
}

double h_flat(double a, double lambda) {
    if (a < 0.0) throw DomainError("h_flat: a must be >= 0");
    if (!(lambda > -1.0 / kLog4)) throw DomainError("h_flat: lambda must be > -1/log 4");
    if (lambda >= 0.0) return 0.0;
    const double w0 = w0_value_neg(a, lambda);
    // log(l W0 - 1) on the branch reaching real values: log(1 - l W0)
    return -lambda * w0 + lambda * std::log1p(-lambda * w0);
}

IdentityCheck check(IdentityId id, const std::map<std::string, double>& params,
                    const quad::QuadSpec& spec) {
    IdentityCheck out;
    out.id = id;
    out.params = params;

    switch (id) {
        case IdentityId::L_LambertInt: {
            const double a = get(params, "a"), l = get(params, "lambda");
            if (!(a > 0.0) || !(l > 0.0)) throw DomainError("L_LambertInt: need a, lambda > 0");
            auto f = [&](double t) {
                if (t <= 0.0) return 0.0;
                const double w = special::w0_of_exp(1.0 / t + a / l - std::log(t));
                return 1.0 / (t * (1.0 + w));
            };
            out.lhs = quad::integrate(f, 0.0, l, spec).value;
            out.rhs = std::log(a) - std::log(cf::S_factor(a, l) - 1.0);
            break;
        }
        case IdentityId::L_Lambert_int: {
            const double a = get(params, "a"), l = get(params, "lambda");
            const cplx z(get(params, "z_re"), get_or(params, "z_im", 0.0));
            if (!(l > 0.0)) throw DomainError("L_Lambert_int: need lambda > 0");
            if (z.imag() == 0.0 && z.real() <= -1.0)
                throw DomainError("L_Lambert_int: z on the cut (-inf,-1]");
            auto f = [&](double u) -> cplx {
                const double th = std::atan2(l * kPi, a + u - l * std::log(u - 1.0));
                return th / (u + z);
            };
            out.lhs = quad::integrate_half_line_complex(f, 1.0, spec).value / kPi;
            out.rhs = std::log((z + l * std::log(1.0 + z) - a) /
                               (1.0 + z - cf::S_factor(a, l)));
            break;
        }
        case IdentityId::K_Lambert_int: {
            const double a = get(params, "a"), l = get(params, "lambda");
            if (!(l > 0.0)) throw DomainError("K_Lambert_int: need lambda > 0");
            auto f = [&](double u) {
                const double th = std::atan2(l * kPi, a + u - l * std::log(u - 1.0));
                return th - l * kPi / u;
            };
            out.lhs = quad::integrate_half_line(f, 1.0, spec).value / kPi;
            out.rhs = cf::K(a, l);
            break;
        }
        case IdentityId::J1: {
            const double a = get(params, "a"), l = get(params, "lambda");
            const cplx z(get(params, "z_re"), get_or(params, "z_im", 0.0));
            if (!(l > 0.0)) throw DomainError("J1: need lambda > 0");
            if (z.imag() == 0.0 && z.real() <= -1.0)
                throw DomainError("J1: z on the cut (-inf,-1]");
            auto f = [&](double u) -> cplx { return theta0(u, a, l) / (1.0 + u + z); };
            out.lhs = quad::integrate_half_line_complex(f, 0.0, spec).value / kPi;
            out.rhs = std::log((z + l * std::log(1.0 + z) - a) /
                               (1.0 + z - cf::S_factor(a, l)));
            break;
        }
        case IdentityId::J2: {
            const double a = get(params, "a"), l = get(params, "lambda");
            if (!(l > 0.0)) throw DomainError("J2: need lambda > 0");
            auto f = [&](double u) { return theta0(u, a, l) - l * kPi / (1.0 + u); };
            out.lhs = quad::integrate_half_line(f, 0.0, spec).value / kPi;
            out.rhs = cf::K(a, l);
            break;
        }
        case IdentityId::HTArctanLog: {
            const double a = get(params, "a"), l = get(params, "lambda"), b = get(params, "b");
            if (!(l > 0.0) || !(b > 0.0)) throw DomainError("HTArctanLog: need lambda, b > 0");
            auto f = [&](double u) { return theta0(u, a, l); };
            out.lhs = quad::hilbert_halfline(f, b, spec);
            const double num = std::hypot(1.0 + a + b - l * std::log(b), l * kPi);
            out.rhs = std::log(num / (b + cf::S_factor(a, l)));
            break;
        }
        case IdentityId::logW0_path: {
            const double a = get(params, "a"), l = get(params, "lambda"), b = get(params, "b");
            if (!(l > 0.0) || !(b > 0.0)) throw DomainError("logW0_path: need lambda, b > 0");
            // hairpin contour reduces to boundary values:
            //   (1/2 pi i) oint = H_b[theta] - log(sqrt((1+a+b-l log b)^2+(l pi)^2)/(1+a+b))
            auto f = [&](double u) { return theta0(u, a, l); };
            const double ht = quad::hilbert_halfline(f, b, spec);
            const double re_at_b =
                std::log(std::hypot(1.0 + a + b - l * std::log(b), l * kPi) / (1.0 + a + b));
            out.lhs = ht - re_at_b;
            out.rhs = std::log((1.0 + a + b) / (b + cf::S_factor(a, l)));
            break;
        }
        case IdentityId::Jneg_1: {
            const double a = get(params, "a"), l = get(params, "lambda");
            const cplx z(get(params, "z_re"), get_or(params, "z_im", 0.0));
            if (!(l > -1.0 && l < 0.0)) throw DomainError("Jneg_1: need -1 < lambda < 0");
            if (z.imag() == 0.0 && z.real() <= -1.0)
                throw DomainError("Jneg_1: z on the cut (-inf,-1]");
            auto f = [&](double u) -> cplx { return theta0(u, a, l) / (1.0 + u + z); };
            out.lhs = quad::integrate_half_line_complex(f, 0.0, spec).value / kPi;
            const double lw0 = l * w0_value_neg(a, l);     // l W_0(..)
            const double lwm1 = cf::S_factor(a, l);        // l W_{-1}(..) = 1+a+K
            out.rhs = std::log((z + l * std::log(1.0 + z) - a) * (1.0 + z) /
                               ((1.0 + z - lw0) * (1.0 + z - lwm1)));
            break;
        }
        case IdentityId::Jneg_2: {
            const double a = get(params, "a"), l = get(params, "lambda");
            if (!(l > -1.0 && l < 0.0)) throw DomainError("Jneg_2: need -1 < lambda < 0");
            auto f = [&](double u) { return theta0(u, a, l) - l * kPi / (1.0 + u); };
            out.lhs = quad::integrate_half_line(f, 0.0, spec).value / kPi;
            out.rhs = -1.0 - a + l * w0_value_neg(a, l) + cf::S_factor(a, l);
            break;
        }
        case IdentityId::CorollaryNeg: {
            const double a = get(params, "a"), l = get(params, "lambda");
            if (!(a > 0.0)) throw DomainError("CorollaryNeg: need a > 0");
            if (!(l > -1.0 && l < 0.0)) throw DomainError("CorollaryNeg: need -1 < lambda < 0");
            auto f = [&](double p) { return cf::tau(a, p, l) - l * kPi / (1.0 + p); };
            out.lhs = quad::integrate_half_line(f, 0.0, spec).value / kPi;
            const double sa = cf::S_factor(a, l);  // l W_{-1}
            const double lw0 = l * w0_value_neg(a, l);
            out.rhs = -1.0 - a + l * std::log(a) + sa - l * std::log(sa - 1.0) + lw0 -
                      l * std::log1p(-lw0);
            break;
        }
        case IdentityId::Tricomi18: {
            const double L2 = get_or(params, "L2", 1.0), b = get(params, "b");
            auto tau = tau_kind(static_cast<int>(get_or(params, "tau_kind", 0.0)), L2);
            auto H = [&](double p) { return quad::hilbert_finite(tau, p, L2, spec); };
            auto F = [&](double p) { return std::exp(H(p)) * std::sin(tau(p)); };
            out.lhs = quad::hilbert_finite(F, b, L2, spec);
            out.rhs = std::exp(H(b)) * std::cos(tau(b)) - 1.0;
            break;
        }
        case IdentityId::TauIdentity: {
            const double L2 = get_or(params, "L2", 1.0);
            const double sgn = get_or(params, "sign", 1.0);
            auto tau = tau_kind(static_cast<int>(get_or(params, "tau_kind", 0.0)), L2);
            auto H = [&](double p) { return quad::hilbert_finite(tau, p, L2, spec); };
            auto F = [&](double p) { return std::exp(sgn * H(p)) * std::sin(tau(p)); };
            out.lhs = quad::integrate(F, 0.0, L2, spec).value;
            out.rhs = quad::integrate(tau, 0.0, L2, spec).value;
            break;
        }
    }
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

std::string to_json(const IdentityCheck& c, double tolerance) {
    nlohmann::json j;
    j["schema"] = "phi4-lambert/1";
    j["identity"] = identity_name(c.id);
    j["params"] = c.params;
    j["lhs"] = {{"re", c.lhs.real()}, {"im", c.lhs.imag()}};
    j["rhs"] = {{"re", c.rhs.real()}, {"im", c.rhs.imag()}};
    j["residual"] = c.residual;
    j["tolerance"] = tolerance;
    j["pass"] = c.residual <= tolerance;
    return j.dump();
}

} // namespace phi4::identities
