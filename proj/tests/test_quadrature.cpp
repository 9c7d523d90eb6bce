#include <doctest.h>

#include <cmath>
#include <random>

#include "phi4/quadrature.hpp"

using namespace phi4;
namespace q = phi4::quad;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.718281828459045;
}

TEST_CASE("basic integrals") {
    CHECK(q::integrate([](double x) { return x; }, 0, 1).value == doctest::Approx(0.5).epsilon(1e-12));
    // integrable endpoint singularities
    CHECK(q::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0, 1, {}, q::Endpoint::lo).value ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(q::integrate([](double x) { return std::log(x); }, 0, 1, {}, q::Endpoint::lo).value ==
          doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("principal value") {
    auto one = [](double) { return 1.0; };
    CHECK(q::principal_value(one, 0, 2, 1).value == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(q::principal_value(one, 0, 3, 1).value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    // PV int_0^2 x/(x-1) dx = int_0^2 (1 + 1/(x-1)) dx = 2
    CHECK(q::principal_value([](double x) { return x; }, 0, 2, 1).value ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(q::principal_value(one, 0, 2, 0), DomainError);
}

TEST_CASE("hilbert transform on the half line") {
    auto f = [](double p) { return 1.0 / (1.0 + p); };
    // closed form -log(a)/(pi (1+a))
    CHECK(q::hilbert_halfline(f, 1.0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(q::hilbert_halfline(f, kE) == doctest::Approx(-1.0 / (kPi * (1.0 + kE))).epsilon(1e-9));
    // compactly supported f, pole outside the support: an ordinary integral
    auto bump = [](double p) { return p < 1.0 ? p * p * (1.0 - p) * (1.0 - p) : 0.0; };
    const double direct =
        q::integrate([&](double p) { return bump(p) / (p - 2.0); }, 0.0, 1.0).value / kPi;
    CHECK(q::hilbert_halfline(bump, 2.0) == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("PV and Hilbert are linear") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> U(0.2, 2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double c1 = U(rng), c2 = U(rng), s1 = U(rng), s2 = U(rng);
        auto f1 = [&](double p) { return std::exp(-s1 * p); };
        auto f2 = [&](double p) { return std::sin(s2 * p) * std::exp(-0.5 * p); };
        auto fc = [&](double p) { return c1 * f1(p) + c2 * f2(p); };
        const double a = 0.5 + trial * 0.3;
        const double lhs = q::hilbert_halfline(fc, a);
        const double rhs = c1 * q::hilbert_halfline(f1, a) + c2 * q::hilbert_halfline(f2, a);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        const double pl = q::principal_value(fc, 0, 4, a).value;
        const double pr =
            c1 * q::principal_value(f1, 0, 4, a).value + c2 * q::principal_value(f2, 0, 4, a).value;
        CHECK(pl == doctest::Approx(pr).epsilon(1e-10));
    }
}

TEST_CASE("tricomi identity residuals") {
    q::QuadSpec spec;
    spec.abs_tol = spec.rel_tol = 1e-9;
    SUBCASE("tau = 0") {
        CHECK(std::abs(q::tricomi_check([](double) { return 0.0; }, 1.0, 0.5, spec)) < 1e-12);
    }
    SUBCASE("smooth bump") {
        const double L2 = 4.0;
        auto tau = [L2](double p) { return 0.3 * p * (L2 - p) / (L2 * L2); };
        CHECK(std::abs(q::tricomi_check(tau, L2, L2 / 2.0, spec)) < 1e-6);
    }
    SUBCASE("constant pi/6 on [0,1]") {
        auto tau = [](double) { return kPi / 6.0; };
        CHECK(std::abs(q::tricomi_check(tau, 1.0, 0.5, spec)) < 1e-6);
    }
}

TEST_CASE("area identity for e^{+-H[tau]} sin tau") {
    q::QuadSpec spec;
    spec.abs_tol = spec.rel_tol = 1e-9;
    const double L2 = 2.0;
    auto tau = [L2](double p) { return 0.4 * p * (L2 - p) / (L2 * L2) + 0.05; };
    auto H = [&](double p) { return q::hilbert_finite(tau, p, L2, spec); };
    const double rhs = q::integrate(tau, 0.0, L2, spec).value;
    for (double sgn : {+1.0, -1.0}) {
        auto F = [&](double p) { return std::exp(sgn * H(p)) * std::sin(tau(p)); };
        const double lhs = q::integrate(F, 0.0, L2, spec).value;
        CHECK(std::abs(lhs - rhs) < 1e-6);
    }
}

TEST_CASE("outside-interval form at b = 2 L2") {
    q::QuadSpec spec;
    spec.abs_tol = spec.rel_tol = 1e-10;
    const double L2 = 2.0, b = 2.0 * L2;
    auto tau = [L2](double p) { return 0.35 * p * (L2 - p) / (L2 * L2); };
    auto H = [&](double p) { return q::hilbert_finite(tau, p, L2, spec); };
    const double lhs =
        q::integrate([&](double p) { return std::exp(H(p)) * std::sin(tau(p)) / (p - b); }, 0.0,
                     L2, spec)
            .value /
        kPi;
    const double rhs =
        std::exp(q::integrate([&](double p) { return tau(p) / (p - b); }, 0.0, L2, spec).value /
                 kPi) -
        1.0;
    CHECK(std::abs(lhs - rhs) < 1e-6);
}
