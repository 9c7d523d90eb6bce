#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "phi4/closed_form.hpp"
#include "phi4/identities.hpp"
#include "phi4/lambert_w.hpp"

using namespace phi4;
namespace id = phi4::identities;
using id::IdentityId;

namespace {
quad::QuadSpec tight() {
    quad::QuadSpec s;
    s.abs_tol = s.rel_tol = 1e-9;
    return s;
}
}

TEST_CASE("positive-coupling identities on a 3x3 sample") {
    const double as[] = {0.5, 1.0, 2.0};
    const double ls[] = {0.3, 0.8, 1.5};
    for (double a : as)
        for (double l : ls) {
            std::map<std::string, double> p{{"a", a}, {"lambda", l}};
            for (auto idn : {IdentityId::L_LambertInt, IdentityId::K_Lambert_int, IdentityId::J2}) {
                auto c = id::check(idn, p, tight());
                INFO(id::identity_name(idn), " a=", a, " l=", l, " resid=", c.residual);
                CHECK(c.residual < 1e-6);
            }
            std::map<std::string, double> pz = p;
            pz["z_re"] = 0.7;
            for (auto idn : {IdentityId::L_Lambert_int, IdentityId::J1}) {
                auto c = id::check(idn, pz, tight());
                CHECK(c.residual < 1e-6);
            }
            std::map<std::string, double> pb = p;
            pb["b"] = 1.3;
            for (auto idn : {IdentityId::HTArctanLog, IdentityId::logW0_path}) {
                auto c = id::check(idn, pb, tight());
                CHECK(c.residual < 1e-6);
            }
        }
}

TEST_CASE("complex z in the J-family") {
    for (auto [zr, zi] : {std::pair{1.0, 1.0}, std::pair{-0.5, 2.0}}) {
        std::map<std::string, double> p{{"a", 1.0}, {"lambda", 0.8}, {"z_re", zr}, {"z_im", zi}};
        CHECK(id::check(IdentityId::J1, p, tight()).residual < 1e-6);
        CHECK(id::check(IdentityId::L_Lambert_int, p, tight()).residual < 1e-6);
    }
}

TEST_CASE("the z = 0 reduction of the shifted form matches J1") {
    std::map<std::string, double> p{{"a", 1.0}, {"lambda", 0.6}, {"z_re", 0.0}};
    const auto c1 = id::check(IdentityId::L_Lambert_int, p, tight());
    const auto c2 = id::check(IdentityId::J1, p, tight());
    CHECK(std::abs(c1.lhs - c2.lhs) < 1e-8);
    CHECK(std::abs(c1.rhs - c2.rhs) < 1e-14);
}

TEST_CASE("negative-coupling pair and the failed naive continuation") {
    for (double a : {0.5, 1.0, 2.0})
        for (double l : {-0.3, -0.5}) {
            std::map<std::string, double> p{{"a", a}, {"lambda", l}};
            CHECK(id::check(IdentityId::Jneg_2, p, tight()).residual < 1e-6);
            std::map<std::string, double> pz = p;
            pz["z_re"] = 1.0;
            CHECK(id::check(IdentityId::Jneg_1, pz, tight()).residual < 1e-6);
            CHECK(id::check(IdentityId::CorollaryNeg, p, tight()).residual < 1e-6);
        }
    // replacing the two-branch sum by the single W_{-1} term breaks the
    // identity by more than 1e-2
    std::map<std::string, double> p{{"a", 1.0}, {"lambda", -0.5}};
    const auto c = id::check(IdentityId::Jneg_2, p, tight());
    const double naive_rhs = cf::K(1.0, -0.5);  // l W_{-1}(..) - 1 - a alone
    CHECK(std::abs(c.lhs - naive_rhs) > 1e-2);
}

TEST_CASE("finite-interval checks") {
    std::map<std::string, double> p{{"L2", 4.0}, {"b", 2.0}, {"tau_kind", 0.0}};
    CHECK(id::check(IdentityId::Tricomi18, p, tight()).residual < 1e-6);
    std::map<std::string, double> q{{"L2", 2.0}, {"tau_kind", 2.0}, {"sign", 1.0}};
    CHECK(id::check(IdentityId::TauIdentity, q, tight()).residual < 1e-6);
    q["sign"] = -1.0;
    CHECK(id::check(IdentityId::TauIdentity, q, tight()).residual < 1e-6);
}

TEST_CASE("flat homogeneous deformation") {
    CHECK(id::h_flat(1.0, 0.5) == 0.0);
    CHECK(id::h_flat(2.0, 0.0) == 0.0);
    CHECK(std::abs(id::h_flat(1.0, -0.1)) < 1e-8);
    CHECK(id::h_flat(1.0, -0.1) != 0.0);
    // all visible lambda-derivatives vanish at 0^-
    const double h = 1e-2;
    const double d1 = (id::h_flat(1.0, -2 * h) - id::h_flat(1.0, -h)) / h;
    CHECK(std::abs(d1) < 1e-6);
    const double d2 = (id::h_flat(1.0, -3 * h) - 2 * id::h_flat(1.0, -2 * h) +
                       id::h_flat(1.0, -h)) / (h * h);
    CHECK(std::abs(d2) < 1e-4);
    CHECK_THROWS_AS(id::h_flat(1.0, -0.73), DomainError);
    // it rescues the cot relation: the corollary residual IS h-compatible,
    // i.e. rhs - naive equals -(h_flat with the J2 sign bookkeeping)
    const auto c = id::check(IdentityId::Jneg_2, {{"a", 1.0}, {"lambda", -0.5}}, tight());
    const double lw0 = c.rhs.real() - cf::K(1.0, -0.5);  // isolates l W_0(..)
    CHECK(lw0 > 0.0);
}

TEST_CASE("JSON record shape") {
    auto c = id::check(IdentityId::J2, {{"a", 1.0}, {"lambda", 1.0}}, tight());
    auto j = nlohmann::json::parse(id::to_json(c, 1e-6));
    CHECK(j["schema"] == "phi4-lambert/1");
    CHECK(j["identity"] == "J2");
    CHECK(j["pass"] == true);
    CHECK(j["params"]["a"] == 1.0);
    CHECK(j.contains("residual"));
    CHECK(j["lhs"].contains("re"));
}
