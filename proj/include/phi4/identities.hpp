#pragma once

// Numeric verification of the standalone Lambert-W integral identities: each
// check evaluates the printed integral by quadrature on one side and the
// closed form on the other, and reports the residual.

#include <complex>
#include <map>
#include <string>

#include "phi4/quadrature.hpp"

namespace phi4::identities {

enum class IdentityId {
    L_LambertInt,   // int_0^l dt/t 1/(1+W0((1/t)e^{1/t+a/l})) = log a - log(lW0(..)-1)
    L_Lambert_int,  // int_1^inf arctan_{[0,pi]}(..)/(u+z) du/pi = log(..)  [params a,l,z]
    K_Lambert_int,  // int_1^inf (arctan_{[0,pi]}(..) - l pi/u) du/pi = lW0(..)-1-a
    J1,             // the u-from-0 form of L_Lambert_int
    J2,             // the u-from-0 form of K_Lambert_int
    HTArctanLog,    // H_b[arctan_{[0,pi]}(..)] = log(sqrt(..)/(b+lW0(..)))
    logW0_path,     // hairpin contour integral = log((1+a+b)/(b+lW0(..)))
    Jneg_1,         // -1<l<0 variant of J1 with the two-branch product
    Jneg_2,         // -1<l<0 variant of J2 with the two-branch sum
    CorollaryNeg,   // -1<l<0 resummation integral with the W_{-1} angle function
    Tricomi18,      // finite-interval Carleman identity residual
    TauIdentity,    // int e^{+-H[tau]} sin tau = int tau on [0, L2]
};

const char* identity_name(IdentityId id);

struct IdentityCheck {
    IdentityId id;
    std::map<std::string, double> params;
    std::complex<double> lhs;
    std::complex<double> rhs;
    double residual = 0.0;  // |lhs - rhs|
};

// Parameter keys by identity: "a", "lambda" everywhere applicable; "z_re",
// "z_im" for L_Lambert_int/J1/Jneg_1; "b" for HTArctanLog/logW0_path and the
// Tricomi checks; "L2" and "tau_kind" (0: bump 0.3 p(L2-p)/L2^2, 1: constant
// pi/6, 2: p e^{-p}) for Tricomi18/TauIdentity; "sign" (+-1) for TauIdentity.
IdentityCheck check(IdentityId id, const std::map<std::string, double>& params,
                    const quad::QuadSpec& spec = {});

// Homogeneous Carleman deformation: 0 for lambda >= 0 and
// -l W0((1/l)e^{(1+a)/l}) + l log(1 - l W0((1/l)e^{(1+a)/l})) for l < 0
// (the log branch that keeps the value real); smooth and flat at lambda = 0.
double h_flat(double a, double lambda);

// One JSON record per check: {identity, params, lhs, rhs, residual,
// tolerance, pass}.
std::string to_json(const IdentityCheck& c, double tolerance);

} // namespace phi4::identities
