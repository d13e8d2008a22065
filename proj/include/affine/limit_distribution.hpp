#pragma once

#include "affine/params.hpp"

namespace affine {

// A stationary limit law for the rate exists iff R'(0) < 0, i.e. the process
// mean-reverts at first order around the origin of the transform domain.
struct LimitExistence {
    bool exists = false;
    // empty when exists; otherwise a short machine-stable token
    std::string reason;
};

LimitExistence limit_exists(const ValidatedParams& params);

// Cumulant generating function of the limit law at u <= 0:
//   cgf(u) = integral_u^0 F(s) / R(s) ds
// The integrand extends continuously to s = 0 with value F'(0)/R'(0).
double cgf(const ValidatedParams& params, double u, double abs_tol = 1e-10);

struct LimitMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// mean = -F'(0)/R'(0) exactly; variance from Richardson-extrapolated second
// differences of the cgf near zero.
LimitMoments limit_moments(const ValidatedParams& params);

// Density of the Levy measure of the limit law for the jump-diffusion square
// root model in the balanced case a = nu * sigma^2 / 2: the measure is
// l(x)/x dx with l as below. Throws DeltaNonZero away from the balanced case.
double jcir_levy_density(double a, double theta, double sigma, double c,
                         double nu, double x);

// The limit law is self-decomposable iff l is non-increasing on (0, inf),
// which reduces to c <= a * theta * nu.
bool jcir_self_decomposable(double a, double theta, double sigma, double c,
                            double nu);

}  // namespace affine
