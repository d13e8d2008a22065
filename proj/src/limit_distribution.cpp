#include "affine/limit_distribution.hpp"

#include <cmath>

#include "affine/quadrature.hpp"

namespace affine {
namespace {

void check_jcir(double a, double theta, double sigma, double c, double nu) {
    if (!(a > 0.0) || !(theta > 0.0) || !(sigma > 0.0) || !(c > 0.0) ||
        !(nu > 0.0))
        throw ParameterError("jump-diffusion square-root parameters must be positive");
    const double delta = a - nu * sigma * sigma / 2.0;
    if (std::abs(delta) > 1e-12) throw DeltaNonZero();
}

}  // namespace

LimitExistence limit_exists(const ValidatedParams& params) {
    if (params.R_prime(0.0) < 0.0) return {true, ""};
    return {false, "R'(0) >= 0"};
}

double cgf(const ValidatedParams& params, double u, double abs_tol) {
    const LimitExistence ex = limit_exists(params);
    if (!ex.exists) throw DomainError("limit law does not exist: " + ex.reason);
    if (!std::isfinite(u) || u > 0.0)
        throw DomainError("cgf is defined for u <= 0");
    if (u == 0.0) return 0.0;

    const double at_zero = params.F_prime(0.0) / params.R_prime(0.0);
    auto integrand = [&params, at_zero](double s) {
        if (s == 0.0) return at_zero;
        return params.F(s) / params.R(s);
    };
    return integrate_adaptive(integrand, u, 0.0, abs_tol);
}

LimitMoments limit_moments(const ValidatedParams& params) {
    const LimitExistence ex = limit_exists(params);
    if (!ex.exists) throw DomainError("limit law does not exist: " + ex.reason);
    LimitMoments m;
    m.mean = -params.F_prime(0.0) / params.R_prime(0.0);

    // cgf(0) = 0, so a one-sided second difference needs only two evaluations.
    auto second_diff = [&params](double hh) {
        const double k1 = cgf(params, -hh, 1e-13);
        const double k2 = cgf(params, -2.0 * hh, 1e-13);
        return (k2 - 2.0 * k1) / (hh * hh);
    };
    const double h = 1e-4;
    const double d1 = second_diff(h);
    const double d2 = second_diff(h / 2.0);
    const double d4 = second_diff(h / 4.0);
    const double r1 = 2.0 * d2 - d1;
    const double r2 = 2.0 * d4 - d2;
    m.variance = (4.0 * r2 - r1) / 3.0;
    return m;
}

double jcir_levy_density(double a, double theta, double sigma, double c,
                         double nu, double x) {
    check_jcir(a, theta, sigma, c, nu);
    if (!(x > 0.0)) throw DomainError("density is defined on x > 0");
    const double l = (theta + (c / a) * x) * nu * std::exp(-nu * x);
    return l / x;
}

bool jcir_self_decomposable(double a, double theta, double sigma, double c,
                            double nu) {
    check_jcir(a, theta, sigma, c, nu);
    return c <= a * theta * nu;
}

}  // namespace affine
