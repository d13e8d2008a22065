#include "affine/shape.hpp"

#include <cmath>

#include "affine/rootfind.hpp"

namespace affine {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

ShapeBoundaries shape_boundaries(const ValidatedParams& params) {
    const double lambda = params.quasi_mean_reversion();
    if (lambda == 0.0) throw LambdaZero();
    const double u_star = -1.0 / lambda;
    const double slope_at_zero = params.R_prime(0.0);

    ShapeBoundaries sb;
    sb.lambda = lambda;
    sb.b_norm = -params.F_prime(u_star) / params.R_prime(u_star);
    sb.b_asymp = -params.F(u_star);
    sb.b_inv = slope_at_zero < 0.0 ? -params.F_prime(0.0) / slope_at_zero : kInf;
    return sb;
}

double b_asymp_lambda_zero(const ValidatedParams& params, double r) {
    if (params.quasi_mean_reversion() != 0.0)
        throw DomainError(
            "quasi-mean-reversion is positive; use shape_boundaries");
    if (!params.contains_rate(r))
        throw DomainError("short rate outside the state space");

    // -F(u) + r(1 - R(u)) = -a u^2 - (pF + r pR) u + const + o(1); alpha = 0
    // is implied by lambda = 0 so no quadratic term enters through R.
    const auto f = params.F_asymptotic();
    const auto g = params.R_asymptotic();
    const double linear = f.linear + r * g.linear;
    if (f.quadratic > 0.0) return -kInf;
    if (linear > 0.0) return kInf;
    if (linear < 0.0) return -kInf;
    return r - f.bounded_limit - r * g.bounded_limit;
}

CurveShape classify(const ValidatedParams& params, double r) {
    const double lambda = params.quasi_mean_reversion();
    if (lambda == 0.0) throw LambdaZero();
    if (!params.contains_rate(r))
        throw DomainError("short rate outside the state space");
    if (params.linear_F() && params.raw().b == 0.0) throw DegenerateF();

    if (params.linear_F() && params.linear_R()) {
        // deterministic drift: flat exactly at -b/beta, monotone elsewhere
        // (all three boundaries coincide there, so a hump cannot occur)
        const double flat_rate = -params.raw().b / params.raw().beta;
        if (std::abs(r - flat_rate) <=
            1e-14 * std::max(1.0, std::abs(flat_rate)))
            return {ShapeKind::Flat};
        return r < flat_rate ? CurveShape{ShapeKind::Normal}
                             : CurveShape{ShapeKind::Inverse};
    }

    const ShapeBoundaries sb = shape_boundaries(params);
    if (r <= sb.b_norm) return {ShapeKind::Normal};
    if (r >= sb.b_inv) return {ShapeKind::Inverse};

    // B(x) contracts toward -1/lambda at rate >= lambda, so 50/lambda puts
    // the hump criterion within rounding of its limit; extend a few times
    // for rates within rounding of b_norm.
    double x_max = 50.0 / lambda;
    for (int attempt = 0;; ++attempt) {
        const TermStructure ts = solve_term_structure(params, x_max);
        try {
            const double x_star = forward_hump_location(params, ts, r);
            return {ShapeKind::Humped, x_star, forward_rate(ts, r, x_star)};
        } catch (const HorizonTooShort&) {
            if (attempt >= 3) throw;
            x_max *= 2.0;
        }
    }
}

double forward_hump_location(const ValidatedParams& params,
                             const TermStructure& ts, double r) {
    // k(x) = F'(B(x)) + r R'(B(x)) is the derivative of the forward curve up
    // to the positive factor -B'(x); it decreases from k(0) > 0 through the
    // unique zero x*.
    auto k = [&params, &ts, r](double x) {
        const double b = ts.B(x);
        return params.F_prime(b) + r * params.R_prime(b);
    };
    const double k_end = k(ts.x_max());
    if (k_end > 0.0) throw HorizonTooShort(ts.x_max());
    const double k_start = k(0.0);
    if (k_start <= 0.0)
        throw DomainError("curve has no interior forward-rate maximum");
    return find_root(k, 0.0, ts.x_max(), k_start, k_end, 0.0, 1e-10);
}

YieldMax yield_curve_max(const TermStructure& ts, double r, double tol) {
    const double x = golden_section_max(
        [&ts, r](double xx) { return yield(ts, r, xx); }, 0.0, ts.x_max(), tol);
    return {x, yield(ts, r, x)};
}

}  // namespace affine
