#pragma once

#include <limits>

#include "affine/params.hpp"
#include "affine/term_structure.hpp"

namespace affine {

// Short-rate thresholds separating the yield-curve regimes, plus the
// quasi-mean-reversion they are built from.  All curves of the model share
// the long-maturity yield level b_asymp.
struct ShapeBoundaries {
    double lambda = 0.0;
    double b_norm = 0.0;
    double b_asymp = 0.0;
    double b_inv = std::numeric_limits<double>::infinity();  // +inf when R'(0) >= 0
};

enum class ShapeKind { Normal, Humped, Inverse, Flat };

struct CurveShape {
    ShapeKind kind = ShapeKind::Normal;
    // Location and value of the forward-rate maximum; set only for Humped.
    double forward_max_x = std::numeric_limits<double>::quiet_NaN();
    double forward_max_value = std::numeric_limits<double>::quiet_NaN();
};

// b_norm = -F'(-1/lambda)/R'(-1/lambda), b_asymp = -F(-1/lambda),
// b_inv = -F'(0)/R'(0) when R'(0) < 0 and +inf otherwise.
// Throws LambdaZero when quasi-mean-reversion vanishes.
ShapeBoundaries shape_boundaries(const ValidatedParams& params);

// Long-maturity yield in the lambda = 0 regime:
// lim_{u -> -inf} -F(u) + r (1 - R(u)), evaluated analytically; signed
// infinity when divergent.
double b_asymp_lambda_zero(const ValidatedParams& params, double r);

// Trichotomy: Normal if r <= b_norm, Inverse if r >= b_inv, Humped between
// (with the forward-maximum location solved); Flat exactly in the
// deterministic case F = bu, R = beta u at r = -b/beta.
// Throws LambdaZero, DomainError(r), DegenerateF (F identically zero).
CurveShape classify(const ValidatedParams& params, double r);

// Solves F'(B(x)) + r R'(B(x)) = 0 on [0, x_max] to 1e-10 in x.
// Requires a humped configuration; throws HorizonTooShort when the sign
// change lies beyond the solved horizon.
double forward_hump_location(const ValidatedParams& params,
                             const TermStructure& ts, double r);

// Golden-section maximum of the yield curve over [0, x_max]; utility for
// locating the yield hump (distinct from the forward-rate hump).
struct YieldMax {
    double x;
    double value;
};
YieldMax yield_curve_max(const TermStructure& ts, double r, double tol = 1e-8);

}  // namespace affine
