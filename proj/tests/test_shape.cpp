#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "affine/shape.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using affine::AffineParams;
using affine::CompoundPoissonExp;
using affine::CurveShape;
using affine::ShapeBoundaries;
using affine::ShapeKind;
using affine::StateSpace;
using affine::ValidatedParams;

namespace {

ValidatedParams sqrt_figure_model() {
    AffineParams p;
    p.state_space = StateSpace::NonnegativeReals;
    p.alpha = 0.125;
    p.b = 0.03;
    p.beta = -0.5;
    return ValidatedParams::validate(p);
}

ValidatedParams gaussian_model(double lambda, double theta, double sigma) {
    AffineParams p;
    p.state_space = StateSpace::Reals;
    p.a = sigma * sigma / 2.0;
    p.b = lambda * theta;
    p.beta = -lambda;
    return ValidatedParams::validate(p);
}

ValidatedParams ou_jump_model(double lambda, double k, double theta) {
    AffineParams p;
    p.state_space = StateSpace::NonnegativeReals;
    p.beta = -lambda;
    p.m_jumps = CompoundPoissonExp{lambda * k, 1.0 / theta};
    return ValidatedParams::validate(p);
}

ValidatedParams deterministic_model(double b, double beta) {
    AffineParams p;
    p.state_space = StateSpace::NonnegativeReals;
    p.b = b;
    p.beta = beta;
    return ValidatedParams::validate(p);
}

}  // namespace

TEST_CASE("square-root model boundaries match the closed forms") {
    const auto p = sqrt_figure_model();
    const ShapeBoundaries sb = affine::shape_boundaries(p);
    const double a = 0.5, theta = 0.06, sigma = 0.5;
    const double g = std::sqrt(a * a + 2.0 * sigma * sigma);
    CHECK(sb.lambda == doctest::Approx((a + g) / 2.0).epsilon(1e-12));
    CHECK(sb.b_norm == doctest::Approx(a * theta / g).epsilon(1e-12));
    CHECK(sb.b_asymp ==
          doctest::Approx(2.0 * a * theta / (a + g)).epsilon(1e-12));
    CHECK(sb.b_inv == doctest::Approx(theta).epsilon(1e-12));
}

TEST_CASE("Gaussian and OU-jump boundaries match the closed forms") {
    const ShapeBoundaries g = affine::shape_boundaries(gaussian_model(0.5, 0.05, 0.1));
    CHECK(g.b_norm == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(g.b_asymp == doctest::Approx(0.03).epsilon(1e-12));
    CHECK(g.b_inv == doctest::Approx(0.05).epsilon(1e-12));

    const ShapeBoundaries j = affine::shape_boundaries(ou_jump_model(1.0, 2.0, 0.02));
    const double s = 1.0 / 0.02 + 1.0;
    CHECK(j.b_inv == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(j.b_asymp == doctest::Approx(2.0 / s).epsilon(1e-12));
    CHECK(j.b_norm == doctest::Approx(100.0 / (s * s)).epsilon(1e-12));
}

TEST_CASE("classification thresholds follow the weak inequalities") {
    const auto p = sqrt_figure_model();
    const ShapeBoundaries sb = affine::shape_boundaries(p);

    CHECK(affine::classify(p, 0.03).kind == ShapeKind::Normal);
    CHECK(affine::classify(p, 0.042).kind == ShapeKind::Humped);
    CHECK(affine::classify(p, 0.07).kind == ShapeKind::Inverse);
    CHECK(affine::classify(p, sb.b_norm).kind == ShapeKind::Normal);
    CHECK(affine::classify(p, sb.b_inv).kind == ShapeKind::Inverse);

    const double gap = sb.b_inv - sb.b_norm;
    CHECK(affine::classify(p, sb.b_norm + 1e-4 * gap).kind == ShapeKind::Humped);
    CHECK(affine::classify(p, sb.b_inv - 1e-4 * gap).kind == ShapeKind::Humped);
}

TEST_CASE("hump location and height match an independent derivation") {
    // At the forward maximum, F'(B) + r R'(B) = 0.  For the square-root
    // model this is linear in B, so x* and f(x*) have elementary values.
    const auto p = sqrt_figure_model();
    const double r = 0.042;
    const CurveShape shape = affine::classify(p, r);
    REQUIRE(shape.kind == ShapeKind::Humped);

    const double a = 0.5, sigma = 0.5, g = std::sqrt(a * a + 2.0 * sigma * sigma);
    const double b_at_max = -(0.03 + r * (-a)) / (r * sigma * sigma);
    const double e = -2.0 * g * b_at_max / (b_at_max * (g + a) + 2.0);
    const double x_star = std::log1p(e) / g;
    CHECK(shape.forward_max_x == doctest::Approx(x_star).epsilon(1e-7));
    CHECK(shape.forward_max_value ==
          doctest::Approx(0.04585714285714286).epsilon(1e-10));

    // the forward curve really does rise before x* and fall after it
    const auto ts = affine::solve_term_structure(p, 10.0);
    const double before = affine::forward_rate(ts, r, shape.forward_max_x - 0.05);
    const double at = affine::forward_rate(ts, r, shape.forward_max_x);
    const double after = affine::forward_rate(ts, r, shape.forward_max_x + 0.05);
    CHECK(before < at);
    CHECK(after < at);
}

TEST_CASE("yield maximum sits beyond the forward maximum and below it in value") {
    const auto p = sqrt_figure_model();
    const double r = 0.042;
    const CurveShape shape = affine::classify(p, r);
    const auto ts = affine::solve_term_structure(p, 25.0);
    const affine::YieldMax ym = affine::yield_curve_max(ts, r);
    CHECK(ym.x > shape.forward_max_x);
    CHECK(ym.value < shape.forward_max_value);
    CHECK(ym.value > r);
    CHECK(affine::yield(ts, r, ym.x - 0.1) < ym.value);
    CHECK(affine::yield(ts, r, ym.x + 0.1) < ym.value);
}

TEST_CASE("deterministic drift classifies flat exactly at -b/beta") {
    const auto p = deterministic_model(0.02, -0.5);
    CHECK(affine::classify(p, 0.04).kind == ShapeKind::Flat);
    CHECK(affine::classify(p, 0.04 * (1.0 + 5e-15)).kind == ShapeKind::Flat);
    CHECK(affine::classify(p, 0.03).kind == ShapeKind::Normal);
    CHECK(affine::classify(p, 0.05).kind == ShapeKind::Inverse);
    CHECK(affine::classify(p, 0.04 + 1e-10).kind == ShapeKind::Inverse);

    const ShapeBoundaries sb = affine::shape_boundaries(p);
    CHECK(sb.b_norm == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(sb.b_asymp == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(sb.b_inv == doctest::Approx(0.04).epsilon(1e-12));
}

TEST_CASE("degenerate and zero-lambda inputs are refused") {
    AffineParams raw;
    raw.state_space = StateSpace::NonnegativeReals;
    raw.alpha = 0.1;
    raw.beta = -0.5;
    const auto degenerate = ValidatedParams::validate(raw);
    CHECK_THROWS_AS((void)affine::classify(degenerate, 0.03), affine::DegenerateF);

    AffineParams flat0;
    flat0.state_space = StateSpace::NonnegativeReals;
    flat0.b = 0.02;
    const auto lambda_zero = ValidatedParams::validate(flat0);
    CHECK_THROWS_AS((void)affine::shape_boundaries(lambda_zero), affine::LambdaZero);
    CHECK_THROWS_AS((void)affine::classify(lambda_zero, 0.03), affine::LambdaZero);

    const auto p = sqrt_figure_model();
    CHECK_THROWS_AS((void)affine::classify(p, -0.01), affine::DomainError);
    CHECK_THROWS_AS((void)affine::b_asymp_lambda_zero(p, 0.03), affine::DomainError);
}

TEST_CASE("asymptotic yield with zero quasi-mean-reversion") {
    const double inf = std::numeric_limits<double>::infinity();

    // quadratic growth of F pushes long yields to -infinity
    AffineParams quad;
    quad.state_space = StateSpace::Reals;
    quad.a = 0.005;
    quad.b = 0.01;
    const auto pq = ValidatedParams::validate(quad);
    CHECK(affine::b_asymp_lambda_zero(pq, 0.02) == -inf);

    // dominant positive linear part pushes them to +infinity
    AffineParams lin;
    lin.state_space = StateSpace::NonnegativeReals;
    lin.b = 0.02;
    const auto pl = ValidatedParams::validate(lin);
    CHECK(affine::b_asymp_lambda_zero(pl, 0.03) == inf);

    // dominant negative linear part (possible only for negative rates on
    // the full line) pushes them to -infinity
    AffineParams neg;
    neg.state_space = StateSpace::Reals;
    neg.b = 0.01;
    neg.beta = 0.5;
    const auto pn = ValidatedParams::validate(neg);
    CHECK(affine::b_asymp_lambda_zero(pn, -0.1) == -inf);

    // balanced case: both tails bounded, finite limit
    AffineParams bounded;
    bounded.state_space = StateSpace::NonnegativeReals;
    bounded.m_jumps = CompoundPoissonExp{0.1, 5.0};
    bounded.mu_jumps = CompoundPoissonExp{0.2, 7.0};
    const auto probe = ValidatedParams::validate(bounded);
    bounded.beta = bounded.beta - probe.beta_zero();
    const auto pb = ValidatedParams::validate(bounded);
    REQUIRE(pb.quasi_mean_reversion() == 0.0);
    const double r = 0.03;
    const double value = affine::b_asymp_lambda_zero(pb, r);
    const double u = -1e8;
    const double direct = -pb.F(u) + r * (1.0 - pb.R(u));
    CHECK(value == doctest::Approx(direct).epsilon(1e-5));
    CHECK(value == doctest::Approx(r + 0.1 + r * 0.2).epsilon(1e-12));
}

TEST_CASE("random nonlinear models nest their boundaries strictly") {
    std::mt19937_64 rng(512u);
    for (int i = 0; i < 30; ++i) {
        const auto p = ValidatedParams::validate(testsupport::random_model(rng));
        const ShapeBoundaries sb = affine::shape_boundaries(p);
        CHECK(sb.b_norm < sb.b_asymp);
        CHECK(sb.b_asymp < sb.b_inv);
    }
}

TEST_CASE("the midpoint of the hump interval always classifies humped") {
    std::mt19937_64 rng(513u);
    for (int i = 0; i < 20; ++i) {
        const auto p = ValidatedParams::validate(testsupport::random_model(rng));
        const ShapeBoundaries sb = affine::shape_boundaries(p);
        const double r =
            0.5 * (sb.b_norm + std::min(sb.b_inv, sb.b_norm + 1.0));
        const CurveShape shape = affine::classify(p, r);
        CHECK(shape.kind == ShapeKind::Humped);
        CHECK(shape.forward_max_x > 0.0);
        CHECK(std::isfinite(shape.forward_max_value));
    }
}
