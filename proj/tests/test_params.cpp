#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "affine/params.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using affine::AffineParams;
using affine::CompoundPoissonExp;
using affine::StateSpace;
using affine::ValidatedParams;

namespace {

AffineParams full_line(double a, double b, double beta) {
    AffineParams p;
    p.state_space = StateSpace::Reals;
    p.a = a;
    p.b = b;
    p.beta = beta;
    return p;
}

AffineParams half_line(double alpha, double b, double beta) {
    AffineParams p;
    p.state_space = StateSpace::NonnegativeReals;
    p.alpha = alpha;
    p.b = b;
    p.beta = beta;
    return p;
}

}  // namespace

TEST_CASE("linear and quadratic coefficients evaluate exactly") {
    const auto ou = ValidatedParams::validate(full_line(0.005, 0.025, -0.5));
    CHECK(ou.F(-1.0) == doctest::Approx(-0.02).epsilon(1e-14));
    CHECK(ou.R(-1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ou.F(0.0) == 0.0);
    CHECK(ou.R(0.0) == 0.0);
    CHECK(ou.F_prime(0.0) == doctest::Approx(0.025).epsilon(1e-14));
    CHECK(ou.R_prime(0.0) == doctest::Approx(-0.5).epsilon(1e-14));

    const auto sqrt_model = ValidatedParams::validate(half_line(0.125, 0.03, -0.5));
    CHECK(sqrt_model.R(-1.0) == doctest::Approx(0.625).epsilon(1e-14));
    CHECK(sqrt_model.F(-1.0) == doctest::Approx(-0.03).epsilon(1e-14));
    CHECK(sqrt_model.R_prime(0.0) == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("exponential jump part of F evaluates in closed form") {
    AffineParams raw = half_line(0.125, 0.03, -0.5);
    raw.m_jumps = CompoundPoissonExp{0.1, 10.0};
    const auto p = ValidatedParams::validate(raw);
    // c u / (rate - u) at u = -1
    CHECK(p.F(-1.0) == doctest::Approx(-0.03 - 0.1 / 11.0).epsilon(1e-14));
    CHECK(p.F_prime(0.0) == doctest::Approx(0.04).epsilon(1e-14));
    // at and past the pole the integral diverges
    CHECK(p.F(10.0) == std::numeric_limits<double>::infinity());
    CHECK(p.F(12.0) == std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS((void)p.F_prime(10.0), affine::DomainError);
}

TEST_CASE("state-proportional truncation compensator matches independent quadrature") {
    AffineParams raw = half_line(0.0, 0.02, 0.0);
    raw.mu_jumps = CompoundPoissonExp{1.0, 1.0};
    const auto p = ValidatedParams::validate(raw);

    const double oracle = testsupport::adaptive_simpson(
        [](double x) { return x / (1.0 + x * x) * std::exp(-x); }, 0.0, 40.0,
        1e-12);
    CHECK(p.beta_zero() == doctest::Approx(-oracle).epsilon(1e-8));

    // beta_zero < 0, so the quasi-mean-reversion is positive and solves
    // R(-1/lambda) = 1
    const double lambda = p.quasi_mean_reversion();
    CHECK(lambda > 0.0);
    CHECK(std::abs(p.R(-1.0 / lambda) - 1.0) <= 1e-10);

    // the compensator makes R grow linearly toward -infinity
    CHECK(p.R(-1000.0) > 300.0);
}

TEST_CASE("quasi-mean-reversion closed cases") {
    const auto ou = ValidatedParams::validate(full_line(0.005, 0.025, -0.5));
    CHECK(ou.quasi_mean_reversion() == doctest::Approx(0.5).epsilon(1e-12));

    const auto sqrt_model = ValidatedParams::validate(half_line(0.125, 0.03, -0.5));
    CHECK(sqrt_model.quasi_mean_reversion() ==
          doctest::Approx(0.6830127018922193).epsilon(1e-12));

    // R identically zero: no positive solution
    const auto drift_only = ValidatedParams::validate(half_line(0.0, 0.02, 0.0));
    CHECK(drift_only.quasi_mean_reversion() == 0.0);

    // positive drift slope: the existence criterion fails outright
    const auto repelling = ValidatedParams::validate(half_line(0.0, 0.01, 1.0));
    CHECK(repelling.quasi_mean_reversion() == 0.0);
    CHECK(repelling.beta_zero() == 1.0);
}

TEST_CASE("admissibility violations are rejected with the offending field") {
    AffineParams p = half_line(0.1, 0.02, -0.5);
    p.a = 0.01;
    CHECK_THROWS_AS((void)ValidatedParams::validate(p), affine::AdmissibilityViolation);

    p = half_line(-0.1, 0.02, -0.5);
    CHECK_THROWS_AS((void)ValidatedParams::validate(p), affine::AdmissibilityViolation);

    p = half_line(0.1, -0.02, -0.5);
    CHECK_THROWS_AS((void)ValidatedParams::validate(p), affine::AdmissibilityViolation);

    p = full_line(0.005, 0.02, -0.5);
    p.alpha = 0.1;
    CHECK_THROWS_AS((void)ValidatedParams::validate(p), affine::AdmissibilityViolation);

    p = full_line(0.005, 0.02, -0.5);
    p.mu_jumps = CompoundPoissonExp{0.1, 10.0};
    CHECK_THROWS_AS((void)ValidatedParams::validate(p), affine::AdmissibilityViolation);

    p = full_line(-0.005, 0.02, -0.5);
    CHECK_THROWS_AS((void)ValidatedParams::validate(p), affine::AdmissibilityViolation);

    p = half_line(0.1, 0.02, -0.5);
    p.m_jumps = CompoundPoissonExp{-0.1, 10.0};
    CHECK_THROWS_AS((void)ValidatedParams::validate(p), affine::AdmissibilityViolation);

    p = half_line(0.1, 0.02, -0.5);
    p.m_jumps = CompoundPoissonExp{0.1, 0.0};
    CHECK_THROWS_AS((void)ValidatedParams::validate(p), affine::AdmissibilityViolation);

    p = half_line(0.1, std::nan(""), -0.5);
    CHECK_THROWS_AS((void)ValidatedParams::validate(p), affine::AdmissibilityViolation);
}

TEST_CASE("zero-intensity jump specs normalize away") {
    AffineParams raw = half_line(0.0, 0.02, -0.5);
    raw.m_jumps = CompoundPoissonExp{0.0, 5.0};
    const auto p = ValidatedParams::validate(raw);
    CHECK(p.linear_F());
    CHECK(p.F(-3.0) == doctest::Approx(-0.06).epsilon(1e-14));
}

TEST_CASE("F and R are midpoint convex, strictly so when nonlinear") {
    std::mt19937_64 rng(20260816u);
    std::uniform_real_distribution<double> unif(-30.0, 0.0);
    for (int i = 0; i < 10; ++i) {
        const AffineParams raw = testsupport::random_model(rng);
        const auto p = ValidatedParams::validate(raw);
        const bool f_nonlinear = raw.a > 0.0 || raw.m_jumps.has_value();
        const bool r_nonlinear = raw.alpha > 0.0 || raw.mu_jumps.has_value();
        for (int j = 0; j < 40; ++j) {
            double u = unif(rng);
            double v = unif(rng);
            if (std::abs(u - v) < 0.5) v = u - 0.5;
            const double mid = 0.5 * (u + v);
            const double f_gap = 0.5 * (p.F(u) + p.F(v)) - p.F(mid);
            const double r_gap = 0.5 * (p.R(u) + p.R(v)) - p.R(mid);
            CHECK(f_gap >= -1e-12);
            CHECK(r_gap >= -1e-12);
            if (f_nonlinear) CHECK(f_gap > 0.0);
            if (r_nonlinear) CHECK(r_gap > 0.0);
        }
    }
}

TEST_CASE("asymptotic forms describe the tails of F and R") {
    std::mt19937_64 rng(77u);
    const double u = -1e7;
    // extracting the bounded residual subtracts the huge quadratic term, so
    // its check has to absorb the cancellation noise that costs
    auto check_tail = [&](double value, const ValidatedParams::AsymptoticForm& a) {
        CHECK(value / (u * u) ==
              doctest::Approx(a.quadratic).epsilon(1e-5).scale(1.0));
        CHECK((value - a.quadratic * u * u) / u ==
              doctest::Approx(a.linear).epsilon(1e-6).scale(1.0));
        const double residual = value - a.quadratic * u * u - a.linear * u;
        const double noise =
            std::max(1e-5, std::abs(a.quadratic) * u * u * 2e-15);
        CHECK(std::abs(residual - a.bounded_limit) <= noise);
    };
    for (int i = 0; i < 10; ++i) {
        const auto p = ValidatedParams::validate(testsupport::random_model(rng));
        check_tail(p.F(u), p.F_asymptotic());
        check_tail(p.R(u), p.R_asymptotic());
    }
}

TEST_CASE("contains_rate respects the state space") {
    const auto half = ValidatedParams::validate(half_line(0.1, 0.02, -0.5));
    CHECK(half.contains_rate(0.0));
    CHECK(half.contains_rate(0.04));
    CHECK_FALSE(half.contains_rate(-0.01));

    const auto full = ValidatedParams::validate(full_line(0.005, 0.02, -0.5));
    CHECK(full.contains_rate(-0.01));
    CHECK_FALSE(full.contains_rate(std::nan("")));
}

TEST_CASE("whenever lambda is positive it solves R(-1/lambda) = 1") {
    std::mt19937_64 rng(4242u);
    for (int i = 0; i < 50; ++i) {
        const auto p = ValidatedParams::validate(testsupport::random_model(rng));
        const double lambda = p.quasi_mean_reversion();
        REQUIRE(lambda > 0.0);
        CHECK(std::abs(p.R(-1.0 / lambda) - 1.0) <= 1e-10);
    }
}
