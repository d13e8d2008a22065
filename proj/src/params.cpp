#include "affine/params.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "affine/quadrature.hpp"
#include "affine/rootfind.hpp"

namespace affine {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double v, const char* field) {
    if (!std::isfinite(v))
        throw AdmissibilityViolation(field, "must be a finite number");
}

void check_jump_spec(const JumpSpec& j, const std::string& name) {
    if (!j) return;
    if (!std::isfinite(j->intensity) || j->intensity < 0.0)
        throw AdmissibilityViolation(name + ".intensity", "must be finite and >= 0");
    if (!std::isfinite(j->jump_rate) || j->jump_rate <= 0.0)
        throw AdmissibilityViolation(name + ".jump_rate", "must be finite and > 0");
}

// int_0^infty z/(1+z^2) rate e^{-rate z} dz, the truncation mass of an
// exponential jump law.  Substituting t = rate*z gives an integrand that
// decays like e^{-t}; truncating at t = 40 leaves a tail below 4e-18.
double truncation_mass(double rate) {
    return integrate_adaptive(
        [rate](double t) {
            return rate * t / (rate * rate + t * t) * std::exp(-t);
        },
        0.0, 40.0, 1e-12);
}

// Contribution of exponential jumps to F or R without truncation:
// int (e^{uz} - 1) c rate e^{-rate z} dz = c u / (rate - u) for u < rate.
double jump_integral(const CompoundPoissonExp& j, double u) {
    if (u >= j.jump_rate) return kInf;
    return j.intensity * u / (j.jump_rate - u);
}

double jump_integral_derivative(const CompoundPoissonExp& j, double u) {
    const double d = j.jump_rate - u;
    return j.intensity * j.jump_rate / (d * d);
}

}  // namespace

ValidatedParams ValidatedParams::validate(const AffineParams& p) {
    require_finite(p.a, "a");
    require_finite(p.alpha, "alpha");
    require_finite(p.b, "b");
    require_finite(p.beta, "beta");
    check_jump_spec(p.m_jumps, "m_jumps");
    check_jump_spec(p.mu_jumps, "mu_jumps");

    ValidatedParams v;
    v.p_ = p;
    if (v.p_.m_jumps && v.p_.m_jumps->intensity == 0.0) v.p_.m_jumps.reset();
    if (v.p_.mu_jumps && v.p_.mu_jumps->intensity == 0.0) v.p_.mu_jumps.reset();

    if (p.state_space == StateSpace::NonnegativeReals) {
        if (p.a != 0.0)
            throw AdmissibilityViolation(
                "a", "state-independent diffusion must vanish on the half-line");
        if (p.alpha < 0.0) throw AdmissibilityViolation("alpha", "must be >= 0");
        if (p.b < 0.0)
            throw AdmissibilityViolation(
                "b", "state-independent drift must be >= 0 on the half-line");
    } else {
        if (p.alpha != 0.0)
            throw AdmissibilityViolation(
                "alpha", "state-proportional diffusion requires the half-line");
        if (v.p_.mu_jumps)
            throw AdmissibilityViolation(
                "mu_jumps", "state-proportional jumps require the half-line");
        if (p.a < 0.0) throw AdmissibilityViolation("a", "must be >= 0");
        // On the full line F must be finite on (1/beta, 0] when beta < 0 and
        // on all of (-infty, 0] otherwise.  Positive exponential jumps keep F
        // finite on (-infty, jump_rate), so the check is structural.
        const double required_lo = p.beta < 0.0 ? 1.0 / p.beta : -kInf;
        if (!(required_lo < v.F_domain_bound()))
            throw ConditionViolation(
                "state-independent exponent not finite on the required interval");
    }

    // Truncation compensators: hF is active on the full line, hR on the
    // half-line.  Cached once; both vanish without the matching jump part.
    if (p.state_space == StateSpace::Reals && v.p_.m_jumps)
        v.m_compensator_ =
            v.p_.m_jumps->intensity * truncation_mass(v.p_.m_jumps->jump_rate);
    if (p.state_space == StateSpace::NonnegativeReals && v.p_.mu_jumps)
        v.mu_compensator_ =
            v.p_.mu_jumps->intensity * truncation_mass(v.p_.mu_jumps->jump_rate);

    v.beta_zero_ = p.beta - v.mu_compensator_;

    // lambda > 0 iff alpha > 0 or beta_zero < 0; in that case R(u) grows to
    // +infinity as u -> -infinity, so R(u*) = 1 has a unique negative root
    // (R is convex with R(0) = 0).
    if (v.p_.alpha > 0.0 || v.beta_zero_ < 0.0) {
        auto r_minus_one = [&v](double u) { return v.R(u) - 1.0; };
        double hi = 0.0;
        double lo = -1.0;
        while (v.R(lo) < 1.0) {
            hi = lo;
            lo *= 2.0;
            if (lo < -1e18)
                throw Error("quasi-mean-reversion bracket search failed");
        }
        const double u_star = find_root(r_minus_one, lo, hi, 1e-14);
        v.lambda_ = -1.0 / u_star;
    }
    return v;
}

double ValidatedParams::F(double u) const {
    double value = p_.a * u * u + p_.b * u;
    if (p_.m_jumps) {
        const double ji = jump_integral(*p_.m_jumps, u);
        if (ji == kInf) return kInf;
        value += ji - u * m_compensator_;
    }
    return value;
}

double ValidatedParams::R(double u) const {
    double value = p_.alpha * u * u + p_.beta * u;
    if (p_.mu_jumps) {
        const double ji = jump_integral(*p_.mu_jumps, u);
        if (ji == kInf) return kInf;
        value += ji - u * mu_compensator_;
    }
    return value;
}

double ValidatedParams::F_prime(double u) const {
    double value = 2.0 * p_.a * u + p_.b;
    if (p_.m_jumps) {
        if (u >= p_.m_jumps->jump_rate)
            throw DomainError("F_prime: argument at or beyond the jump pole");
        value += jump_integral_derivative(*p_.m_jumps, u) - m_compensator_;
    }
    return value;
}

double ValidatedParams::R_prime(double u) const {
    double value = 2.0 * p_.alpha * u + p_.beta;
    if (p_.mu_jumps) {
        if (u >= p_.mu_jumps->jump_rate)
            throw DomainError("R_prime: argument at or beyond the jump pole");
        value += jump_integral_derivative(*p_.mu_jumps, u) - mu_compensator_;
    }
    return value;
}

double ValidatedParams::F_domain_bound() const {
    return p_.m_jumps ? p_.m_jumps->jump_rate : kInf;
}

ValidatedParams::AsymptoticForm ValidatedParams::F_asymptotic() const {
    // c u/(rate - u) -> -c as u -> -infinity; the compensator is linear in u
    return {p_.a, p_.b - m_compensator_,
            p_.m_jumps ? -p_.m_jumps->intensity : 0.0};
}

ValidatedParams::AsymptoticForm ValidatedParams::R_asymptotic() const {
    return {p_.alpha, beta_zero_,
            p_.mu_jumps ? -p_.mu_jumps->intensity : 0.0};
}

}  // namespace affine
