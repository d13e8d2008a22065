#pragma once

#include <cmath>
#include <optional>

#include "affine/errors.hpp"

namespace affine {

// State space of the short-rate process: the nonnegative half-line or the
// full real line.  Admissibility constraints differ between the two.
enum class StateSpace { NonnegativeReals, Reals };

// Compound Poisson jumps with exponentially distributed heights.
// jump_rate is the exponential rate; the mean jump size is 1/jump_rate.
struct CompoundPoissonExp {
    double intensity = 0.0;
    double jump_rate = 1.0;
};

using JumpSpec = std::optional<CompoundPoissonExp>;

// Raw parameters of a conservative affine one-factor short-rate model.
// The transition kernel has exponent phi(t,u) + x psi(t,u) where phi, psi
// solve generalized Riccati equations driven by
//
//   F(u) = a u^2 + b u + int(e^{u z} - 1 - u hF(z)) m(dz)     (state-independent)
//   R(u) = alpha u^2 + beta u + int(e^{u z} - 1 - u hR(z)) mu(dz)  (state-proportional)
//
// On the half-line the truncation hF vanishes and hR(z) = z/(1+z^2); on the
// full line the roles are swapped and the state-proportional part must be
// linear (alpha = 0, mu absent).
struct AffineParams {
    StateSpace state_space = StateSpace::NonnegativeReals;
    double a = 0.0;      // state-independent diffusion
    double alpha = 0.0;  // state-proportional diffusion
    double b = 0.0;      // state-independent drift
    double beta = 0.0;   // state-proportional drift
    JumpSpec m_jumps;    // state-independent jumps
    JumpSpec mu_jumps;   // state-proportional jumps
};

// Admissibility-checked parameter set with the derived quantities every
// consumer needs: truncation compensators (by adaptive quadrature, cached),
// beta_zero, and the quasi-mean-reversion lambda.
class ValidatedParams {
public:
    // Throws AdmissibilityViolation / ConditionViolation on bad input.
    // Jump specs with zero intensity are normalized to "absent" so that
    // structural tests (linearity, degeneracy) see them as empty measures.
    static ValidatedParams validate(const AffineParams& p);

    const AffineParams& raw() const { return p_; }
    StateSpace state_space() const { return p_.state_space; }

    // F evaluated at real u; +infinity at and beyond the m-jump pole.
    double F(double u) const;
    // R evaluated at real u; +infinity at and beyond the mu-jump pole.
    double R(double u) const;
    // Derivatives; DomainError at or beyond the respective pole.
    double F_prime(double u) const;
    double R_prime(double u) const;

    // Largest u below which F stays finite (+infinity without m-jumps).
    double F_domain_bound() const;

    // Expansion F(u) = quadratic u^2 + linear u + bounded(u) where
    // bounded(u) -> bounded_limit as u -> -infinity; same for R.  Drives the
    // analytic u -> -infinity limits in the lambda = 0 long-yield formula.
    struct AsymptoticForm {
        double quadratic, linear, bounded_limit;
    };
    AsymptoticForm F_asymptotic() const;
    AsymptoticForm R_asymptotic() const;

    // beta with the R-side truncation compensator removed; decides, together
    // with alpha, whether quasi-mean-reversion is positive.
    double beta_zero() const { return beta_zero_; }

    // Unique lambda > 0 with R(-1/lambda) = 1, or 0 when none exists.
    double quasi_mean_reversion() const { return lambda_; }

    bool contains_rate(double r) const {
        if (!std::isfinite(r)) return false;
        return p_.state_space == StateSpace::Reals || r >= 0.0;
    }
    // F(u) = b u structurally (no diffusion, no jumps on the F side).
    bool linear_F() const { return p_.a == 0.0 && !p_.m_jumps; }
    bool linear_R() const { return p_.alpha == 0.0 && !p_.mu_jumps; }

private:
    ValidatedParams() = default;

    AffineParams p_;
    double m_compensator_ = 0.0;   // int hF dm when the F-side truncation is active
    double mu_compensator_ = 0.0;  // int hR dmu when the R-side truncation is active
    double beta_zero_ = 0.0;
    double lambda_ = 0.0;
};

}  // namespace affine
