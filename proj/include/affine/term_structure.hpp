#pragma once

#include <vector>

#include "affine/ode.hpp"
#include "affine/params.hpp"

namespace affine {

// Dense solution of the bond-price coefficient system on [0, x_max]:
//
//   dA/dx = F(B(x)),  A(0) = 0
//   dB/dx = R(B(x)) - 1,  B(0) = 0
//
// so that the zero-coupon bond price is P(r, x) = exp(A(x) + r B(x)).
class TermStructure {
public:
    TermStructure(ValidatedParams params, DenseSolution sol, double x_max)
        : params_(std::move(params)), sol_(std::move(sol)), x_max_(x_max) {}

    double A(double x) const { return sol_.value(x, 1); }
    double B(double x) const { return sol_.value(x, 0); }
    double x_max() const { return x_max_; }
    const ValidatedParams& params() const { return params_; }

private:
    ValidatedParams params_;
    DenseSolution sol_;
    double x_max_;
};

TermStructure solve_term_structure(const ValidatedParams& params, double x_max,
                                   OdeTolerances tol = {});

// P(r, x); requires r in the state space and x in [0, x_max].
double bond_price(const TermStructure& ts, double r, double x);

// Continuously compounded yield -log P / x, extended by continuity to r at
// x = 0.
double yield(const TermStructure& ts, double r, double x);

// Instantaneous forward rate -d(log P)/dx, evaluated through the Riccati
// right-hand side as -F(B(x)) - r (R(B(x)) - 1); equals r at x = 0.
double forward_rate(const TermStructure& ts, double r, double x);

// Dense solutions of the transition-exponent system for each u in u_grid:
//
//   dpsi/dt = R(psi),  psi(0, u) = u
//   dphi/dt = F(psi),  phi(0, u) = 0
//
// giving the conditional moment generating function
// E[e^{u r_t} | r_0 = x] = exp(phi(t, u) + x psi(t, u)).
class TransitionExponents {
public:
    TransitionExponents(std::vector<double> u_grid,
                        std::vector<DenseSolution> sols, double t_max)
        : u_grid_(std::move(u_grid)), sols_(std::move(sols)), t_max_(t_max) {}

    double phi(double t, double u) const { return lookup(u).value(t, 1); }
    double psi(double t, double u) const { return lookup(u).value(t, 0); }
    double t_max() const { return t_max_; }
    const std::vector<double>& u_grid() const { return u_grid_; }

private:
    const DenseSolution& lookup(double u) const;

    std::vector<double> u_grid_;
    std::vector<DenseSolution> sols_;
    double t_max_;
};

TransitionExponents solve_transition_exponents(const ValidatedParams& params,
                                               double t_max,
                                               const std::vector<double>& u_grid,
                                               OdeTolerances tol = {});

}  // namespace affine
