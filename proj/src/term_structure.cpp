#include "affine/term_structure.hpp"

#include <cmath>
#include <utility>

namespace affine {
namespace {

// Shared integration kernel: w' = R(w) + drift_shift, v' = F(w).
// Bond coefficients use drift_shift = -1 with w = B, v = A; transition
// exponents use drift_shift = 0 with w = psi, v = phi.
DenseSolution integrate_pair(const ValidatedParams& p, Vec2 y0, double span,
                             double drift_shift, OdeTolerances tol) {
    auto rhs = [&p, drift_shift](double x, const Vec2& y) -> Vec2 {
        const double dv = p.F(y[0]);
        if (!std::isfinite(dv)) throw FinitenessError(x);
        return {p.R(y[0]) + drift_shift, dv};
    };
    auto curvature = [&p](double, const Vec2& y, const Vec2& dy) -> Vec2 {
        return {p.R_prime(y[0]) * dy[0], p.F_prime(y[0]) * dy[0]};
    };
    return integrate_dense(rhs, curvature, y0, span, tol);
}

void check_query(const ValidatedParams& p, double r, double x, double x_max) {
    if (!p.contains_rate(r))
        throw DomainError("short rate outside the state space");
    if (!(x >= 0.0) || x > x_max * (1.0 + 1e-12))
        throw DomainError("maturity outside [0, x_max]");
}

}  // namespace

TermStructure solve_term_structure(const ValidatedParams& params, double x_max,
                                   OdeTolerances tol) {
    DenseSolution sol = integrate_pair(params, {0.0, 0.0}, x_max, -1.0, tol);
    return TermStructure(params, std::move(sol), x_max);
}

double bond_price(const TermStructure& ts, double r, double x) {
    check_query(ts.params(), r, x, ts.x_max());
    return std::exp(ts.A(x) + r * ts.B(x));
}

double yield(const TermStructure& ts, double r, double x) {
    check_query(ts.params(), r, x, ts.x_max());
    if (x == 0.0) return r;
    return -(ts.A(x) + r * ts.B(x)) / x;
}

double forward_rate(const TermStructure& ts, double r, double x) {
    check_query(ts.params(), r, x, ts.x_max());
    if (x == 0.0) return r;
    const double b = ts.B(x);
    return -ts.params().F(b) - r * (ts.params().R(b) - 1.0);
}

const DenseSolution& TransitionExponents::lookup(double u) const {
    for (std::size_t i = 0; i < u_grid_.size(); ++i) {
        const double g = u_grid_[i];
        if (u == g || std::abs(u - g) <= 1e-12 * std::max(1.0, std::abs(g)))
            return sols_[i];
    }
    throw DomainError("transition exponents: u is not a grid point");
}

TransitionExponents solve_transition_exponents(const ValidatedParams& params,
                                               double t_max,
                                               const std::vector<double>& u_grid,
                                               OdeTolerances tol) {
    std::vector<DenseSolution> sols;
    sols.reserve(u_grid.size());
    for (double u : u_grid) {
        if (u > 0.0)
            throw DomainError("transition exponents: grid entries must be <= 0");
        sols.push_back(integrate_pair(params, {u, 0.0}, t_max, 0.0, tol));
    }
    return TransitionExponents(u_grid, std::move(sols), t_max);
}

}  // namespace affine
