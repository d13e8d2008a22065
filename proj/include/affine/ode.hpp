#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "affine/errors.hpp"

namespace affine {

using Vec2 = std::array<double, 2>;

struct OdeTolerances {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
};

// Dense representation of a 2-component ODE solution on [0, x_max].
// Each accepted step stores value, first and second derivative at its
// endpoints; evaluation interpolates with the two-point quintic Hermite
// polynomial, whose error ~ |y'''''| h^6 / 46080 stays below the integrator
// tolerance at the step sizes the controller selects.
class DenseSolution {
public:
    struct Node {
        double x;
        Vec2 y, dy, d2y;
    };

    void append(const Node& n) { nodes_.push_back(n); }
    void reserve(std::size_t n) { nodes_.reserve(n); }

    double x_max() const { return nodes_.empty() ? 0.0 : nodes_.back().x; }
    const std::vector<Node>& nodes() const { return nodes_; }

    double value(double x, int component) const {
        const Node* left;
        const Node* right;
        locate(x, left, right);
        if (left == right) return left->y[component];

        const double h = right->x - left->x;
        const double t = (x - left->x) / h;
        const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
        const double h0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
        const double h1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
        const double h2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
        const double k0 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
        const double k1 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
        const double k2 = 0.5 * (t3 - 2.0 * t4 + t5);
        const int c = component;
        return left->y[c] * h0 + h * left->dy[c] * h1 + h * h * left->d2y[c] * h2 +
               right->y[c] * k0 + h * right->dy[c] * k1 + h * h * right->d2y[c] * k2;
    }

private:
    void locate(double x, const Node*& left, const Node*& right) const {
        if (nodes_.empty()) throw Error("DenseSolution: empty");
        const double slack =
            1e-12 * (1.0 + std::abs(nodes_.back().x));
        if (x < nodes_.front().x - slack || x > nodes_.back().x + slack)
            throw DomainError("DenseSolution: argument outside solved range");
        x = std::clamp(x, nodes_.front().x, nodes_.back().x);
        auto it = std::upper_bound(
            nodes_.begin(), nodes_.end(), x,
            [](double v, const Node& n) { return v < n.x; });
        if (it == nodes_.begin()) {
            left = right = &nodes_.front();
            return;
        }
        if (it == nodes_.end()) {
            left = right = &nodes_.back();
            return;
        }
        right = &*it;
        left = right - 1;
    }

    std::vector<Node> nodes_;
};

// Adaptive Dormand-Prince 5(4) on a 2-component system with dense output.
// rhs(x, y) -> dy/dx; curvature(x, y, dy) -> d2y/dx2 evaluated analytically.
// The step cap keeps interpolation error bounded in converged regions where
// the error controller would otherwise take arbitrarily large steps.
template <class Rhs, class Curvature>
DenseSolution integrate_dense(Rhs&& rhs, Curvature&& curvature, Vec2 y0,
                              double x_end, OdeTolerances tol = {},
                              double max_step = 0.25) {
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                     a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                     a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                     a65 = -5103.0 / 18656.0;
    constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                     b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                     e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                     e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
    constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                     c5 = 8.0 / 9.0;

    if (!(x_end > 0.0) || !std::isfinite(x_end))
        throw DomainError("integrate_dense: horizon must be positive and finite");

    DenseSolution sol;
    double x = 0.0;
    Vec2 y = y0;
    Vec2 k1 = rhs(x, y);
    sol.append({x, y, k1, curvature(x, y, k1)});

    double h = std::min({max_step, x_end, 1e-2});
    int rejected_in_row = 0;

    while (x < x_end) {
        h = std::min(h, x_end - x);
        if (h < 1e-14 * (1.0 + std::abs(x)))
            throw Error("integrate_dense: step size underflow");

        Vec2 yt;
        auto stage = [&](double frac, const Vec2& incr) {
            for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * incr[i];
            return rhs(x + frac * h, yt);
        };

        Vec2 k2 = stage(c2, {a21 * k1[0], a21 * k1[1]});
        Vec2 k3 = stage(c3, {a31 * k1[0] + a32 * k2[0], a31 * k1[1] + a32 * k2[1]});
        Vec2 k4 = stage(c4, {a41 * k1[0] + a42 * k2[0] + a43 * k3[0],
                             a41 * k1[1] + a42 * k2[1] + a43 * k3[1]});
        Vec2 k5 = stage(c5, {a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0],
                             a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1]});
        Vec2 k6 = stage(1.0, {a61 * k1[0] + a62 * k2[0] + a63 * k3[0] +
                                  a64 * k4[0] + a65 * k5[0],
                              a61 * k1[1] + a62 * k2[1] + a63 * k3[1] +
                                  a64 * k4[1] + a65 * k5[1]});

        Vec2 ynew;
        for (int i = 0; i < 2; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                  b5 * k5[i] + b6 * k6[i]);
        Vec2 k7 = rhs(x + h, ynew);

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                   e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale =
                tol.abs_tol +
                tol.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (ei / scale) * (ei / scale);
        }
        err = std::sqrt(0.5 * err);

        if (err <= 1.0) {
            x += h;
            y = ynew;
            k1 = k7;  // first-same-as-last
            sol.append({x, y, k1, curvature(x, y, k1)});
            const double grow = rejected_in_row > 0 ? 1.0 : 5.0;
            rejected_in_row = 0;
            const double factor = err == 0.0
                                      ? grow
                                      : std::clamp(0.9 * std::pow(err, -0.2),
                                                   0.2, grow);
            h = std::min(h * factor, max_step);
        } else {
            ++rejected_in_row;
            if (rejected_in_row > 50)
                throw Error("integrate_dense: repeated step rejection");
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    return sol;
}

}  // namespace affine
