#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "affine/errors.hpp"

namespace affine {

// Bracketed scalar root finder: bisection with secant acceleration.
// Keeps a guaranteed bracket [lo, hi] with f(lo)*f(hi) <= 0, tries a secant
// step each iteration and falls back to the midpoint whenever the secant
// lands outside the bracket or the same side is hit twice in a row.
// Converges to |hi - lo| <= rel_tol * max(|lo|, |hi|) + abs_tol.
template <class F>
double find_root(F&& f, double lo, double hi, double flo, double fhi,
                 double rel_tol = 1e-14, double abs_tol = 0.0) {
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw Error("find_root: root not bracketed");

    bool force_bisect = false;
    int last_side = 0;
    for (int it = 0; it < 200; ++it) {
        const double width = hi - lo;
        const double tol =
            rel_tol * std::max(std::abs(lo), std::abs(hi)) + abs_tol +
            4.0 * std::numeric_limits<double>::epsilon() * std::abs(lo);
        if (width <= tol) break;

        double x;
        if (!force_bisect && fhi != flo) {
            x = hi - fhi * (hi - lo) / (fhi - flo);
            const double margin = 0.01 * width;
            if (!(x > lo + margin && x < hi - margin)) x = 0.5 * (lo + hi);
        } else {
            x = 0.5 * (lo + hi);
        }

        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (flo > 0.0)) {
            lo = x;
            flo = fx;
            force_bisect = (last_side == -1);
            last_side = -1;
        } else {
            hi = x;
            fhi = fx;
            force_bisect = (last_side == +1);
            last_side = +1;
        }
    }
    return 0.5 * (lo + hi);
}

template <class F>
double find_root(F&& f, double lo, double hi, double rel_tol = 1e-14,
                 double abs_tol = 0.0) {
    const double flo = f(lo);
    const double fhi = f(hi);
    return find_root(std::forward<F>(f), lo, hi, flo, fhi, rel_tol, abs_tol);
}

// Golden-section maximization of a unimodal function on [lo, hi].
// Returns the abscissa of the maximum to |err| <= tol.
template <class F>
double golden_section_max(F&& f, double lo, double hi, double tol = 1e-10) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace affine
