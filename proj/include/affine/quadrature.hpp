#pragma once

#include <functional>

namespace affine {

// Adaptive Gauss-Kronrod 7-15 integration of f over [a, b] to the given
// absolute tolerance.  The rule is open: endpoints and panel boundaries are
// never evaluated, so removable endpoint singularities are safe as long as
// the integrand object itself patches the limiting value.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol);

}  // namespace affine
