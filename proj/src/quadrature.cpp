#include "affine/quadrature.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "affine/errors.hpp"

namespace affine {
namespace {

// 15-point Kronrod abscissae on [-1, 1]; odd indices are the embedded
// 7-point Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double kronrod = kWgk[7] * f(c);
    double gauss = kWg[3] * f(c);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        kronrod += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kronrod *= h;
    gauss *= h;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol) {
    if (a == b) return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    if (sign < 0.0) std::swap(a, b);

    std::vector<Panel> work{evaluate_panel(f, a, b)};
    double total = work.front().value;
    double total_err = work.front().error;
    for (int round = 0; round < 60 && total_err > abs_tol; ++round) {
        std::vector<Panel> next;
        next.reserve(2 * work.size());
        bool split_any = false;
        for (const Panel& p : work) {
            // error budget proportional to panel width; panels at rounding
            // width are accepted as-is
            const double local_tol = abs_tol * (p.b - p.a) / (b - a);
            const double width_floor =
                std::numeric_limits<double>::epsilon() *
                (std::abs(p.a) + std::abs(p.b) + 1.0);
            if (p.error <= local_tol || p.b - p.a <= width_floor) {
                next.push_back(p);
                continue;
            }
            const double mid = 0.5 * (p.a + p.b);
            next.push_back(evaluate_panel(f, p.a, mid));
            next.push_back(evaluate_panel(f, mid, p.b));
            split_any = true;
        }
        work.swap(next);
        total = 0.0;
        total_err = 0.0;
        for (const Panel& p : work) {
            total += p.value;
            total_err += p.error;
        }
        if (!split_any) break;
        if (work.size() > 20000)
            throw Error("integrate_adaptive: panel budget exhausted");
    }
    if (total_err > 64.0 * abs_tol)
        throw Error("integrate_adaptive: requested tolerance not reached");
    return sign * total;
}

}  // namespace affine
