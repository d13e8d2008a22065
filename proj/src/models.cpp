#include "affine/models.hpp"

#include <cmath>

namespace affine {
namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ParameterError(std::string(name) + " must be positive");
}

double cir_gamma(double a, double sigma) {
    return std::sqrt(a * a + 2.0 * sigma * sigma);
}

double check_cgf_arg(double u) {
    if (!std::isfinite(u) || u > 0.0)
        throw DomainError("cgf is defined for u <= 0");
    return u;
}

}  // namespace

std::string model_name(const NamedModel& model) {
    struct Visitor {
        std::string operator()(const Vasicek&) const { return "vasicek"; }
        std::string operator()(const CIR&) const { return "cir"; }
        std::string operator()(const JCIR&) const { return "jcir"; }
        std::string operator()(const GammaOU&) const { return "gamma-ou"; }
    };
    return std::visit(Visitor{}, model);
}

AffineParams to_affine(const NamedModel& model) {
    struct Visitor {
        AffineParams operator()(const Vasicek& m) const {
            require_positive(m.lambda, "lambda");
            require_positive(m.sigma, "sigma");
            if (!std::isfinite(m.theta)) throw ParameterError("theta must be finite");
            AffineParams p;
            p.state_space = StateSpace::Reals;
            p.a = m.sigma * m.sigma / 2.0;
            p.b = m.lambda * m.theta;
            p.beta = -m.lambda;
            return p;
        }
        AffineParams operator()(const CIR& m) const {
            require_positive(m.a, "a");
            require_positive(m.theta, "theta");
            require_positive(m.sigma, "sigma");
            AffineParams p;
            p.state_space = StateSpace::NonnegativeReals;
            p.alpha = m.sigma * m.sigma / 2.0;
            p.b = m.a * m.theta;
            p.beta = -m.a;
            return p;
        }
        AffineParams operator()(const JCIR& m) const {
            require_positive(m.a, "a");
            require_positive(m.theta, "theta");
            require_positive(m.sigma, "sigma");
            require_positive(m.nu, "nu");
            if (!(m.c >= 0.0) || !std::isfinite(m.c))
                throw ParameterError("c must be nonnegative");
            AffineParams p;
            p.state_space = StateSpace::NonnegativeReals;
            p.alpha = m.sigma * m.sigma / 2.0;
            p.b = m.a * m.theta;
            p.beta = -m.a;
            if (m.c > 0.0) p.m_jumps = CompoundPoissonExp{m.c, m.nu};
            return p;
        }
        AffineParams operator()(const GammaOU& m) const {
            require_positive(m.lambda, "lambda");
            require_positive(m.k, "k");
            require_positive(m.theta, "theta");
            AffineParams p;
            p.state_space = StateSpace::NonnegativeReals;
            p.beta = -m.lambda;
            p.m_jumps = CompoundPoissonExp{m.lambda * m.k, 1.0 / m.theta};
            return p;
        }
    };
    return std::visit(Visitor{}, model);
}

ShapeBoundaries closed_form_boundaries(const NamedModel& model) {
    struct Visitor {
        ShapeBoundaries operator()(const Vasicek& m) const {
            const double l = m.lambda, s2 = m.sigma * m.sigma;
            ShapeBoundaries sb;
            sb.lambda = l;
            sb.b_norm = m.theta - s2 / (l * l);
            sb.b_asymp = m.theta - s2 / (2.0 * l * l);
            sb.b_inv = m.theta;
            return sb;
        }
        ShapeBoundaries operator()(const CIR& m) const {
            const double g = cir_gamma(m.a, m.sigma);
            ShapeBoundaries sb;
            sb.lambda = (m.a + g) / 2.0;
            sb.b_norm = m.a * m.theta / g;
            sb.b_asymp = 2.0 * m.a * m.theta / (m.a + g);
            sb.b_inv = m.theta;
            return sb;
        }
        ShapeBoundaries operator()(const JCIR& m) const {
            const double g = cir_gamma(m.a, m.sigma);
            const double s2 = m.sigma * m.sigma;
            ShapeBoundaries sb;
            sb.lambda = (m.a + g) / 2.0;
            const double denom = s2 * m.nu + g - m.a;
            sb.b_norm = m.a * m.theta / g +
                        m.c * m.nu * s2 * s2 / (g * denom * denom);
            sb.b_asymp = 2.0 * m.a * m.theta / (m.a + g) +
                         2.0 * m.c / (m.nu * (m.a + g) + 2.0);
            sb.b_inv = m.theta + m.c / (m.a * m.nu);
            return sb;
        }
        ShapeBoundaries operator()(const GammaOU& m) const {
            const double s = 1.0 / m.theta + 1.0 / m.lambda;
            ShapeBoundaries sb;
            sb.lambda = m.lambda;
            sb.b_norm = (m.k / m.theta) / (s * s);
            sb.b_asymp = m.k / s;
            sb.b_inv = m.k * m.theta;
            return sb;
        }
    };
    return std::visit(Visitor{}, model);
}

double closed_form_B(const NamedModel& model, double x) {
    struct Visitor {
        double x;
        double B_ou(double lambda) const { return std::expm1(-lambda * x) / lambda; }
        double operator()(const Vasicek& m) const { return B_ou(m.lambda); }
        double operator()(const CIR&) const {
            throw NotAvailable("no elementary B for this model here");
        }
        double operator()(const JCIR&) const {
            throw NotAvailable("no elementary B for this model here");
        }
        double operator()(const GammaOU& m) const { return B_ou(m.lambda); }
    };
    if (!(x >= 0.0)) throw DomainError("maturity must be nonnegative");
    return std::visit(Visitor{x}, model);
}

double closed_form_A(const NamedModel& model, double x) {
    struct Visitor {
        double x;
        double operator()(const Vasicek&) const {
            throw NotAvailable("no elementary A for this model here");
        }
        double operator()(const CIR&) const {
            throw NotAvailable("no elementary A for this model here");
        }
        double operator()(const JCIR&) const {
            throw NotAvailable("no elementary A for this model here");
        }
        double operator()(const GammaOU& m) const {
            const double B = std::expm1(-m.lambda * x) / m.lambda;
            return m.lambda * m.k / (m.theta + m.lambda) *
                   (std::log1p(-m.theta * B) - m.theta * x);
        }
    };
    if (!(x >= 0.0)) throw DomainError("maturity must be nonnegative");
    return std::visit(Visitor{x}, model);
}

double closed_form_bond_price(const NamedModel& model, double r, double x) {
    return std::exp(closed_form_A(model, x) + r * closed_form_B(model, x));
}

double closed_form_cgf(const NamedModel& model, double u) {
    struct Visitor {
        double u;
        double operator()(const Vasicek& m) const {
            return u * m.theta + u * u * m.sigma * m.sigma / (4.0 * m.lambda);
        }
        double operator()(const CIR& m) const {
            const double s2 = m.sigma * m.sigma;
            return -(2.0 * m.a * m.theta / s2) *
                   std::log1p(-s2 * u / (2.0 * m.a));
        }
        double operator()(const JCIR& m) const {
            const double rho = m.sigma * m.sigma / 2.0;
            const double delta = m.a - m.nu * rho;
            if (std::abs(delta) <= 1e-12)
                return -m.theta * m.nu * std::log1p(-u / m.nu) +
                       (m.c / m.a) * u / (m.nu - u);
            return (m.c / delta - m.a * m.theta / rho) *
                       std::log1p(-rho * u / m.a) -
                   (m.c / delta) * std::log1p(-u / m.nu);
        }
        double operator()(const GammaOU& m) const {
            return -m.k * std::log1p(-m.theta * u);
        }
    };
    return std::visit(Visitor{check_cgf_arg(u)}, model);
}

}  // namespace affine
