#pragma once

#include <string>
#include <variant>

#include "affine/params.hpp"
#include "affine/shape.hpp"

namespace affine {

// dr = lambda (theta - r) dt + sigma dW on the whole real line
struct Vasicek {
    double lambda = 0.0;
    double theta = 0.0;
    double sigma = 0.0;
};

// dr = a (theta - r) dt + sigma sqrt(r) dW on the half line
struct CIR {
    double a = 0.0;
    double theta = 0.0;
    double sigma = 0.0;
};

// CIR plus compound Poisson jumps: intensity c, Exp(nu) jump sizes
struct JCIR {
    double a = 0.0;
    double theta = 0.0;
    double sigma = 0.0;
    double c = 0.0;
    double nu = 0.0;
};

// dr = -lambda r dt + dL with L a compound Poisson subordinator chosen so
// the stationary law is Gamma(k, theta)
struct GammaOU {
    double lambda = 0.0;
    double k = 0.0;
    double theta = 0.0;
};

using NamedModel = std::variant<Vasicek, CIR, JCIR, GammaOU>;

std::string model_name(const NamedModel& model);

// Validates the native parameters (ParameterError) and maps them onto the
// generic coefficient set.
AffineParams to_affine(const NamedModel& model);

ShapeBoundaries closed_form_boundaries(const NamedModel& model);

// Exponential-affine bond-price exponents where an elementary expression
// exists; NotAvailable otherwise.
double closed_form_B(const NamedModel& model, double x);
double closed_form_A(const NamedModel& model, double x);
double closed_form_bond_price(const NamedModel& model, double r, double x);

// Cumulant generating function of the stationary law at u <= 0.
double closed_form_cgf(const NamedModel& model, double u);

}  // namespace affine
