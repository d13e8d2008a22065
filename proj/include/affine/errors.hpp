#pragma once

#include <stdexcept>
#include <string>

namespace affine {

// Base class for every error the library throws on its own behalf.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parameter set violates the admissibility conditions of its state space.
struct AdmissibilityViolation : Error {
    AdmissibilityViolation(std::string field_, std::string reason_)
        : Error("inadmissible parameter '" + field_ + "': " + reason_),
          field(std::move(field_)),
          reason(std::move(reason_)) {}

    std::string field;
    std::string reason;
};

// On the full real line the state-independent exponent must be finite on an
// interval determined by the drift slope; reported when that fails.
struct ConditionViolation : Error {
    using Error::Error;
};

// An argument lies outside the domain of the requested quantity.
struct DomainError : Error {
    using Error::Error;
};

// The state-independent exponent left its finiteness domain during ODE
// integration; carries the largest maturity that was still valid.
struct FinitenessError : Error {
    explicit FinitenessError(double max_valid_x_)
        : Error("bond-price coefficients leave the finiteness domain near x = " +
                std::to_string(max_valid_x_)),
          max_valid_x(max_valid_x_) {}

    double max_valid_x;
};

// Quasi-mean-reversion is zero; shape boundaries are undefined.
struct LambdaZero : Error {
    LambdaZero() : Error("quasi-mean-reversion is zero; shape boundaries are undefined") {}
};

// The state-independent exponent vanishes identically; the shape trichotomy
// does not apply.
struct DegenerateF : Error {
    DegenerateF() : Error("state-independent exponent vanishes identically") {}
};

// A hump exists but lies beyond the solved horizon.
struct HorizonTooShort : Error {
    explicit HorizonTooShort(double x_max_)
        : Error("forward-rate maximum lies beyond the solved horizon x_max = " +
                std::to_string(x_max_)),
          x_max(x_max_) {}

    double x_max;
};

// The jump-diffusion balance a - nu*sigma^2/2 must vanish for the explicit
// limit-law density; reported when it does not.
struct DeltaNonZero : Error {
    DeltaNonZero()
        : Error("explicit limit-law density needs the balanced case "
                "a = nu * sigma^2 / 2") {}
};

// A named model received an out-of-range parameter.
struct ParameterError : Error {
    using Error::Error;
};

// The requested closed form does not exist for this model.
struct NotAvailable : Error {
    using Error::Error;
};

}  // namespace affine
