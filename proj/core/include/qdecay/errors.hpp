// errors.hpp — Error taxonomy shared by all qdecay modules

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace qdecay {

enum class ErrorKind {
    invalid_input,              // non-finite or out-of-domain arguments
    validation,                 // malformed model/config (aggregated messages)
    io,                         // file read/write failures
    degenerate_calibration,     // S(omega_s) = 0, cannot pin a target rate
    quadrature_failure,         // adaptive integration missed its tolerance
    non_convergence,            // plateau / fixed-point search did not settle
    root_not_found,             // bracketing failed for a transcendental root
    degenerate_stationary_shift,// |dw_stat| too small for the product shift
    range                       // amplitude underflow or similar scale problems
};

// Where an error came from: module, rate-model kind (if any) and time point.
struct ErrorContext {
    std::string module;
    std::string model;              // rate-model kind or spectrum kind, may be empty
    std::optional<double> time;     // t or tau of the offending evaluation
};

std::string describe(ErrorKind kind);
std::string format_message(ErrorKind kind, const ErrorContext& ctx, const std::string& what);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const ErrorContext& ctx, const std::string& what)
        : std::runtime_error(format_message(kind, ctx, what)), kind_(kind), context_(ctx) {}

    ErrorKind kind() const noexcept { return kind_; }
    const ErrorContext& context() const noexcept { return context_; }

private:
    ErrorKind kind_;
    ErrorContext context_;
};

// Bad inputs or configuration. The CLI maps these to exit code 1.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Numerical machinery failed to meet its contract. CLI exit code 2.
// `residual` carries the best error estimate available at the failure point.
class NumericalError : public Error {
public:
    NumericalError(ErrorKind kind, const ErrorContext& ctx, const std::string& what,
                   double residual = 0.0)
        : Error(kind, ctx, what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace qdecay
