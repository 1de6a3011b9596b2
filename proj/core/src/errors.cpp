#include "qdecay/errors.hpp"

#include <sstream>

namespace qdecay {

std::string describe(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid-input";
        case ErrorKind::validation: return "validation";
        case ErrorKind::io: return "io";
        case ErrorKind::degenerate_calibration: return "degenerate-calibration";
        case ErrorKind::quadrature_failure: return "quadrature-failure";
        case ErrorKind::non_convergence: return "non-convergence";
        case ErrorKind::root_not_found: return "root-not-found";
        case ErrorKind::degenerate_stationary_shift: return "degenerate-stationary-shift";
        case ErrorKind::range: return "range";
    }
    return "unknown";
}

std::string format_message(ErrorKind kind, const ErrorContext& ctx, const std::string& what) {
    std::ostringstream os;
    os << "[" << describe(kind) << "]";
    if (!ctx.module.empty()) os << " module=" << ctx.module;
    if (!ctx.model.empty()) os << " model=" << ctx.model;
    if (ctx.time) os << " t=" << *ctx.time;
    os << ": " << what;
    return os.str();
}

} // namespace qdecay
