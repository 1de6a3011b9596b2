#include "qdecay/lrt.hpp"

#include <cmath>
#include <limits>

#include "qdecay/quad.hpp"

namespace qdecay::lrt {

namespace {

constexpr double kDirectAbsTol = 1e-8;      // absolute target for c1_direct
constexpr double kOscillatoryComfort = 1e5; // wt * t beyond which tolerance degrades
constexpr double kUnderflowFloor = 1e-300;
constexpr double kNearZeroFraction = 1e-6;

void require_time(double t, const char* module) {
    if (!std::isfinite(t) || t < 0.0) {
        throw ValidationError(ErrorKind::invalid_input, {.module = module, .time = t},
                              "time must be finite and >= 0");
    }
}

} // namespace

LineShape::LineShape(double omega_tilde, double gamma_stat)
    : omega_tilde_(omega_tilde),
      gamma_(gamma_stat),
      normalization_(0.0),
      density_(spectral::SpectralDensity::drude_lorentz(omega_tilde, gamma_stat, 1.0)) {
    // Factory validation in drude_lorentz already enforces positivity.
    const double b0 = spectral::detail::dl_branchcut_moment(omega_tilde_, gamma_, 0.0, 0);
    normalization_ = 1.0 / (1.0 - b0);
    if (!(normalization_ > 0.0) || !std::isfinite(normalization_)) {
        throw NumericalError(ErrorKind::quadrature_failure, {.module = "lrt"},
                             "normalization of the line shape did not evaluate", b0);
    }
}

LineShape LineShape::from_stationary(double omega_s, const tcl::ShiftRatePair& stationary) {
    return LineShape(omega_s + stationary.shift, stationary.rate);
}

std::complex<double> LineShape::c1_pole(double t) const {
    require_time(t, "lrt");
    return std::exp(std::complex<double>(-0.5 * gamma_ * t, -omega_tilde_ * t));
}

double LineShape::c1_branchcut(double t) const {
    require_time(t, "lrt");
    return spectral::detail::dl_branchcut_moment(omega_tilde_, gamma_, t, 0);
}

std::complex<double> LineShape::c1(double t) const {
    return normalization_ * (c1_pole(t) - c1_branchcut(t));
}

std::complex<double> LineShape::c1_direct(double t, DirectDiagnostics* diag) const {
    require_time(t, "lrt");

    // Truncation point: grow until the discarded tail is provably below the
    // tolerance. For t*x large the oscillation bounds the tail by 2 S(x)/t
    // (one integration by parts plus monotonicity); otherwise use the exact
    // remaining weight.
    double x = omega_tilde_ + 40.0 * gamma_;
    double bound = 0.0;
    for (;;) {
        bound = spectral::detail::dl_tail_weight(omega_tilde_, gamma_, x);
        if (t * x > 10.0) bound = std::min(bound, 2.0 * density_.value(x) / t);
        if (bound < kDirectAbsTol / 3.0) break;
        x *= 1.5;
        if (x > 1e9 * omega_tilde_) {
            throw NumericalError(ErrorKind::quadrature_failure, {.module = "lrt", .time = t},
                                 "cannot truncate the direct Fourier integral", bound);
        }
    }

    auto integrand = [this, t](double w) {
        return density_.value(w) * std::exp(std::complex<double>(0.0, -w * t));
    };
    const std::complex<double> numerator =
        quad::integrate_oscillatory(integrand, 0.0, x, t, kDirectAbsTol / 3.0, "c1_direct");
    const double denominator = density_.total_weight();
    if (diag) {
        diag->degraded = omega_tilde_ * t > kOscillatoryComfort;
        diag->truncation_bound = bound;
    }
    return numerator / denominator;
}

ShiftRateResult LineShape::shift_rate(double omega_s_bare, double t) const {
    require_time(t, "lrt");
    const std::complex<double> pole = c1_pole(t);
    const double b0 = spectral::detail::dl_branchcut_moment(omega_tilde_, gamma_, t, 0);
    const double b1 = spectral::detail::dl_branchcut_moment(omega_tilde_, gamma_, t, 1);
    const std::complex<double> c_un = pole - b0;
    if (std::abs(c_un) * normalization_ < kUnderflowFloor) {
        throw NumericalError(ErrorKind::range, {.module = "lrt", .time = t},
                             "amplitude underflow; rescale to units with larger Gamma_stat",
                             std::abs(c_un));
    }
    const std::complex<double> derivative_num =
        std::complex<double>(0.5 * gamma_, omega_tilde_) * pole - b1;
    const std::complex<double> ratio = derivative_num / c_un;
    ShiftRateResult out;
    out.omega_total = ratio.imag();
    out.pair = {ratio.imag() - omega_s_bare, 2.0 * ratio.real()};
    out.near_zero = std::abs(c_un) < kNearZeroFraction * (std::abs(pole) + b0);
    return out;
}

double nonresonant_tail(double omega_tilde, double gamma_stat, double t) {
    const double a2 = omega_tilde * omega_tilde + 0.25 * gamma_stat * gamma_stat;
    return 2.0 * omega_tilde * gamma_stat / (M_PI * a2 * a2 * t * t);
}

} // namespace qdecay::lrt
