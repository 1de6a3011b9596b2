#include "qdecay/kernel_tcl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qdecay/quad.hpp"

namespace qdecay::tcl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPlateauRelTol = 1e-6;
constexpr double kPlateauMaxFactor = 1e4; // probe horizon in units of 1/gamma

// (1 - e^{-i x}) / (i x), with the small-|x| series to avoid cancellation.
std::complex<double> phase_filter(double x) {
    if (std::abs(x) < 1e-3) {
        const double x2 = x * x;
        return {1.0 - x2 / 6.0 + x2 * x2 / 120.0, -x / 2.0 + x * x2 / 24.0};
    }
    const std::complex<double> num = 1.0 - std::exp(std::complex<double>(0.0, -x));
    return num / std::complex<double>(0.0, x);
}

} // namespace

SystemEnvironmentModel::SystemEnvironmentModel(double omega_s, double coupling,
                                               spectral::SpectralDensity env)
    : omega_s_(omega_s), coupling_(coupling), env_(std::move(env)) {
    if (!std::isfinite(omega_s) || !(omega_s > 0.0)) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "kernel_tcl"},
                              "omega_s must be finite and > 0");
    }
    if (!std::isfinite(coupling) || !(coupling > 0.0)) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "kernel_tcl"},
                              "coupling must be finite and > 0");
    }
}

std::complex<double> SystemEnvironmentModel::memory_kernel(double tau) const {
    if (!std::isfinite(tau) || tau < 0.0) {
        throw ValidationError(ErrorKind::invalid_input,
                              {.module = "kernel_tcl", .time = tau},
                              "memory kernel requires tau >= 0");
    }
    return coupling_ * std::exp(std::complex<double>(0.0, omega_s_ * tau)) *
           env_.correlation(tau);
}

std::complex<double> SystemEnvironmentModel::tcl_generator(double t, int order) const {
    if (order != 2) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "kernel_tcl"},
                              "only the second-order generator is implemented");
    }
    return tcl2_generator(t);
}

std::complex<double> SystemEnvironmentModel::tcl2_generator(double t) const {
    if (!std::isfinite(t) || t < 0.0) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "kernel_tcl", .time = t},
                              "generator requires t >= 0");
    }
    if (t == 0.0) return {};
    switch (env_.kind()) {
        case spectral::Kind::drude_lorentz:
        case spectral::Kind::full_lorentzian:
            return generator_pole_route(t);
        case spectral::Kind::tabulated:
            return generator_spectral_route(t);
    }
    return {};
}

// K(t) assembled from the correlation function's pole term (analytic running
// integral) and, for the one-sided peak, the branch-cut part swapped into a
// single non-oscillatory xi integral:
//
//   \int_0^t e^{i w_s tau} B_0(tau) dtau
//     = \int_0^inf dxi g(xi) (1 - e^{-(xi - i w_s) t}) / (xi - i w_s) .
std::complex<double> SystemEnvironmentModel::generator_pole_route(double t) const {
    const double wt = env_.center();
    const double gw = env_.width();
    const std::complex<double> z(0.5 * gw, wt - omega_s_);
    const std::complex<double> pole_part = (1.0 - std::exp(-z * t)) / z;
    if (env_.kind() == spectral::Kind::full_lorentzian) {
        return coupling_ * env_.weight() * pole_part;
    }

    const double a2 = wt * wt + 0.25 * gw * gw;
    const double prefactor = (2.0 / M_PI) * wt * gw;
    auto integrand = [=, ws = omega_s_](double xi) {
        const double xi2 = xi * xi;
        const double denom = (xi2 - gw * xi + a2) * (xi2 + gw * xi + a2);
        const std::complex<double> filt =
            (1.0 - std::exp(std::complex<double>(-xi * t, ws * t))) /
            std::complex<double>(xi, -ws);
        return prefactor * xi / denom * filt;
    };
    const double a = std::sqrt(a2);
    std::vector<double> pts{0.0};
    if (1.0 / t < a) pts.push_back(1.0 / t);
    pts.push_back(a);
    pts.push_back(kInf);
    const quad::Spec spec{.rel_tol = 1e-11,
                          .abs_tol = 1e-15 * prefactor / a2,
                          .max_depth = 15,
                          .label = "tcl2_generator(branch-cut)"};
    const std::complex<double> cut_part = quad::integrate_segments(integrand, pts, spec);
    return coupling_ * env_.weight() * (pole_part - cut_part);
}

std::complex<double> SystemEnvironmentModel::generator_spectral_route(double t) const {
    const double scale = coupling_ * env_.total_weight() * std::min(t, 20.0 / env_.width());
    auto integrand = [this, t](double w) {
        return env_.value(w) * t * phase_filter((w - omega_s_) * t);
    };
    const auto raw = quad::integrate_oscillatory(
        integrand, env_.center() - env_.width(), env_.center() + env_.width(), t,
        std::max(1e-13 * scale, 1e-300), "tcl2_generator(spectral)");
    return coupling_ * raw;
}

ShiftRatePair SystemEnvironmentModel::tcl2_shift_rate(double t) const {
    const std::complex<double> k = tcl2_generator(t);
    return {k.imag(), 2.0 * k.real()};
}

ShiftRatePair SystemEnvironmentModel::stationary_shift_rate() const {
    const double g = gamma();
    ShiftRatePair prev = tcl2_shift_rate(10.0 / g);
    for (double t = 20.0 / g; t <= kPlateauMaxFactor / g; t *= 2.0) {
        const ShiftRatePair cur = tcl2_shift_rate(t);
        const double scale =
            std::max(std::hypot(cur.shift, cur.rate), std::numeric_limits<double>::min());
        const double change =
            std::max(std::abs(cur.shift - prev.shift), std::abs(cur.rate - prev.rate)) / scale;
        if (change < kPlateauRelTol) return cur;
        prev = cur;
    }
    throw NumericalError(ErrorKind::non_convergence, {.module = "kernel_tcl"},
                         "no stationary plateau within 1e4/gamma; "
                         "timescale separation Gamma/gamma is insufficient");
}

double SystemEnvironmentModel::golden_rule_rate() const {
    return 2.0 * M_PI * coupling_ * env_.value(omega_s_);
}

TimescaleSeparation SystemEnvironmentModel::timescale_separation() const {
    const double ratio = golden_rule_rate() / gamma();
    return {ratio, ratio > 0.5};
}

} // namespace qdecay::tcl
