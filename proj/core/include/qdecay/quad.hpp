// quad.hpp — Adaptive quadrature used throughout the library.
//
// Thin layer over boost::math::quadrature::gauss_kronrod<double, 15> that
// (a) supports real- and complex-valued integrands, (b) accepts finite and
// semi-infinite intervals, and (c) turns a missed tolerance into a thrown
// NumericalError carrying the residual estimate instead of a silent result.
//
// integrate_oscillatory() handles Fourier-type integrands whose phase rotates
// at a known rate: the interval is cut into slices of a few oscillation
// periods each so the adaptive rule never has to chase thousands of periods
// down one recursion tree.

#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <string>

#include "qdecay/errors.hpp"

namespace qdecay::quad {

inline constexpr double kDefaultRelTol = 1e-10;

struct Spec {
    double rel_tol = kDefaultRelTol;
    double abs_tol = 0.0;   // acceptance floor for integrals that legitimately cancel to ~0
    int max_depth = 15;
    std::string label;      // context for error messages
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

// Boost terminates against the L1 norm of the integrand, so the returned
// estimate can sit slightly above rel_tol * |result| even on a clean run.
inline constexpr double kAcceptSlack = 4.0;

template <typename Value>
void check_converged(Value value, double err, const Spec& spec) {
    const double bound = std::max(spec.abs_tol, kAcceptSlack * spec.rel_tol * magnitude(value));
    if (!(err <= bound) || !std::isfinite(err)) {
        throw NumericalError(ErrorKind::quadrature_failure, {.module = "quad", .model = spec.label},
                             "adaptive quadrature missed tolerance (estimate " +
                                 std::to_string(err) + ", bound " + std::to_string(bound) + ")",
                             err);
    }
}

} // namespace detail

// Adaptive Gauss–Kronrod over [a, b]; b may be +infinity. The integrand may
// return double or std::complex<double>.
template <typename F>
auto integrate(F&& f, double a, double b, const Spec& spec = {}) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    auto value = gauss_kronrod<double, 15>::integrate(f, a, b, spec.max_depth, spec.rel_tol, &err);
    detail::check_converged(value, err, spec);
    return value;
}

// Integrate over consecutive segments [p0,p1], [p1,p2], ... Useful when the
// integrand has known kinks or scale changes; the tolerance check applies to
// the accumulated error estimate.
template <typename F>
auto integrate_segments(F&& f, std::span<const double> breakpoints, const Spec& spec = {}) {
    using boost::math::quadrature::gauss_kronrod;
    using Value = decltype(f(breakpoints.front()));
    Value total{};
    double err_total = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        double err = 0.0;
        total += gauss_kronrod<double, 15>::integrate(f, breakpoints[i], breakpoints[i + 1],
                                                      spec.max_depth, spec.rel_tol, &err);
        err_total += err;
    }
    detail::check_converged(total, err_total, spec);
    return total;
}

// Integrate f over [lo, hi] when f carries a phase rotating at `rate` radians
// per unit of the integration variable. Slices span ~2 periods; convergence
// is judged against abs_tol (oscillatory integrals cancel, so a relative
// criterion on the result is meaningless).
template <typename F>
auto integrate_oscillatory(F&& f, double lo, double hi, double rate, double abs_tol,
                           const std::string& label = {}) {
    using boost::math::quadrature::gauss_kronrod;
    using Value = decltype(f(lo));

    const double total_phase = std::abs(rate) * (hi - lo);
    if (total_phase < 64.0) {
        Spec spec{.rel_tol = 1e-12, .abs_tol = abs_tol, .max_depth = 18, .label = label};
        return integrate(f, lo, hi, spec);
    }

    const double slice = 4.0 * M_PI / std::abs(rate); // ~2 periods
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / slice));
    Value total{};
    double err_total = 0.0;
    double x = lo;
    for (std::size_t i = 0; i < n; ++i) {
        const double next = (i + 1 == n) ? hi : lo + (hi - lo) * static_cast<double>(i + 1) /
                                                        static_cast<double>(n);
        double err = 0.0;
        total += gauss_kronrod<double, 15>::integrate(f, x, next, 8, 1e-13, &err);
        err_total += err;
        x = next;
    }
    if (!(err_total <= abs_tol) || !std::isfinite(err_total)) {
        throw NumericalError(ErrorKind::quadrature_failure, {.module = "quad", .model = label},
                             "oscillatory quadrature missed tolerance (estimate " +
                                 std::to_string(err_total) + ", bound " + std::to_string(abs_tol) +
                                 ")",
                             err_total);
    }
    return total;
}

} // namespace qdecay::quad
