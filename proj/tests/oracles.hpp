// oracles.hpp — Brute-force reference computations for the test suites.
//
// Everything here is deliberately primitive (dense trapezoid sums, symmetric
// principal-value differences, fixed-step RK4) and shares no code with the
// library's adaptive machinery, so agreement between the two is meaningful.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

// Dense-grid trapezoid of f over [a, b].
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
    double acc = 0.5 * (f(a) + f(b));
    const double h = (b - a) / n;
    for (int i = 1; i < n; ++i) acc += f(a + h * i);
    return acc * h;
}

// Dense-grid Fourier sum: \int_a^b f(w) e^{-i w tau} dw.
inline std::complex<double> fourier_sum(const std::function<double(double)>& f, double a, double b,
                                        double tau, int n) {
    const double h = (b - a) / n;
    auto term = [&](double w) { return f(w) * std::exp(std::complex<double>(0.0, -w * tau)); };
    std::complex<double> acc = 0.5 * (term(a) + term(b));
    for (int i = 1; i < n; ++i) acc += term(a + h * i);
    return acc * h;
}

// PV \int_a^b f(w) / (w - pole) dw for a < pole < b, via the symmetric
// difference around the pole plus the leftover one-sided piece.
inline double principal_value(const std::function<double(double)>& f, double a, double b,
                              double pole, int n) {
    const double r = std::min(pole - a, b - pole);
    // symmetric window: \int_0^r [f(pole+u) - f(pole-u)] / u du
    auto sym = [&](double u) { return u == 0.0 ? 0.0 : (f(pole + u) - f(pole - u)) / u; };
    double acc = trapezoid(sym, r * 1e-9, r, n); // integrand -> 2 f'(pole) at 0
    // leftover piece outside the window
    if (pole - a > r) {
        acc += trapezoid([&](double w) { return f(w) / (w - pole); }, a, pole - r, n);
    }
    if (b - pole > r) {
        acc += trapezoid([&](double w) { return f(w) / (w - pole); }, pole + r, b, n);
    }
    return acc;
}

// Classic fixed-step RK4 for dy/dt = rhs(t, y), complex scalar y.
inline std::complex<double> rk4(const std::function<std::complex<double>(
                                    double, std::complex<double>)>& rhs,
                                std::complex<double> y0, double t0, double t1, int steps) {
    std::complex<double> y = y0;
    const double h = (t1 - t0) / steps;
    double t = t0;
    for (int i = 0; i < steps; ++i) {
        const auto k1 = rhs(t, y);
        const auto k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1);
        const auto k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2);
        const auto k4 = rhs(t + h, y + h * k3);
        y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += h;
    }
    return y;
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const auto n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace oracle
