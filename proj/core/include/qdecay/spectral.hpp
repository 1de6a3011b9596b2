// spectral.hpp — Spectral-density models and their integral transforms.
//
// Three model kinds are supported:
//
//   drude_lorentz   S(w) = theta(w) * weight * (2/pi) * G * wt * w
//                          / [(wt^2 + G^2/4 - w^2)^2 + G^2 w^2]
//   full_lorentzian S(w) = weight * (G / 2pi) / [(w - wt)^2 + G^2/4]
//   tabulated       monotone piecewise-cubic through (w_i, S_i), 0 outside
//
// with center wt and full width G. The Drude–Lorentz peak is one-sided
// (vanishes for w <= 0); the full Lorentzian deliberately is not, which is
// what the compatibility predicate below detects.
//
// The correlation function is the Fourier transform
//
//   C(tau) = \int S(w) e^{-i w tau} dw .
//
// For the one-sided Drude–Lorentz peak this evaluates, for tau >= 0, to a
// resonant pole term plus a non-resonant integral along the imaginary
// frequency axis:
//
//   C(tau) = weight * [ e^{-(i wt + G/2) tau} - B_0(tau) ]
//   B_m(tau) = (2/pi) \int_0^inf  wt G xi^{1+m} e^{-xi tau}
//              / [ (wt^2 + G^2/4 + xi^2)^2 - G^2 xi^2 ]  dxi ,
//
// where the denominator factors as (xi^2 - G xi + a^2)(xi^2 + G xi + a^2),
// a^2 = wt^2 + G^2/4, and stays positive for wt > 0. B_0 decays as tau^-2
// and is the slow algebraic part of the correlation; B_1 = -dB_0/dtau.

#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "qdecay/errors.hpp"

namespace qdecay::spectral {

enum class Kind { drude_lorentz, full_lorentzian, tabulated };

std::string to_string(Kind kind);

struct LrtVerdict {
    bool compatible = false;
    double negative_fraction = 0.0; // \int_{w<0} S dw / total weight
};

class SpectralDensity {
public:
    static SpectralDensity drude_lorentz(double center, double width, double weight = 1.0);
    static SpectralDensity full_lorentzian(double center, double width, double weight = 1.0);
    static SpectralDensity tabulated(std::vector<double> frequencies, std::vector<double> values,
                                     double weight = 1.0);
    // Two-column CSV (frequency, value); header row optional; first column
    // strictly increasing.
    static SpectralDensity tabulated_from_csv(const std::string& path, double weight = 1.0);

    Kind kind() const noexcept { return kind_; }
    double center() const noexcept { return center_; }
    double width() const noexcept { return width_; }
    double weight() const noexcept { return weight_; }

    // S(w). Exactly 0 on w <= 0 for drude_lorentz and outside the table
    // support for tabulated models.
    double value(double omega) const;

    // \int S dw over the full support, adaptive to ~1e-10 relative.
    double total_weight() const;

    // C(tau) = \int S(w) e^{-i w tau} dw; C(-tau) = conj(C(tau)).
    std::complex<double> correlation(double tau) const;

    // One-sidedness predicate: compatible iff the spectral weight on w <= 0
    // is below 1e-9 of the total.
    LrtVerdict lrt_compatible() const;

    SpectralDensity with_weight(double weight) const;

    // Rescale so that 2*pi*coupling*S(omega_s) equals gamma_target.
    SpectralDensity calibrate_weight(double coupling, double omega_s, double gamma_target) const;

private:
    SpectralDensity() = default;

    double value_unchecked(double omega) const;
    double negative_weight() const;

    Kind kind_ = Kind::drude_lorentz;
    double center_ = 0.0;
    double width_ = 0.0;
    double weight_ = 1.0;
    std::vector<double> freq_;
    std::vector<double> val_;
    std::vector<double> slope_; // monotone cubic end-point derivatives
};

namespace detail {

// B_m(t) of the header comment, for the unit-weight Drude–Lorentz shape.
double dl_branchcut_moment(double omega_tilde, double width, double t, int moment,
                           double rel_tol = 1e-10);

// Exact \int_X^inf of the unit-weight Drude–Lorentz shape (closed form);
// used for truncation bounds, not as a quadrature substitute.
double dl_tail_weight(double omega_tilde, double width, double x);

} // namespace detail

} // namespace qdecay::spectral
