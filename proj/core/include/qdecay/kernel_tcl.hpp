// kernel_tcl.hpp — Memory kernel and the second-order time-local generator.
//
// For a two-level system at frequency w_s coupled with strength g^2 to an
// environment with spectral density S_B, the memory kernel is
//
//   k(tau) = g^2 \int S_B(w) e^{-i(w - w_s) tau} dw = g^2 e^{i w_s tau} C_B(tau)
//
// and the second-order time-local generator is its running integral
//
//   K(t) = \int_0^t k(tau) dtau ,   Gamma(t) = 2 Re K(t),  dw(t) = Im K(t).
//
// With this convention the stationary rate is the golden-rule value
// Gamma_stat = 2 pi g^2 S_B(w_s) and the stationary shift is the
// principal-value integral dw_stat = -g^2 PV \int S_B(w)/(w - w_s) dw.
//
// For Drude–Lorentz environments K(t) is evaluated from the pole plus
// branch-cut split of C_B (exact, non-oscillatory); for tabulated spectra it
// falls back to frequency-space quadrature of
//
//   K(t) = g^2 \int S_B(w) (1 - e^{-i(w-w_s)t}) / (i(w-w_s)) dw .

#pragma once

#include <complex>

#include "qdecay/spectral.hpp"

namespace qdecay::tcl {

struct ShiftRatePair {
    double shift = 0.0; // dw, rad/time
    double rate = 0.0;  // Gamma, may be negative for instantaneous values
};

struct TimescaleSeparation {
    double ratio = 0.0; // Gamma_stat / gamma
    bool warning = false;
};

class SystemEnvironmentModel {
public:
    // coupling is g^2 = |d|^2 / hbar^2 in units such that Gamma carries rate
    // units; gamma, the environment correlation decay rate, is taken as the
    // spectrum's width.
    SystemEnvironmentModel(double omega_s, double coupling, spectral::SpectralDensity env);

    double omega_s() const noexcept { return omega_s_; }
    double coupling() const noexcept { return coupling_; }
    double gamma() const noexcept { return env_.width(); }
    const spectral::SpectralDensity& env_spectrum() const noexcept { return env_; }

    std::complex<double> memory_kernel(double tau) const;

    // K(t); `order` is reserved for higher truncations, only 2 ships.
    std::complex<double> tcl_generator(double t, int order) const;
    std::complex<double> tcl2_generator(double t) const;

    ShiftRatePair tcl2_shift_rate(double t) const;

    // Plateau of the second-order pair, probed at 10/gamma, 20/gamma, ...
    // until the relative change drops below 1e-6; throws non_convergence
    // past 1e4/gamma (insufficient timescale separation).
    ShiftRatePair stationary_shift_rate() const;

    double golden_rule_rate() const;

    TimescaleSeparation timescale_separation() const;

private:
    std::complex<double> generator_pole_route(double t) const;
    std::complex<double> generator_spectral_route(double t) const;

    double omega_s_ = 0.0;
    double coupling_ = 0.0;
    spectral::SpectralDensity env_;
};

} // namespace qdecay::tcl
