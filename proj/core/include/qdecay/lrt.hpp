// lrt.hpp — Excited-state amplitude of a stationary spectral line.
//
// A two-level emitter whose stationary spectrum is the one-sided
// Drude–Lorentz peak with shifted frequency wt = w_s + dw_stat and width
// Gamma has the excited-state amplitude
//
//   c1(t) = N * [ e^{-(i wt + Gamma/2) t} - B_0(t) ] ,
//
// i.e. a resonant pole term plus the non-resonant imaginary-axis integral
// B_0 (see spectral.hpp), normalized so that c1(0) = 1. The pole term alone
// is the constant-rate (pole-approximation) amplitude; B_0 decays as t^-2
// and takes over at large times, where
//
//   B_0(t) -> 2 wt Gamma / [pi (wt^2 + Gamma^2/4)^2 t^2] .
//
// c1_direct() evaluates the same amplitude as a plain normalized Fourier
// transform of the line shape, by frequency-space quadrature only. It shares
// no formula with c1(); the two must agree and the direct route serves as
// the independent cross-check of the pole + branch-cut split.
//
// The instantaneous frequency and rate are the logarithmic derivative
//
//   -c1'(t)/c1(t) = i w_lrt(t) + Gamma_lrt(t)/2 ,
//
// evaluated analytically (the pole differentiates in closed form; B_0' =
// -B_1). In the pole-dominated window this gives back (wt, Gamma); in the
// algebraic tail Gamma_lrt(t) -> 4/t, twice the decay rate of the t^-2
// amplitude modulus.

#pragma once

#include <complex>

#include "qdecay/kernel_tcl.hpp"
#include "qdecay/spectral.hpp"

namespace qdecay::lrt {

struct ShiftRateResult {
    tcl::ShiftRatePair pair;    // shift relative to the bare frequency; full rate
    double omega_total = 0.0;   // w_lrt(t)
    bool near_zero = false;     // c1 close to a zero crossing: rate has a pole
};

struct DirectDiagnostics {
    bool degraded = false;      // wt * t beyond the oscillatory comfort zone
    double truncation_bound = 0.0;
};

class LineShape {
public:
    LineShape(double omega_tilde, double gamma_stat);

    static LineShape from_stationary(double omega_s, const tcl::ShiftRatePair& stationary);

    double omega_tilde() const noexcept { return omega_tilde_; }
    double gamma() const noexcept { return gamma_; }
    double normalization() const noexcept { return normalization_; }

    // Unnormalized resonant term e^{-(i wt + Gamma/2) t}; this is also the
    // pole-approximation amplitude.
    std::complex<double> c1_pole(double t) const;

    // Unnormalized non-resonant term B_0(t) >= 0.
    double c1_branchcut(double t) const;

    // Normalized amplitude from the pole + branch-cut split; c1(0) = 1.
    std::complex<double> c1(double t) const;

    // Normalized amplitude by direct frequency-space quadrature.
    std::complex<double> c1_direct(double t, DirectDiagnostics* diag = nullptr) const;

    // Instantaneous (dw, Gamma) from the analytic logarithmic derivative.
    ShiftRateResult shift_rate(double omega_s_bare, double t) const;

    // Line-shape density (unit weight) backing c1_direct.
    const spectral::SpectralDensity& density() const noexcept { return density_; }

private:
    double omega_tilde_;
    double gamma_;
    double normalization_;
    spectral::SpectralDensity density_;
};

// Leading large-t behavior of the non-resonant term:
// 2 wt Gamma / [pi (wt^2 + Gamma^2/4)^2 t^2].
double nonresonant_tail(double omega_tilde, double gamma_stat, double t);

} // namespace qdecay::lrt
