// assembly.hpp — Matching the time-local and line-shape rates into the
// all-timescale product pair, and the transition times bracketing the
// constant-rate window.
//
//   dw_pro(t) = dw_tcl(t) dw_lrt(t) / dw_stat
//   G_pro(t)  = G_tcl(t)  G_lrt(t)  / G_stat
//
// Transients die out at t1 = 1/G_stat. The algebraic tail takes over at the
// time t2 where the pole term's modulus meets the non-resonant tail:
//
//   e^{-G t2 / 2} = 2 wt G / [pi (wt^2 + G^2/4)^2 t2^2],  wt = w_s + dw_stat,
//
// solved on the log of both sides by bisection plus one Newton polish.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "qdecay/kernel_tcl.hpp"

namespace qdecay::assembly {

enum class Regime { transient, markovian, algebraic };

std::string to_string(Regime r);

// Throws degenerate_stationary_shift when |dw_stat| < 1e-9 * G_stat: the
// matching formula divides by it and no substitute is defined. Use
// product_rate() for the rate-only path.
tcl::ShiftRatePair product_shift_rate(const tcl::ShiftRatePair& tcl_pair,
                                      const tcl::ShiftRatePair& lrt_pair,
                                      const tcl::ShiftRatePair& stationary);

double product_rate(const tcl::ShiftRatePair& tcl_pair, const tcl::ShiftRatePair& lrt_pair,
                    const tcl::ShiftRatePair& stationary);

bool stationary_shift_degenerate(const tcl::ShiftRatePair& stationary);

double transition_t1(const tcl::ShiftRatePair& stationary);

double transition_t2(double omega_s, const tcl::ShiftRatePair& stationary);

Regime classify_regime(double t, double t1, double t2);

struct RegimeReport {
    double t1 = 0.0;
    double t2 = 0.0;
    std::vector<Regime> labels; // one per grid point

    static RegimeReport build(std::span<const double> grid, double t1, double t2);
};

// Trailing running mean over a time window (used for the averaged product
// rate); values[i] is replaced by the mean of all samples in
// (times[i] - window, times[i]].
std::vector<double> trailing_mean(std::span<const double> times, std::span<const double> values,
                                  double window);

} // namespace qdecay::assembly
