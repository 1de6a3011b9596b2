#include "qdecay/assembly.hpp"

#include <cmath>

#include "qdecay/lrt.hpp"

namespace qdecay::assembly {

namespace {

constexpr double kShiftDegeneracyFraction = 1e-9;
constexpr double kBracketFactor = 1e4;
constexpr double kResidualTol = 1e-10;

void require_stationary(const tcl::ShiftRatePair& stationary) {
    if (!(stationary.rate > 0.0) || !std::isfinite(stationary.rate)) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "assembly"},
                              "stationary rate must be finite and > 0");
    }
}

} // namespace

std::string to_string(Regime r) {
    switch (r) {
        case Regime::transient: return "transient";
        case Regime::markovian: return "markovian";
        case Regime::algebraic: return "algebraic";
    }
    return "unknown";
}

bool stationary_shift_degenerate(const tcl::ShiftRatePair& stationary) {
    return std::abs(stationary.shift) < kShiftDegeneracyFraction * stationary.rate;
}

tcl::ShiftRatePair product_shift_rate(const tcl::ShiftRatePair& tcl_pair,
                                      const tcl::ShiftRatePair& lrt_pair,
                                      const tcl::ShiftRatePair& stationary) {
    require_stationary(stationary);
    if (stationary_shift_degenerate(stationary)) {
        throw NumericalError(ErrorKind::degenerate_stationary_shift, {.module = "assembly"},
                             "|dw_stat| below 1e-9 * Gamma_stat; the product shift is undefined "
                             "(request the rate-only output)",
                             std::abs(stationary.shift));
    }
    return {tcl_pair.shift * lrt_pair.shift / stationary.shift,
            tcl_pair.rate * lrt_pair.rate / stationary.rate};
}

double product_rate(const tcl::ShiftRatePair& tcl_pair, const tcl::ShiftRatePair& lrt_pair,
                    const tcl::ShiftRatePair& stationary) {
    require_stationary(stationary);
    return tcl_pair.rate * lrt_pair.rate / stationary.rate;
}

double transition_t1(const tcl::ShiftRatePair& stationary) {
    require_stationary(stationary);
    return 1.0 / stationary.rate;
}

double transition_t2(double omega_s, const tcl::ShiftRatePair& stationary) {
    require_stationary(stationary);
    const double wt = omega_s + stationary.shift;
    const double rate = stationary.rate;
    if (!(wt > 0.0)) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "assembly"},
                              "omega_s + dw_stat must be > 0");
    }
    // g(t) = ln LHS - ln RHS; the tail estimate supplies RHS.
    const double ln_prefactor = std::log(lrt::nonresonant_tail(wt, rate, 1.0));
    auto g = [&](double t) { return -0.5 * rate * t - ln_prefactor + 2.0 * std::log(t); };

    double lo = 1.0 / rate;
    double hi = kBracketFactor / rate;
    if (!(g(lo) > 0.0 && g(hi) < 0.0)) {
        throw NumericalError(ErrorKind::root_not_found, {.module = "assembly"},
                             "no sign change of the crossover equation in [t1, 1e4*t1]", g(lo));
    }
    while ((hi - lo) > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    double t2 = 0.5 * (lo + hi);
    t2 -= g(t2) / (-0.5 * rate + 2.0 / t2); // one Newton polish

    const double lhs = std::exp(-0.5 * rate * t2);
    const double rhs = lrt::nonresonant_tail(wt, rate, t2);
    const double residual = std::abs(lhs - rhs) / lhs;
    if (!(residual < kResidualTol)) {
        throw NumericalError(ErrorKind::root_not_found, {.module = "assembly"},
                             "crossover equation residual above tolerance", residual);
    }
    return t2;
}

Regime classify_regime(double t, double t1, double t2) {
    if (t < t1) return Regime::transient;
    if (t < t2) return Regime::markovian;
    return Regime::algebraic;
}

RegimeReport RegimeReport::build(std::span<const double> grid, double t1, double t2) {
    RegimeReport report;
    report.t1 = t1;
    report.t2 = t2;
    report.labels.reserve(grid.size());
    for (double t : grid) report.labels.push_back(classify_regime(t, t1, t2));
    return report;
}

std::vector<double> trailing_mean(std::span<const double> times, std::span<const double> values,
                                  double window) {
    if (times.size() != values.size()) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "assembly"},
                              "times and values must have equal length");
    }
    if (!(window > 0.0)) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "assembly"},
                              "window must be > 0");
    }
    std::vector<double> out(values.size());
    std::size_t lo = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        acc += values[i];
        while (times[lo] <= times[i] - window) {
            acc -= values[lo];
            ++lo;
        }
        out[i] = acc / static_cast<double>(i - lo + 1);
    }
    return out;
}

} // namespace qdecay::assembly
