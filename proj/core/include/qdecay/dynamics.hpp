// dynamics.hpp — Amplitude and two-point correlation dynamics under a
// selectable rate model.
//
// Every model supplies an instantaneous pair (dw(t), Gamma(t)). Because the
// single-channel generator is diagonal, amplitudes and correlations are exact
// exponentials of cumulative integrals:
//
//   c1(t)      = exp{ -i [w_s t + I_dw(t)] - I_G(t)/2 }
//   C_ab(tau)  = base * exp{ s_a i [w_s tau + eta I_dw(tau)] - I_G(tau)/2 }
//
// with I_dw(t) = \int_0^t dw, I_G(t) = \int_0^t Gamma, s_+ = +1, s_- = -1,
// and eta = +1 for the (+,-)/(-,+) pairs, eta = -1 for (+,+)/(-,-). The
// cumulative integrals are accumulated per grid interval by adaptive
// quadrature (no ODE stepping; the exponential form is exact), so |C| obeys
// the modulus law |C(tau)| = |base| e^{-I_G(tau)/2} for all four pairs and
// the shift only rotates phase.
//
// For the line-shape (lrt) model the amplitude is taken from the closed
// amplitude itself by default; the re-integrated exponential is available for
// cross-checking since the rate was defined as its logarithmic derivative.

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdecay/kernel_tcl.hpp"
#include "qdecay/lrt.hpp"

namespace qdecay::dynamics {

enum class RateModelKind { markov, wwa, tcl2, lrt, product };

std::string to_string(RateModelKind kind);
std::optional<RateModelKind> parse_rate_model(const std::string& name);

class RateModel {
public:
    static RateModel markov(double omega_s, const tcl::ShiftRatePair& stationary);
    static RateModel wwa(double omega_s, const tcl::ShiftRatePair& stationary);
    static RateModel tcl2(tcl::SystemEnvironmentModel system, const tcl::ShiftRatePair& stationary);
    static RateModel lrt(double omega_s, lrt::LineShape shape);
    static RateModel product(tcl::SystemEnvironmentModel system, lrt::LineShape shape,
                             const tcl::ShiftRatePair& stationary);

    RateModelKind kind() const noexcept { return kind_; }
    double omega_s() const noexcept { return omega_s_; }
    const tcl::ShiftRatePair& stationary() const noexcept { return stationary_; }
    bool constant() const noexcept {
        return kind_ == RateModelKind::markov || kind_ == RateModelKind::wwa;
    }
    // Product model with |dw_stat| < 1e-9 Gamma_stat: the shift is not
    // defined there; shift_rate reports 0 shift and callers should surface
    // the rate-only warning.
    bool shift_degenerate() const noexcept { return shift_degenerate_; }

    tcl::ShiftRatePair shift_rate(double t) const;

    const lrt::LineShape* line_shape() const noexcept {
        return shape_ ? &*shape_ : nullptr;
    }
    const tcl::SystemEnvironmentModel* system() const noexcept {
        return system_ ? &*system_ : nullptr;
    }

private:
    RateModel(RateModelKind kind, double omega_s, const tcl::ShiftRatePair& stationary)
        : kind_(kind), omega_s_(omega_s), stationary_(stationary) {}

    RateModelKind kind_;
    double omega_s_;
    tcl::ShiftRatePair stationary_;
    std::optional<tcl::SystemEnvironmentModel> system_;
    std::optional<lrt::LineShape> shape_;
    bool shift_degenerate_ = false;
};

struct AmplitudeSeries {
    std::vector<double> t;
    std::vector<std::complex<double>> c1;
    std::vector<double> p1; // |c1|^2
};

struct CorrelationSeries {
    char op_a = '-';
    char op_b = '+';
    double base_time = 0.0;
    std::complex<double> base_value{1.0, 0.0};
    std::vector<double> tau;
    std::vector<std::complex<double>> values;
};

struct ShiftRateTrajectory {
    RateModelKind kind = RateModelKind::markov;
    std::vector<double> t;
    std::vector<double> shift;
    std::vector<double> rate;
    tcl::ShiftRatePair stationary;
};

struct IntegrationOptions {
    double rel_tol = 1e-11;
    double abs_tol = 1e-13; // per-interval floor on the exponent increment
    int max_depth = 22;
    bool lrt_direct = true; // amplitude of the lrt model from the closed form
};

// Cumulative \int_0^{t_k} dw and \int_0^{t_k} Gamma on the grid (grid must
// start at 0 and increase strictly).
struct GeneratorIntegrals {
    std::vector<double> t;
    std::vector<double> shift_integral;
    std::vector<double> rate_integral;
};

GeneratorIntegrals accumulate_generator(const RateModel& model, std::span<const double> grid,
                                        const IntegrationOptions& opts = {});

AmplitudeSeries integrate_amplitude(const RateModel& model, std::span<const double> grid,
                                    const IntegrationOptions& opts = {});

// Exponentiate precomputed cumulative integrals (one accumulate_generator
// can back the amplitude and any number of correlation pairs).
AmplitudeSeries amplitude_from_integrals(const RateModel& model, const GeneratorIntegrals& gi);
CorrelationSeries correlation_from_integrals(const RateModel& model, const GeneratorIntegrals& gi,
                                             char op_a, char op_b,
                                             std::complex<double> base_value);

std::vector<double> population(const AmplitudeSeries& series);

ShiftRateTrajectory sample_trajectory(const RateModel& model, std::span<const double> grid);

CorrelationSeries correlation_sigma(const RateModel& model, char op_a, char op_b,
                                    std::complex<double> base_value,
                                    std::span<const double> delays,
                                    const IntegrationOptions& opts = {});

// C_D(tau) = |d|^2 exp{ -\int_0^tau [i w_s + i dw + Gamma/2] }; identical to
// the (-,+) generator with base |d|^2.
CorrelationSeries dipole_correlation_ground(const RateModel& model, std::span<const double> delays,
                                            double dipole_sq = 1.0,
                                            const IntegrationOptions& opts = {});

// Constant-coefficient baseline: pure exponentials for population and all
// four correlation pairs.
double markov_population(const tcl::ShiftRatePair& stationary, double t);
std::complex<double> markov_correlation(double omega_s, const tcl::ShiftRatePair& stationary,
                                        char op_a, char op_b, std::complex<double> base_value,
                                        double tau);

// Grids. default_grid: log-spaced from 1e-2/gamma to t_max_factor * t2 with
// linear refinement around t1 and t2 (both included exactly), 0 prepended.
std::vector<double> log_grid(double lo, double hi, std::size_t n);
std::vector<double> default_grid(double gamma, double t1, double t2, std::size_t points = 2000,
                                 double t_max_factor = 10.0);

} // namespace qdecay::dynamics
