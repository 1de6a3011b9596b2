// scenario.hpp — Scenario configuration, execution and serialization.
//
// A scenario fixes the system frequency, the environment spectrum (with
// either an explicit weight or a target stationary rate), the sampling grid,
// the rate models to run and the correlation pairs to evaluate. run_scenario
// resolves the stationary pair, transition times and line shape, then
// integrates every requested model (concurrently) and returns one bundle.
// emit writes one CSV per series plus a single JSON report.

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdecay/assembly.hpp"
#include "qdecay/dynamics.hpp"
#include "qdecay/spectral.hpp"

namespace qdecay::scenario {

struct SystemSection {
    double omega_s = 0.0;
    double coupling = 1.0; // g^2
    friend bool operator==(const SystemSection&, const SystemSection&) = default;
};

struct EnvironmentSection {
    spectral::Kind kind = spectral::Kind::drude_lorentz;
    double center = 0.0;
    double width = 0.0;
    std::optional<double> weight;       // exactly one of weight | gamma_target
    std::optional<double> gamma_target;
    bool zero_detuning = false;         // pin center = omega_s + dw_stat
    std::string table_path;             // kind == tabulated
    friend bool operator==(const EnvironmentSection&, const EnvironmentSection&) = default;
};

struct LineShapeOverride {
    std::optional<double> omega_tilde;
    std::optional<double> gamma;
    friend bool operator==(const LineShapeOverride&, const LineShapeOverride&) = default;
};

enum class GridSpacing { log_spaced, linear };

struct GridSection {
    std::optional<double> t_min; // default 1e-2 / gamma
    std::optional<double> t_max; // default 10 * t2
    std::size_t points = 2000;
    GridSpacing spacing = GridSpacing::log_spaced;
    bool refine = true; // linear refinement windows at t1 and t2
    friend bool operator==(const GridSection&, const GridSection&) = default;
};

struct CorrelationRequest {
    char op_a = '-';
    char op_b = '+';
    std::complex<double> base_value{1.0, 0.0};
    friend bool operator==(const CorrelationRequest&, const CorrelationRequest&) = default;
};

struct OutputSection {
    std::string directory = "out";
    std::vector<std::string> formats{"csv", "json"};
    friend bool operator==(const OutputSection&, const OutputSection&) = default;
};

struct ScenarioConfig {
    SystemSection system;
    EnvironmentSection environment;
    LineShapeOverride line_shape;
    GridSection grid;
    std::vector<dynamics::RateModelKind> models;
    std::vector<CorrelationRequest> correlations;
    OutputSection output;
    double tolerance_scale = 1.0;        // scales engine tolerances (CLI --tolerance)
    double average_window_factor = 0.2;  // trailing-mean window in units of t1
    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Parse + validate; reports every validation problem at once, not just the
// first, in the exception message.
ScenarioConfig parse_scenario(const std::string& path);
ScenarioConfig parse_scenario_text(const std::string& text);
std::string config_to_json_text(const ScenarioConfig& config);

struct StationaryBlock {
    double omega_s_bare = 0.0;  // after zero-detuning resolution
    double omega_tilde = 0.0;   // line-shape center
    double delta_omega_stat = 0.0;
    double gamma_stat = 0.0;
    double golden_rule = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double expansion_parameter = 0.0; // gamma_stat / gamma
    bool separation_warning = false;
};

struct ModelResult {
    dynamics::RateModelKind kind = dynamics::RateModelKind::markov;
    dynamics::ShiftRateTrajectory trajectory;
    dynamics::AmplitudeSeries amplitude;
    std::vector<dynamics::CorrelationSeries> correlations;
    std::vector<std::string> warnings;
};

struct ResultBundle {
    ScenarioConfig config; // echo
    StationaryBlock stationary;
    assembly::RegimeReport regimes;
    std::vector<double> grid;
    std::vector<ModelResult> models;
    // Trailing-mean product rates and the population re-integrated from them
    // (present when the product model ran).
    std::optional<dynamics::ShiftRateTrajectory> product_average;
    std::optional<dynamics::AmplitudeSeries> product_average_amplitude;
    std::vector<std::string> warnings;
};

ResultBundle run_scenario(const ScenarioConfig& config);

struct EmitOptions {
    bool split_windows = false; // extra short/intermediate/large CSVs per model
};

// Writes <kind>.csv per model, <kind>_corr_<ab>.csv per correlation,
// product_timeavg.csv when available, and report.json.
std::vector<std::string> emit(const ResultBundle& bundle, const std::string& directory,
                              const EmitOptions& opts = {});

// Reference scenario: Drude–Lorentz environment with zero detuning and
// omega_s + dw_stat = 100 Gamma_stat = 10 gamma, in units Gamma_stat = 1.
ScenarioConfig fig2_preset();

// Compatibility verdicts for a full Lorentzian vs a one-sided peak.
std::string fig1_demo_report();

} // namespace qdecay::scenario
