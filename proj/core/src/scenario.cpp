#include "qdecay/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

#include "qdecay/lrt.hpp"
#include "qdecay/series_io.hpp"

namespace qdecay::scenario {

using nlohmann::json;

namespace {

constexpr double kZeroDetuningRelTol = 1e-8;
constexpr int kZeroDetuningMaxIters = 5;

// ---------------------------------------------------------------- parsing --

void check_known_keys(const json& obj, std::initializer_list<const char*> known,
                      const std::string& where, std::vector<std::string>& errors) {
    for (const auto& item : obj.items()) {
        if (std::find_if(known.begin(), known.end(), [&](const char* k) {
                return item.key() == k;
            }) == known.end()) {
            errors.push_back(where + ": unknown key '" + item.key() + "'");
        }
    }
}

std::optional<double> read_number(const json& obj, const char* key, const std::string& where,
                                  std::vector<std::string>& errors) {
    if (!obj.contains(key)) return std::nullopt;
    if (!obj[key].is_number()) {
        errors.push_back(where + "." + key + ": expected a number");
        return std::nullopt;
    }
    return obj[key].get<double>();
}

ScenarioConfig parse_json(const json& root) {
    std::vector<std::string> errors;
    ScenarioConfig config;

    if (!root.is_object()) {
        throw ValidationError(ErrorKind::validation, {.module = "cli"},
                              "config root must be a JSON object");
    }
    check_known_keys(root,
                     {"system", "environment", "line_shape", "grid", "models", "correlations",
                      "output", "tolerance_scale", "average_window_factor"},
                     "config", errors);

    // -- system
    if (!root.contains("system") || !root["system"].is_object()) {
        errors.push_back("system: required object missing");
    } else {
        const json& sys = root["system"];
        check_known_keys(sys, {"omega_s", "coupling"}, "system", errors);
        if (auto v = read_number(sys, "omega_s", "system", errors)) {
            config.system.omega_s = *v;
        } else {
            errors.push_back("system.omega_s: required");
        }
        if (auto v = read_number(sys, "coupling", "system", errors)) config.system.coupling = *v;
        if (!(config.system.omega_s > 0.0) || !std::isfinite(config.system.omega_s)) {
            errors.push_back("system.omega_s: must be finite and > 0");
        }
        if (!(config.system.coupling > 0.0) || !std::isfinite(config.system.coupling)) {
            errors.push_back("system.coupling: must be finite and > 0");
        }
    }

    // -- environment
    if (!root.contains("environment") || !root["environment"].is_object()) {
        errors.push_back("environment: required object missing");
    } else {
        const json& env = root["environment"];
        check_known_keys(env,
                         {"kind", "center", "width", "weight", "gamma_target", "zero_detuning",
                          "table"},
                         "environment", errors);
        const std::string kind = env.value("kind", "drude_lorentz");
        if (kind == "drude_lorentz") {
            config.environment.kind = spectral::Kind::drude_lorentz;
        } else if (kind == "full_lorentzian") {
            config.environment.kind = spectral::Kind::full_lorentzian;
        } else if (kind == "tabulated") {
            config.environment.kind = spectral::Kind::tabulated;
        } else {
            errors.push_back("environment.kind: unknown kind '" + kind + "'");
        }
        if (auto v = read_number(env, "center", "environment", errors))
            config.environment.center = *v;
        if (auto v = read_number(env, "width", "environment", errors))
            config.environment.width = *v;
        config.environment.weight = read_number(env, "weight", "environment", errors);
        config.environment.gamma_target = read_number(env, "gamma_target", "environment", errors);
        config.environment.zero_detuning = env.value("zero_detuning", false);
        config.environment.table_path = env.value("table", "");

        if (config.environment.weight && config.environment.gamma_target) {
            errors.push_back(
                "environment: 'weight' and 'gamma_target' are mutually exclusive; supply exactly "
                "one");
        }
        if (!config.environment.weight && !config.environment.gamma_target) {
            errors.push_back("environment: one of 'weight' or 'gamma_target' is required");
        }
        if (config.environment.weight && !(*config.environment.weight > 0.0)) {
            errors.push_back("environment.weight: must be > 0");
        }
        if (config.environment.gamma_target && !(*config.environment.gamma_target > 0.0)) {
            errors.push_back("environment.gamma_target: must be > 0");
        }
        if (config.environment.kind == spectral::Kind::tabulated) {
            if (config.environment.table_path.empty()) {
                errors.push_back("environment.table: required for kind 'tabulated'");
            }
        } else {
            if (!(config.environment.center > 0.0)) {
                errors.push_back("environment.center: must be > 0");
            }
            if (!(config.environment.width > 0.0)) {
                errors.push_back("environment.width: must be > 0");
            }
        }
    }

    // -- line_shape
    if (root.contains("line_shape")) {
        const json& ls = root["line_shape"];
        if (!ls.is_object()) {
            errors.push_back("line_shape: expected an object");
        } else {
            check_known_keys(ls, {"omega_tilde", "gamma"}, "line_shape", errors);
            config.line_shape.omega_tilde = read_number(ls, "omega_tilde", "line_shape", errors);
            config.line_shape.gamma = read_number(ls, "gamma", "line_shape", errors);
        }
    }

    // -- grid
    if (root.contains("grid")) {
        const json& grid = root["grid"];
        if (!grid.is_object()) {
            errors.push_back("grid: expected an object");
        } else {
            check_known_keys(grid, {"t_min", "t_max", "points", "spacing", "refine"}, "grid",
                             errors);
            config.grid.t_min = read_number(grid, "t_min", "grid", errors);
            config.grid.t_max = read_number(grid, "t_max", "grid", errors);
            if (grid.contains("points")) {
                if (!grid["points"].is_number_unsigned() || grid["points"].get<std::size_t>() < 2) {
                    errors.push_back("grid.points: expected an integer >= 2");
                } else {
                    config.grid.points = grid["points"].get<std::size_t>();
                }
            }
            const std::string spacing = grid.value("spacing", "log");
            if (spacing == "log") {
                config.grid.spacing = GridSpacing::log_spaced;
            } else if (spacing == "linear") {
                config.grid.spacing = GridSpacing::linear;
            } else {
                errors.push_back("grid.spacing: expected 'log' or 'linear'");
            }
            config.grid.refine = grid.value("refine", true);
            if (config.grid.t_min && !(*config.grid.t_min > 0.0)) {
                errors.push_back("grid.t_min: must be > 0");
            }
            if (config.grid.t_min && config.grid.t_max &&
                !(*config.grid.t_max > *config.grid.t_min)) {
                errors.push_back("grid: t_max must exceed t_min (non-increasing grid)");
            }
        }
    }

    // -- models
    if (!root.contains("models") || !root["models"].is_array() || root["models"].empty()) {
        errors.push_back("models: required non-empty array");
    } else {
        for (const auto& m : root["models"]) {
            if (!m.is_string()) {
                errors.push_back("models: entries must be strings");
                continue;
            }
            if (auto kind = dynamics::parse_rate_model(m.get<std::string>())) {
                config.models.push_back(*kind);
            } else {
                errors.push_back("models: unknown model '" + m.get<std::string>() + "'");
            }
        }
    }

    // -- correlations
    if (root.contains("correlations")) {
        if (!root["correlations"].is_array()) {
            errors.push_back("correlations: expected an array");
        } else {
            for (const auto& c : root["correlations"]) {
                CorrelationRequest req;
                if (!c.is_object() || !c.contains("pair") || !c["pair"].is_string()) {
                    errors.push_back("correlations: each entry needs a 'pair' string");
                    continue;
                }
                check_known_keys(c, {"pair", "base"}, "correlations", errors);
                const std::string pair = c["pair"].get<std::string>();
                if (pair.size() != 2 || (pair[0] != '+' && pair[0] != '-') ||
                    (pair[1] != '+' && pair[1] != '-')) {
                    errors.push_back("correlations.pair: expected two of '+'/'-', got '" + pair +
                                     "'");
                    continue;
                }
                req.op_a = pair[0];
                req.op_b = pair[1];
                if (c.contains("base")) {
                    if (c["base"].is_number()) {
                        req.base_value = {c["base"].get<double>(), 0.0};
                    } else if (c["base"].is_array() && c["base"].size() == 2 &&
                               c["base"][0].is_number() && c["base"][1].is_number()) {
                        req.base_value = {c["base"][0].get<double>(), c["base"][1].get<double>()};
                    } else {
                        errors.push_back("correlations.base: expected a number or [re, im]");
                    }
                }
                config.correlations.push_back(req);
            }
        }
    }

    // -- output
    if (root.contains("output")) {
        const json& out = root["output"];
        if (!out.is_object()) {
            errors.push_back("output: expected an object");
        } else {
            check_known_keys(out, {"directory", "formats"}, "output", errors);
            config.output.directory = out.value("directory", config.output.directory);
            if (out.contains("formats")) {
                if (!out["formats"].is_array()) {
                    errors.push_back("output.formats: expected an array");
                } else {
                    config.output.formats.clear();
                    for (const auto& f : out["formats"]) {
                        const std::string name = f.is_string() ? f.get<std::string>() : "";
                        if (name != "csv" && name != "json") {
                            errors.push_back("output.formats: unknown format '" + name + "'");
                        } else {
                            config.output.formats.push_back(name);
                        }
                    }
                }
            }
        }
    }

    if (auto v = read_number(root, "tolerance_scale", "config", errors)) {
        config.tolerance_scale = *v;
        if (!(config.tolerance_scale > 0.0)) {
            errors.push_back("tolerance_scale: must be > 0");
        }
    }
    if (auto v = read_number(root, "average_window_factor", "config", errors)) {
        config.average_window_factor = *v;
        if (!(config.average_window_factor > 0.0)) {
            errors.push_back("average_window_factor: must be > 0");
        }
    }

    if (!errors.empty()) {
        std::string joined = "config invalid (" + std::to_string(errors.size()) + " problems):";
        for (const auto& e : errors) joined += "\n  - " + e;
        throw ValidationError(ErrorKind::validation, {.module = "cli"}, joined);
    }
    return config;
}

json config_to_json(const ScenarioConfig& config) {
    json root;
    root["system"] = {{"omega_s", config.system.omega_s}, {"coupling", config.system.coupling}};
    json env;
    env["kind"] = spectral::to_string(config.environment.kind);
    env["center"] = config.environment.center;
    env["width"] = config.environment.width;
    if (config.environment.weight) env["weight"] = *config.environment.weight;
    if (config.environment.gamma_target) env["gamma_target"] = *config.environment.gamma_target;
    env["zero_detuning"] = config.environment.zero_detuning;
    if (!config.environment.table_path.empty()) env["table"] = config.environment.table_path;
    root["environment"] = env;
    if (config.line_shape.omega_tilde || config.line_shape.gamma) {
        json ls;
        if (config.line_shape.omega_tilde) ls["omega_tilde"] = *config.line_shape.omega_tilde;
        if (config.line_shape.gamma) ls["gamma"] = *config.line_shape.gamma;
        root["line_shape"] = ls;
    }
    json grid;
    if (config.grid.t_min) grid["t_min"] = *config.grid.t_min;
    if (config.grid.t_max) grid["t_max"] = *config.grid.t_max;
    grid["points"] = config.grid.points;
    grid["spacing"] = config.grid.spacing == GridSpacing::log_spaced ? "log" : "linear";
    grid["refine"] = config.grid.refine;
    root["grid"] = grid;
    json models = json::array();
    for (auto kind : config.models) models.push_back(dynamics::to_string(kind));
    root["models"] = models;
    json correlations = json::array();
    for (const auto& c : config.correlations) {
        correlations.push_back({{"pair", std::string{c.op_a, c.op_b}},
                                {"base", {c.base_value.real(), c.base_value.imag()}}});
    }
    root["correlations"] = correlations;
    root["output"] = {{"directory", config.output.directory},
                      {"formats", config.output.formats}};
    root["tolerance_scale"] = config.tolerance_scale;
    root["average_window_factor"] = config.average_window_factor;
    return root;
}

// -------------------------------------------------------------- execution --

spectral::SpectralDensity base_spectrum(const EnvironmentSection& env) {
    const double weight = env.weight.value_or(1.0);
    switch (env.kind) {
        case spectral::Kind::drude_lorentz:
            return spectral::SpectralDensity::drude_lorentz(env.center, env.width, weight);
        case spectral::Kind::full_lorentzian:
            return spectral::SpectralDensity::full_lorentzian(env.center, env.width, weight);
        case spectral::Kind::tabulated:
            return spectral::SpectralDensity::tabulated_from_csv(env.table_path, weight);
    }
    throw ValidationError(ErrorKind::validation, {.module = "cli"}, "unreachable spectrum kind");
}

std::vector<double> build_grid(const GridSection& section, double gamma, double t1, double t2) {
    const double t_min = section.t_min.value_or(1e-2 / gamma);
    const double t_max = section.t_max.value_or(10.0 * t2);
    if (!(t_min > 0.0) || !(t_max > t_min)) {
        throw ValidationError(ErrorKind::validation, {.module = "cli"},
                              "grid: need 0 < t_min < t_max");
    }
    std::vector<double> g;
    if (section.spacing == GridSpacing::log_spaced) {
        g = dynamics::log_grid(t_min, t_max, section.points);
    } else {
        g.resize(section.points);
        for (std::size_t i = 0; i < section.points; ++i) {
            g[i] = t_min + (t_max - t_min) * static_cast<double>(i) /
                               static_cast<double>(section.points - 1);
        }
    }
    if (section.refine) {
        auto add_linear = [&](double lo, double hi, std::size_t n) {
            lo = std::max(lo, t_min);
            hi = std::min(hi, t_max);
            if (!(hi > lo)) return;
            for (std::size_t i = 0; i <= n; ++i) {
                g.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
            }
        };
        add_linear(0.3 * t1, 3.0 * t1, 48);
        add_linear(0.8 * t2, 1.25 * t2, 160);
        if (t1 > t_min && t1 < t_max) g.push_back(t1);
        if (t2 > t_min && t2 < t_max) g.push_back(t2);
    }
    std::sort(g.begin(), g.end());
    std::vector<double> out{0.0};
    for (double t : g) {
        if (out.back() == 0.0 || t > out.back() * (1.0 + 1e-13)) out.push_back(t);
    }
    return out;
}

dynamics::RateModel build_rate_model(dynamics::RateModelKind kind, double omega_s,
                                     const tcl::ShiftRatePair& stationary,
                                     const tcl::SystemEnvironmentModel& system,
                                     const lrt::LineShape& shape) {
    using dynamics::RateModel;
    using dynamics::RateModelKind;
    switch (kind) {
        case RateModelKind::markov: return RateModel::markov(omega_s, stationary);
        case RateModelKind::wwa: return RateModel::wwa(omega_s, stationary);
        case RateModelKind::tcl2: return RateModel::tcl2(system, stationary);
        case RateModelKind::lrt: return RateModel::lrt(omega_s, shape);
        case RateModelKind::product: return RateModel::product(system, shape, stationary);
    }
    throw ValidationError(ErrorKind::validation, {.module = "cli"}, "unreachable model kind");
}

std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> y) {
    std::vector<double> acc(t.size(), 0.0);
    for (std::size_t i = 1; i < t.size(); ++i) {
        acc[i] = acc[i - 1] + 0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
    }
    return acc;
}

} // namespace

ScenarioConfig parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError(ErrorKind::io, {.module = "cli"}, "cannot open config " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str());
}

ScenarioConfig parse_scenario_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(ErrorKind::validation, {.module = "cli"},
                              std::string("JSON parse error: ") + e.what());
    }
    return parse_json(root);
}

std::string config_to_json_text(const ScenarioConfig& config) {
    return config_to_json(config).dump(2) + "\n";
}

ResultBundle run_scenario(const ScenarioConfig& config) {
    ResultBundle bundle;
    bundle.config = config;

    if (config.models.empty()) {
        throw ValidationError(ErrorKind::validation, {.module = "cli"},
                              "models: at least one rate model is required");
    }

    const double g2 = config.system.coupling;
    const auto base_env = base_spectrum(config.environment);
    auto env_at = [&](double ws) {
        return config.environment.gamma_target
                   ? base_env.calibrate_weight(g2, ws, *config.environment.gamma_target)
                   : base_env;
    };

    double ws = config.system.omega_s;
    std::optional<tcl::SystemEnvironmentModel> system;
    system.emplace(ws, g2, env_at(ws));
    tcl::ShiftRatePair stationary = system->stationary_shift_rate();

    if (config.environment.zero_detuning) {
        const double center = system->env_spectrum().center();
        bool converged = false;
        for (int iter = 0; iter < kZeroDetuningMaxIters && !converged; ++iter) {
            const double ws_new = center - stationary.shift;
            if (!(ws_new > 0.0)) {
                throw NumericalError(ErrorKind::non_convergence, {.module = "cli"},
                                     "zero-detuning fixed point drove omega_s non-positive");
            }
            converged = std::abs(ws_new - ws) <= kZeroDetuningRelTol * std::abs(ws_new);
            ws = ws_new;
            system.emplace(ws, g2, env_at(ws));
            stationary = system->stationary_shift_rate();
        }
        if (!converged) {
            bundle.warnings.push_back(
                "cli: zero-detuning fixed point not settled to 1e-8 after 5 iterations");
        }
    }

    StationaryBlock block;
    block.omega_s_bare = ws;
    block.delta_omega_stat = stationary.shift;
    block.gamma_stat = stationary.rate;
    block.golden_rule = system->golden_rule_rate();
    block.t1 = assembly::transition_t1(stationary);
    block.t2 = assembly::transition_t2(ws, stationary);
    block.expansion_parameter = stationary.rate / system->gamma();
    block.separation_warning = block.expansion_parameter > 0.5;
    block.omega_tilde = config.line_shape.omega_tilde.value_or(ws + stationary.shift);
    if (block.separation_warning) {
        bundle.warnings.push_back("kernel_tcl: expansion parameter Gamma_stat/gamma = " +
                                  std::to_string(block.expansion_parameter) +
                                  " > 0.5; the second-order truncation is unreliable");
    }
    bundle.stationary = block;

    const lrt::LineShape shape(block.omega_tilde,
                               config.line_shape.gamma.value_or(stationary.rate));

    bundle.grid = build_grid(config.grid, system->gamma(), block.t1, block.t2);
    bundle.regimes = assembly::RegimeReport::build(bundle.grid, block.t1, block.t2);

    dynamics::IntegrationOptions opts;
    opts.rel_tol *= config.tolerance_scale;
    opts.abs_tol *= config.tolerance_scale;

    auto run_model = [&](dynamics::RateModelKind kind) {
        ModelResult result;
        result.kind = kind;
        const dynamics::RateModel model = build_rate_model(kind, ws, stationary, *system, shape);
        if (model.shift_degenerate()) {
            result.warnings.push_back(
                dynamics::to_string(kind) +
                ": stationary shift degenerate (|dw_stat| < 1e-9 Gamma_stat); emitting "
                "rate-only output with the shift column zeroed");
        }
        result.trajectory = dynamics::sample_trajectory(model, bundle.grid);
        const bool needs_integrals =
            !(model.kind() == dynamics::RateModelKind::lrt && opts.lrt_direct) ||
            !config.correlations.empty();
        std::optional<dynamics::GeneratorIntegrals> integrals;
        if (needs_integrals) {
            integrals = dynamics::accumulate_generator(model, bundle.grid, opts);
        }
        if (model.kind() == dynamics::RateModelKind::lrt && opts.lrt_direct) {
            result.amplitude = dynamics::integrate_amplitude(model, bundle.grid, opts);
        } else {
            result.amplitude = dynamics::amplitude_from_integrals(model, *integrals);
        }
        for (const auto& req : config.correlations) {
            result.correlations.push_back(dynamics::correlation_from_integrals(
                model, *integrals, req.op_a, req.op_b, req.base_value));
        }
        return result;
    };

    std::vector<std::future<ModelResult>> futures;
    futures.reserve(config.models.size());
    for (auto kind : config.models) {
        futures.push_back(std::async(std::launch::async, run_model, kind));
    }
    std::vector<std::string> failures;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        try {
            bundle.models.push_back(futures[i].get());
        } catch (const Error& e) {
            failures.push_back(dynamics::to_string(config.models[i]) + ": " + e.what());
        }
    }
    if (!failures.empty()) {
        std::string joined = "model runs failed:";
        for (const auto& f : failures) joined += "\n  - " + f;
        throw NumericalError(ErrorKind::quadrature_failure, {.module = "cli"}, joined);
    }
    for (const auto& m : bundle.models) {
        for (const auto& w : m.warnings) bundle.warnings.push_back(w);
    }

    // Trailing-mean product rates plus the population re-integrated from them
    // (trapezoid on the sampled averages; this is a plot-level smoothing, not
    // part of the quadrature contract).
    const auto product_it =
        std::find_if(bundle.models.begin(), bundle.models.end(), [](const ModelResult& m) {
            return m.kind == dynamics::RateModelKind::product;
        });
    if (product_it != bundle.models.end()) {
        const double window = config.average_window_factor * block.t1;
        dynamics::ShiftRateTrajectory avg = product_it->trajectory;
        avg.shift = assembly::trailing_mean(avg.t, avg.shift, window);
        avg.rate = assembly::trailing_mean(avg.t, avg.rate, window);
        dynamics::AmplitudeSeries amp;
        amp.t = avg.t;
        const auto shift_acc = cumulative_trapezoid(avg.t, avg.shift);
        const auto rate_acc = cumulative_trapezoid(avg.t, avg.rate);
        amp.c1.reserve(avg.t.size());
        for (std::size_t i = 0; i < avg.t.size(); ++i) {
            const double phase = ws * avg.t[i] + shift_acc[i];
            amp.c1.push_back(std::exp(std::complex<double>(-0.5 * rate_acc[i], -phase)));
            amp.p1.push_back(std::norm(amp.c1.back()));
        }
        bundle.product_average = std::move(avg);
        bundle.product_average_amplitude = std::move(amp);
    }

    return bundle;
}

std::vector<std::string> emit(const ResultBundle& bundle, const std::string& directory,
                              const EmitOptions& opts) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec) {
        throw ValidationError(ErrorKind::io, {.module = "cli"},
                              "cannot create output directory " + directory + ": " + ec.message());
    }

    const auto& formats = bundle.config.output.formats;
    const bool want_csv = std::find(formats.begin(), formats.end(), "csv") != formats.end();
    const bool want_json = std::find(formats.begin(), formats.end(), "json") != formats.end();

    std::vector<std::string> written;
    auto pair_tag = [](char a, char b) {
        auto tag = [](char c) { return c == '+' ? 'p' : 'm'; };
        return std::string{tag(a), tag(b)};
    };

    if (want_csv) {
        for (const auto& model : bundle.models) {
            const std::string base = directory + "/" + dynamics::to_string(model.kind);
            io::write_model_csv(base + ".csv", model.trajectory, model.amplitude);
            written.push_back(base + ".csv");
            for (const auto& corr : model.correlations) {
                const std::string path =
                    base + "_corr_" + pair_tag(corr.op_a, corr.op_b) + ".csv";
                io::write_correlation_csv(path, corr);
                written.push_back(path);
            }
            if (opts.split_windows) {
                const auto& t = model.trajectory.t;
                auto window_range = [&](double lo, double hi) {
                    const auto b = std::lower_bound(t.begin(), t.end(), lo) - t.begin();
                    const auto e = std::upper_bound(t.begin(), t.end(), hi) - t.begin();
                    return std::pair<std::size_t, std::size_t>(b, e);
                };
                const double t1 = bundle.stationary.t1;
                const double t2 = bundle.stationary.t2;
                const struct {
                    const char* name;
                    double lo, hi;
                } windows[] = {{"short", 0.0, 3.0 * t1},
                               {"intermediate", 0.5 * t1, 2.0 * t2},
                               {"large", 0.5 * t2, t.back()}};
                for (const auto& w : windows) {
                    const auto [b, e] = window_range(w.lo, w.hi);
                    const std::string path = base + "_" + w.name + ".csv";
                    io::write_model_csv_window(path, model.trajectory, model.amplitude, b, e);
                    written.push_back(path);
                }
            }
        }
        if (bundle.product_average) {
            const std::string path = directory + "/product_timeavg.csv";
            io::write_model_csv(path, *bundle.product_average,
                                *bundle.product_average_amplitude);
            written.push_back(path);
        }
    }

    if (want_json) {
        json report;
        report["config"] = config_to_json(bundle.config);
        report["stationary"] = {{"omega_s", bundle.stationary.omega_s_bare},
                                {"omega_tilde", bundle.stationary.omega_tilde},
                                {"delta_omega_stat", bundle.stationary.delta_omega_stat},
                                {"gamma_stat", bundle.stationary.gamma_stat},
                                {"golden_rule_rate", bundle.stationary.golden_rule},
                                {"expansion_parameter", bundle.stationary.expansion_parameter},
                                {"separation_warning", bundle.stationary.separation_warning}};
        report["transition_times"] = {{"t1", bundle.stationary.t1},
                                      {"t2", bundle.stationary.t2}};
        std::size_t counts[3] = {0, 0, 0};
        for (auto label : bundle.regimes.labels) counts[static_cast<int>(label)]++;
        report["regimes"] = {
            {"boundaries",
             {{"transient_markovian", bundle.regimes.t1},
              {"markovian_algebraic", bundle.regimes.t2}}},
            {"counts",
             {{"transient", counts[0]}, {"markovian", counts[1]}, {"algebraic", counts[2]}}},
            {"grid_points", bundle.grid.size()}};
        json models = json::array();
        for (const auto& m : bundle.models) models.push_back(dynamics::to_string(m.kind));
        report["models"] = models;
        report["warnings"] = bundle.warnings;
        report["files"] = written;
        const std::string path = directory + "/report.json";
        std::ofstream out(path);
        if (!out) {
            throw ValidationError(ErrorKind::io, {.module = "cli"}, "cannot write " + path);
        }
        out << report.dump(2) << "\n";
        written.push_back(path);
    }
    return written;
}

ScenarioConfig fig2_preset() {
    ScenarioConfig config;
    config.system.omega_s = 100.0; // re-pinned by the zero-detuning fixed point
    config.system.coupling = 1.0;
    config.environment.kind = spectral::Kind::drude_lorentz;
    config.environment.center = 100.0;
    config.environment.width = 10.0;
    config.environment.gamma_target = 1.0;
    config.environment.zero_detuning = true;
    config.models = {dynamics::RateModelKind::markov, dynamics::RateModelKind::tcl2,
                     dynamics::RateModelKind::lrt, dynamics::RateModelKind::product};
    config.correlations = {CorrelationRequest{'-', '+', {1.0, 0.0}}};
    config.output.directory = "fig2_out";
    return config;
}

std::string fig1_demo_report() {
    const auto dl = spectral::SpectralDensity::drude_lorentz(10.0, 2.0, 1.0);
    const auto lor = spectral::SpectralDensity::full_lorentzian(10.0, 2.0, 1.0);
    const auto vd = dl.lrt_compatible();
    const auto vl = lor.lrt_compatible();
    std::ostringstream os;
    os << "Exponential correlation decay implies a full Lorentzian power spectrum;\n"
          "a response-function spectrum must vanish on w <= 0.\n\n";
    os << "line shape        S(-center)      negative-weight fraction   lrt_compatible\n";
    auto row = [&os](const char* name, double at_minus_center, const spectral::LrtVerdict& v) {
        os << name << std::string(18 - std::string(name).size(), ' ');
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-15.6g %-26.6g %s\n", at_minus_center,
                      v.negative_fraction, v.compatible ? "yes" : "no");
        os << buf;
    };
    row("drude_lorentz", dl.value(-dl.center()), vd);
    row("full_lorentzian", lor.value(-lor.center()), vl);
    return os.str();
}

} // namespace qdecay::scenario
