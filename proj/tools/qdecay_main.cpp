// qdecay — level shifts, decay rates and correlation functions of a
// two-level open system across all timescales.
//
// Subcommands:
//   run <config.json>   execute a scenario file
//   fig2                reference four-model comparison (zero-detuned
//                       Drude–Lorentz environment, units Gamma_stat = 1)
//   fig1-demo           compatibility verdicts for Lorentzian vs one-sided
//                       spectra
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdecay/scenario.hpp"
#include "qdecay/series_io.hpp"

namespace {

void print_summary(const qdecay::scenario::ResultBundle& bundle,
                   const std::vector<std::string>& files) {
    using qdecay::io::format_double;
    const auto& s = bundle.stationary;
    std::cout << "stationary: omega_s=" << format_double(s.omega_s_bare)
              << " omega_tilde=" << format_double(s.omega_tilde)
              << " dw_stat=" << format_double(s.delta_omega_stat)
              << " gamma_stat=" << format_double(s.gamma_stat) << "\n";
    std::cout << "transition times: t1=" << format_double(s.t1) << " t2=" << format_double(s.t2)
              << "  (expansion parameter " << format_double(s.expansion_parameter) << ")\n";
    std::size_t counts[3] = {0, 0, 0};
    for (auto label : bundle.regimes.labels) counts[static_cast<int>(label)]++;
    std::cout << "regimes on grid: transient=" << counts[0] << " markovian=" << counts[1]
              << " algebraic=" << counts[2] << "\n";
    for (const auto& w : bundle.warnings) std::cout << "warning: " << w << "\n";
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
}

int run_bundle(qdecay::scenario::ScenarioConfig config, const std::string& out_override,
               bool split_windows, bool echo) {
    if (!out_override.empty()) config.output.directory = out_override;
    if (echo) {
        std::cout << "-- config --\n"
                  << qdecay::scenario::config_to_json_text(config) << "-- end config --\n";
    }
    const auto bundle = qdecay::scenario::run_scenario(config);
    const auto files =
        qdecay::scenario::emit(bundle, config.output.directory, {.split_windows = split_windows});
    print_summary(bundle, files);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-level open-system decay across timescales"};
    app.require_subcommand(1);

    double tolerance = 1.0;
    std::size_t grid_points = 0;
    long seed = 0;
    app.add_option("--tolerance", tolerance,
                   "scale factor applied to the integration tolerances (default 1)")
        ->check(CLI::PositiveNumber);
    app.add_option("--grid-points", grid_points, "override the number of base grid points");
    app.add_option("--seed", seed, "reserved; the pipeline is deterministic and ignores it");

    std::string config_path;
    auto* cmd_run = app.add_subcommand("run", "execute a scenario config file");
    cmd_run->add_option("config", config_path, "scenario JSON file")->required();

    std::string fig2_out;
    std::vector<std::string> fig2_models;
    auto* cmd_fig2 = app.add_subcommand("fig2", "reference four-model comparison");
    cmd_fig2->add_option("--out", fig2_out, "output directory (default fig2_out)");
    cmd_fig2->add_option("--models", fig2_models,
                         "subset of {markov,wwa,tcl2,lrt,product}");

    auto* cmd_fig1 = app.add_subcommand("fig1-demo", "spectrum compatibility verdicts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.count("--seed") > 0) {
            std::cout << "note: --seed is reserved; outputs are deterministic\n";
        }
        if (cmd_fig1->parsed()) {
            std::cout << qdecay::scenario::fig1_demo_report();
            return 0;
        }
        qdecay::scenario::ScenarioConfig config;
        bool split_windows = false;
        if (cmd_run->parsed()) {
            config = qdecay::scenario::parse_scenario(config_path);
        } else {
            config = qdecay::scenario::fig2_preset();
            split_windows = true;
            if (!fig2_models.empty()) {
                config.models.clear();
                for (const auto& name : fig2_models) {
                    const auto kind = qdecay::dynamics::parse_rate_model(name);
                    if (!kind) {
                        throw qdecay::ValidationError(qdecay::ErrorKind::validation,
                                                      {.module = "cli"},
                                                      "unknown model '" + name + "'");
                    }
                    config.models.push_back(*kind);
                }
            }
        }
        config.tolerance_scale *= tolerance;
        if (grid_points > 0) config.grid.points = grid_points;
        return run_bundle(std::move(config), cmd_fig2->parsed() ? fig2_out : "", split_windows,
                          /*echo=*/true);
    } catch (const qdecay::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const qdecay::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
