#include "qdecay/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "qdecay/assembly.hpp"
#include "qdecay/quad.hpp"

namespace qdecay::dynamics {

namespace {

int sign_of(char op, const char* role) {
    if (op == '+') return +1;
    if (op == '-') return -1;
    throw ValidationError(ErrorKind::invalid_input, {.module = "dynamics"},
                          std::string(role) + " operator must be '+' or '-'");
}

// eta = +1 when the pair mixes raising and lowering, -1 for equal operators.
int shift_parity(char op_a, char op_b) { return op_a == op_b ? -1 : +1; }

void require_grid_from_zero(std::span<const double> grid, const char* what) {
    if (grid.empty() || grid.front() != 0.0) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "dynamics"},
                              std::string(what) + " must start at 0");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1]) || !std::isfinite(grid[i])) {
            throw ValidationError(ErrorKind::invalid_input,
                                  {.module = "dynamics", .time = grid[i]},
                                  std::string(what) + " must increase strictly");
        }
    }
}

} // namespace

std::string to_string(RateModelKind kind) {
    switch (kind) {
        case RateModelKind::markov: return "markov";
        case RateModelKind::wwa: return "wwa";
        case RateModelKind::tcl2: return "tcl2";
        case RateModelKind::lrt: return "lrt";
        case RateModelKind::product: return "product";
    }
    return "unknown";
}

std::optional<RateModelKind> parse_rate_model(const std::string& name) {
    if (name == "markov") return RateModelKind::markov;
    if (name == "wwa") return RateModelKind::wwa;
    if (name == "tcl2") return RateModelKind::tcl2;
    if (name == "lrt") return RateModelKind::lrt;
    if (name == "product") return RateModelKind::product;
    return std::nullopt;
}

RateModel RateModel::markov(double omega_s, const tcl::ShiftRatePair& stationary) {
    return RateModel(RateModelKind::markov, omega_s, stationary);
}

RateModel RateModel::wwa(double omega_s, const tcl::ShiftRatePair& stationary) {
    return RateModel(RateModelKind::wwa, omega_s, stationary);
}

RateModel RateModel::tcl2(tcl::SystemEnvironmentModel system,
                          const tcl::ShiftRatePair& stationary) {
    RateModel m(RateModelKind::tcl2, system.omega_s(), stationary);
    m.system_ = std::move(system);
    return m;
}

RateModel RateModel::lrt(double omega_s, lrt::LineShape shape) {
    RateModel m(RateModelKind::lrt, omega_s,
                {shape.omega_tilde() - omega_s, shape.gamma()});
    m.shape_ = std::move(shape);
    return m;
}

RateModel RateModel::product(tcl::SystemEnvironmentModel system, lrt::LineShape shape,
                             const tcl::ShiftRatePair& stationary) {
    RateModel m(RateModelKind::product, system.omega_s(), stationary);
    m.shift_degenerate_ = assembly::stationary_shift_degenerate(stationary);
    m.system_ = std::move(system);
    m.shape_ = std::move(shape);
    return m;
}

tcl::ShiftRatePair RateModel::shift_rate(double t) const {
    switch (kind_) {
        case RateModelKind::markov:
        case RateModelKind::wwa:
            return stationary_;
        case RateModelKind::tcl2:
            return system_->tcl2_shift_rate(t);
        case RateModelKind::lrt:
            return shape_->shift_rate(omega_s_, t).pair;
        case RateModelKind::product: {
            const tcl::ShiftRatePair a = system_->tcl2_shift_rate(t);
            const tcl::ShiftRatePair b = shape_->shift_rate(omega_s_, t).pair;
            if (shift_degenerate_) {
                return {0.0, assembly::product_rate(a, b, stationary_)};
            }
            return assembly::product_shift_rate(a, b, stationary_);
        }
    }
    return {};
}

GeneratorIntegrals accumulate_generator(const RateModel& model, std::span<const double> grid,
                                        const IntegrationOptions& opts) {
    require_grid_from_zero(grid, "grid");
    GeneratorIntegrals out;
    out.t.assign(grid.begin(), grid.end());
    out.shift_integral.resize(grid.size(), 0.0);
    out.rate_integral.resize(grid.size(), 0.0);

    if (model.constant()) {
        const tcl::ShiftRatePair c = model.stationary();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out.shift_integral[i] = c.shift * grid[i];
            out.rate_integral[i] = c.rate * grid[i];
        }
        return out;
    }

    auto packed = [&model](double s) {
        const tcl::ShiftRatePair p = model.shift_rate(s);
        return std::complex<double>(p.shift, p.rate);
    };
    double acc_shift = 0.0;
    double acc_rate = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const quad::Spec spec{.rel_tol = opts.rel_tol,
                              .abs_tol = opts.abs_tol,
                              .max_depth = opts.max_depth,
                              .label = "generator(" + to_string(model.kind()) + ")"};
        std::complex<double> inc;
        try {
            inc = quad::integrate(packed, grid[i - 1], grid[i], spec);
        } catch (const NumericalError& e) {
            throw NumericalError(e.kind(),
                                 {.module = "dynamics", .model = to_string(model.kind()),
                                  .time = grid[i]},
                                 e.what(), e.residual());
        }
        acc_shift += inc.real();
        acc_rate += inc.imag();
        out.shift_integral[i] = acc_shift;
        out.rate_integral[i] = acc_rate;
    }
    return out;
}

AmplitudeSeries amplitude_from_integrals(const RateModel& model, const GeneratorIntegrals& gi) {
    AmplitudeSeries series;
    series.t = gi.t;
    series.c1.reserve(gi.t.size());
    const double ws = model.omega_s();
    for (std::size_t i = 0; i < gi.t.size(); ++i) {
        const double phase = ws * gi.t[i] + gi.shift_integral[i];
        series.c1.push_back(std::exp(std::complex<double>(-0.5 * gi.rate_integral[i], -phase)));
    }
    series.p1.reserve(gi.t.size());
    for (const auto& c : series.c1) series.p1.push_back(std::norm(c));
    return series;
}

AmplitudeSeries integrate_amplitude(const RateModel& model, std::span<const double> grid,
                                    const IntegrationOptions& opts) {
    require_grid_from_zero(grid, "grid");
    if (model.kind() == RateModelKind::lrt && opts.lrt_direct) {
        AmplitudeSeries series;
        series.t.assign(grid.begin(), grid.end());
        series.c1.reserve(grid.size());
        for (double t : grid) series.c1.push_back(model.line_shape()->c1(t));
        series.p1.reserve(grid.size());
        for (const auto& c : series.c1) series.p1.push_back(std::norm(c));
        return series;
    }
    return amplitude_from_integrals(model, accumulate_generator(model, grid, opts));
}

std::vector<double> population(const AmplitudeSeries& series) {
    std::vector<double> p;
    p.reserve(series.c1.size());
    for (const auto& c : series.c1) p.push_back(std::norm(c));
    return p;
}

ShiftRateTrajectory sample_trajectory(const RateModel& model, std::span<const double> grid) {
    ShiftRateTrajectory traj;
    traj.kind = model.kind();
    traj.stationary = model.stationary();
    traj.t.assign(grid.begin(), grid.end());
    traj.shift.reserve(grid.size());
    traj.rate.reserve(grid.size());
    for (double t : grid) {
        const tcl::ShiftRatePair p = model.shift_rate(t);
        traj.shift.push_back(p.shift);
        traj.rate.push_back(p.rate);
    }
    return traj;
}

CorrelationSeries correlation_from_integrals(const RateModel& model, const GeneratorIntegrals& gi,
                                             char op_a, char op_b,
                                             std::complex<double> base_value) {
    const int sa = sign_of(op_a, "first");
    sign_of(op_b, "second");
    const int eta = shift_parity(op_a, op_b);
    CorrelationSeries series;
    series.op_a = op_a;
    series.op_b = op_b;
    series.base_value = base_value;
    series.tau = gi.t;
    series.values.reserve(gi.t.size());
    const double ws = model.omega_s();
    for (std::size_t i = 0; i < gi.t.size(); ++i) {
        const double phase = sa * (ws * gi.t[i] + eta * gi.shift_integral[i]);
        series.values.push_back(
            base_value * std::exp(std::complex<double>(-0.5 * gi.rate_integral[i], phase)));
    }
    return series;
}

CorrelationSeries correlation_sigma(const RateModel& model, char op_a, char op_b,
                                    std::complex<double> base_value,
                                    std::span<const double> delays,
                                    const IntegrationOptions& opts) {
    require_grid_from_zero(delays, "delays");
    return correlation_from_integrals(model, accumulate_generator(model, delays, opts), op_a,
                                      op_b, base_value);
}

CorrelationSeries dipole_correlation_ground(const RateModel& model,
                                            std::span<const double> delays, double dipole_sq,
                                            const IntegrationOptions& opts) {
    return correlation_sigma(model, '-', '+', {dipole_sq, 0.0}, delays, opts);
}

double markov_population(const tcl::ShiftRatePair& stationary, double t) {
    return std::exp(-stationary.rate * t);
}

std::complex<double> markov_correlation(double omega_s, const tcl::ShiftRatePair& stationary,
                                        char op_a, char op_b, std::complex<double> base_value,
                                        double tau) {
    const int sa = sign_of(op_a, "first");
    sign_of(op_b, "second");
    const int eta = shift_parity(op_a, op_b);
    const double phase = sa * (omega_s + eta * stationary.shift) * tau;
    return base_value * std::exp(std::complex<double>(-0.5 * stationary.rate * tau, phase));
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "dynamics"},
                              "log grid requires 0 < lo < hi and n >= 2");
    }
    std::vector<double> g(n);
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
    g.back() = hi;
    return g;
}

std::vector<double> default_grid(double gamma, double t1, double t2, std::size_t points,
                                 double t_max_factor) {
    const double t_min = 1e-2 / gamma;
    const double t_max = t_max_factor * t2;
    std::vector<double> g = log_grid(t_min, t_max, points);

    // Linear refinement windows around the two transition times.
    auto add_linear = [&g](double lo, double hi, std::size_t n) {
        for (std::size_t i = 0; i <= n; ++i)
            g.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
    };
    add_linear(0.3 * t1, 3.0 * t1, 48);
    add_linear(0.8 * t2, 1.25 * t2, 160);
    g.push_back(t1);
    g.push_back(t2);

    std::sort(g.begin(), g.end());
    std::vector<double> out{0.0};
    for (double t : g) {
        if (t > out.back() * (1.0 + 1e-13) || out.back() == 0.0) out.push_back(t);
    }
    return out;
}

} // namespace qdecay::dynamics
