#include "qdecay/series_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qdecay/errors.hpp"

namespace qdecay::io {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError(ErrorKind::io, {.module = "series_io"}, "cannot write " + path);
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError(ErrorKind::io, {.module = "series_io"}, "cannot read " + path);
    }
    return in;
}

std::vector<std::vector<double>> read_csv_columns(const std::string& path, std::size_t ncols) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError(ErrorKind::io, {.module = "series_io"}, path + ": empty file");
    }
    std::vector<std::vector<double>> cols(ncols);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        for (std::size_t c = 0; c < ncols; ++c) {
            double v = 0.0;
            if (!(row >> v)) {
                throw ValidationError(ErrorKind::io, {.module = "series_io"},
                                      path + ":" + std::to_string(lineno) + ": expected " +
                                          std::to_string(ncols) + " columns");
            }
            cols[c].push_back(v);
        }
    }
    return cols;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_model_csv(const std::string& path, const dynamics::ShiftRateTrajectory& trajectory,
                     const dynamics::AmplitudeSeries& amplitude) {
    write_model_csv_window(path, trajectory, amplitude, 0, trajectory.t.size());
}

void write_model_csv_window(const std::string& path,
                            const dynamics::ShiftRateTrajectory& trajectory,
                            const dynamics::AmplitudeSeries& amplitude, std::size_t begin,
                            std::size_t end) {
    if (trajectory.t.size() != amplitude.t.size()) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "series_io"},
                              "trajectory and amplitude grids differ");
    }
    auto out = open_out(path);
    out << "t,dw,rate,re_c1,im_c1,p1\n";
    for (std::size_t i = begin; i < end; ++i) {
        out << format_double(trajectory.t[i]) << ',' << format_double(trajectory.shift[i]) << ','
            << format_double(trajectory.rate[i]) << ',' << format_double(amplitude.c1[i].real())
            << ',' << format_double(amplitude.c1[i].imag()) << ','
            << format_double(amplitude.p1[i]) << '\n';
    }
}

void write_correlation_csv(const std::string& path, const dynamics::CorrelationSeries& series) {
    auto out = open_out(path);
    out << "tau,re_c,im_c,abs_c\n";
    for (std::size_t i = 0; i < series.tau.size(); ++i) {
        out << format_double(series.tau[i]) << ',' << format_double(series.values[i].real())
            << ',' << format_double(series.values[i].imag()) << ','
            << format_double(std::abs(series.values[i])) << '\n';
    }
}

ModelCsv read_model_csv(const std::string& path) {
    auto cols = read_csv_columns(path, 6);
    return {std::move(cols[0]), std::move(cols[1]), std::move(cols[2]),
            std::move(cols[3]), std::move(cols[4]), std::move(cols[5])};
}

CorrelationCsv read_correlation_csv(const std::string& path) {
    auto cols = read_csv_columns(path, 4);
    return {std::move(cols[0]), std::move(cols[1]), std::move(cols[2]), std::move(cols[3])};
}

} // namespace qdecay::io
