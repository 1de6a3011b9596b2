// series_io.hpp — CSV serialization of sampled series.
//
// Schema (fixed): model files carry `t,dw,rate,re_c1,im_c1,p1`, correlation
// files carry `tau,re_c,im_c,abs_c`. All floating-point values are written
// with 17 significant digits so a parse-back reproduces the doubles exactly.

#pragma once

#include <string>
#include <vector>

#include "qdecay/dynamics.hpp"

namespace qdecay::io {

std::string format_double(double v); // %.17g

struct ModelCsv {
    std::vector<double> t, dw, rate, re_c1, im_c1, p1;
};

struct CorrelationCsv {
    std::vector<double> tau, re_c, im_c, abs_c;
};

void write_model_csv(const std::string& path, const dynamics::ShiftRateTrajectory& trajectory,
                     const dynamics::AmplitudeSeries& amplitude);

// Same schema restricted to an index range [begin, end) of the grid.
void write_model_csv_window(const std::string& path,
                            const dynamics::ShiftRateTrajectory& trajectory,
                            const dynamics::AmplitudeSeries& amplitude, std::size_t begin,
                            std::size_t end);

void write_correlation_csv(const std::string& path, const dynamics::CorrelationSeries& series);

ModelCsv read_model_csv(const std::string& path);
CorrelationCsv read_correlation_csv(const std::string& path);

} // namespace qdecay::io
