#include "qdecay/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qdecay/quad.hpp"

namespace qdecay::spectral {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLrtNegativeTolerance = 1e-9;

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "spectral"},
                              std::string(name) + " must be finite");
    }
}

void require_positive(double v, const char* name) {
    require_finite(v, name);
    if (!(v > 0.0)) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "spectral"},
                              std::string(name) + " must be > 0");
    }
}

// Fritsch–Carlson slopes: the resulting Hermite interpolant is monotone on
// every interval, hence bounded by the data and non-negative for
// non-negative tables.
std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n == 2) {
        d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
        return d;
    }
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double h0 = x[i] - x[i - 1];
            const double h1 = x[i + 1] - x[i];
            const double w0 = 2.0 * h1 + h0;
            const double w1 = h1 + 2.0 * h0;
            d[i] = (w0 + w1) / (w0 / delta[i - 1] + w1 / delta[i]);
        }
    }
    // One-sided ends, clamped to preserve shape.
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0))
            s = 3.0 * d0;
        return s;
    };
    d[0] = end_slope(x[1] - x[0], x[2] - x[1], delta[0], delta[1]);
    d[n - 1] = end_slope(x[n - 1] - x[n - 2], x[n - 2] - x[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

double hermite_eval(double x0, double x1, double y0, double y1, double d0, double d1, double x) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return y0 * (2.0 * s3 - 3.0 * s2 + 1.0) + h * d0 * (s3 - 2.0 * s2 + s) +
           y1 * (-2.0 * s3 + 3.0 * s2) + h * d1 * (s3 - s2);
}

// \int_X^inf f via u = 1/w, keeping the quadrature adaptive on a finite range.
template <typename F>
double inverted_tail(F&& f, double x, const quad::Spec& spec) {
    return quad::integrate([&](double u) { return f(1.0 / u) / (u * u); }, 0.0, 1.0 / x, spec);
}

} // namespace

std::string to_string(Kind kind) {
    switch (kind) {
        case Kind::drude_lorentz: return "drude_lorentz";
        case Kind::full_lorentzian: return "full_lorentzian";
        case Kind::tabulated: return "tabulated";
    }
    return "unknown";
}

SpectralDensity SpectralDensity::drude_lorentz(double center, double width, double weight) {
    require_positive(center, "center");
    require_positive(width, "width");
    require_positive(weight, "weight");
    SpectralDensity s;
    s.kind_ = Kind::drude_lorentz;
    s.center_ = center;
    s.width_ = width;
    s.weight_ = weight;
    return s;
}

SpectralDensity SpectralDensity::full_lorentzian(double center, double width, double weight) {
    require_positive(center, "center");
    require_positive(width, "width");
    require_positive(weight, "weight");
    SpectralDensity s;
    s.kind_ = Kind::full_lorentzian;
    s.center_ = center;
    s.width_ = width;
    s.weight_ = weight;
    return s;
}

SpectralDensity SpectralDensity::tabulated(std::vector<double> frequencies,
                                           std::vector<double> values, double weight) {
    require_positive(weight, "weight");
    if (frequencies.size() != values.size() || frequencies.size() < 2) {
        throw ValidationError(ErrorKind::validation, {.module = "spectral", .model = "tabulated"},
                              "need >= 2 (frequency, value) pairs of equal length");
    }
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        require_finite(frequencies[i], "frequency");
        require_finite(values[i], "value");
        if (values[i] < 0.0) {
            throw ValidationError(ErrorKind::validation,
                                  {.module = "spectral", .model = "tabulated"},
                                  "tabulated values must be non-negative");
        }
        if (i > 0 && !(frequencies[i] > frequencies[i - 1])) {
            throw ValidationError(ErrorKind::validation,
                                  {.module = "spectral", .model = "tabulated"},
                                  "frequency grid must be strictly increasing (row " +
                                      std::to_string(i + 1) + ")");
        }
    }
    SpectralDensity s;
    s.kind_ = Kind::tabulated;
    s.freq_ = std::move(frequencies);
    s.val_ = std::move(values);
    s.slope_ = pchip_slopes(s.freq_, s.val_);
    s.weight_ = weight;
    s.center_ = 0.5 * (s.freq_.front() + s.freq_.back());
    s.width_ = 0.5 * (s.freq_.back() - s.freq_.front());
    if (!(s.width_ > 0.0)) {
        throw ValidationError(ErrorKind::validation, {.module = "spectral", .model = "tabulated"},
                              "degenerate table support");
    }
    return s;
}

SpectralDensity SpectralDensity::tabulated_from_csv(const std::string& path, double weight) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError(ErrorKind::io, {.module = "spectral", .model = "tabulated"},
                              "cannot open " + path);
    }
    std::vector<double> freqs, vals;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double f = 0.0, v = 0.0;
        if (!(row >> f >> v)) {
            if (lineno == 1) continue; // header row
            throw ValidationError(ErrorKind::io, {.module = "spectral", .model = "tabulated"},
                                  path + ":" + std::to_string(lineno) + ": expected two numbers");
        }
        freqs.push_back(f);
        vals.push_back(v);
    }
    return tabulated(std::move(freqs), std::move(vals), weight);
}

double SpectralDensity::value(double omega) const {
    if (!std::isfinite(omega)) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "spectral",
                                                         .model = to_string(kind_)},
                              "frequency must be finite");
    }
    return value_unchecked(omega);
}

double SpectralDensity::value_unchecked(double omega) const {
    switch (kind_) {
        case Kind::drude_lorentz: {
            if (omega <= 0.0) return 0.0;
            const double a2 = center_ * center_ + 0.25 * width_ * width_;
            const double num = (2.0 / M_PI) * width_ * center_ * omega;
            const double d = a2 - omega * omega;
            return weight_ * num / (d * d + width_ * width_ * omega * omega);
        }
        case Kind::full_lorentzian: {
            const double dw = omega - center_;
            return weight_ * (width_ / (2.0 * M_PI)) / (dw * dw + 0.25 * width_ * width_);
        }
        case Kind::tabulated: {
            if (omega <= freq_.front() || omega >= freq_.back()) {
                return (omega == freq_.front() ? weight_ * val_.front()
                        : omega == freq_.back() ? weight_ * val_.back()
                                                : 0.0);
            }
            const auto it = std::upper_bound(freq_.begin(), freq_.end(), omega);
            const auto i = static_cast<std::size_t>(it - freq_.begin()) - 1;
            const double y = hermite_eval(freq_[i], freq_[i + 1], val_[i], val_[i + 1], slope_[i],
                                          slope_[i + 1], omega);
            return weight_ * std::max(y, 0.0);
        }
    }
    return 0.0;
}

double SpectralDensity::total_weight() const {
    const quad::Spec spec{.rel_tol = 1e-11, .abs_tol = 0.0, .max_depth = 15,
                          .label = "total_weight(" + to_string(kind_) + ")"};
    auto f = [this](double w) { return value_unchecked(w); };
    switch (kind_) {
        case Kind::drude_lorentz: {
            const double x0 = center_ + 40.0 * width_;
            const std::vector<double> pts{0.0, center_, x0};
            return quad::integrate_segments(f, pts, spec) + inverted_tail(f, x0, spec);
        }
        case Kind::full_lorentzian: {
            const double x0 = std::abs(center_) + 40.0 * width_;
            const std::vector<double> pts{-x0, center_, x0};
            auto mirror = [this](double w) { return value_unchecked(-w); };
            return quad::integrate_segments(f, pts, spec) + inverted_tail(f, x0, spec) +
                   inverted_tail(mirror, x0, spec);
        }
        case Kind::tabulated:
            return quad::integrate_segments(f, freq_, spec);
    }
    return 0.0;
}

std::complex<double> SpectralDensity::correlation(double tau) const {
    if (!std::isfinite(tau)) {
        throw ValidationError(ErrorKind::invalid_input,
                              {.module = "spectral", .model = to_string(kind_)},
                              "delay must be finite");
    }
    if (tau < 0.0) return std::conj(correlation(-tau));

    switch (kind_) {
        case Kind::drude_lorentz: {
            const std::complex<double> pole =
                std::exp(std::complex<double>(-0.5 * width_ * tau, -center_ * tau));
            return weight_ * (pole - detail::dl_branchcut_moment(center_, width_, tau, 0));
        }
        case Kind::full_lorentzian:
            return weight_ * std::exp(std::complex<double>(-0.5 * width_ * tau, -center_ * tau));
        case Kind::tabulated: {
            const double scale = total_weight();
            auto f = [this, tau](double w) {
                return value_unchecked(w) *
                       std::exp(std::complex<double>(0.0, -w * tau));
            };
            return quad::integrate_oscillatory(f, freq_.front(), freq_.back(), tau,
                                               std::max(1e-12 * scale, 1e-300),
                                               "correlation(tabulated)");
        }
    }
    return {};
}

double SpectralDensity::negative_weight() const {
    switch (kind_) {
        case Kind::drude_lorentz:
            return 0.0; // one-sided by construction
        case Kind::full_lorentzian: {
            const double x0 = std::abs(center_) + 40.0 * width_;
            const quad::Spec spec{.rel_tol = 1e-11, .label = "negative_weight"};
            auto mirror = [this](double w) { return value_unchecked(-w); };
            return quad::integrate(mirror, 0.0, x0, spec) + inverted_tail(mirror, x0, spec);
        }
        case Kind::tabulated: {
            if (freq_.front() >= 0.0) return 0.0;
            const double hi = std::min(0.0, freq_.back());
            std::vector<double> pts;
            for (double fq : freq_)
                if (fq < hi) pts.push_back(fq);
            pts.push_back(hi);
            const quad::Spec spec{.rel_tol = 1e-11, .label = "negative_weight"};
            auto f = [this](double w) { return value_unchecked(w); };
            return quad::integrate_segments(f, pts, spec);
        }
    }
    return 0.0;
}

LrtVerdict SpectralDensity::lrt_compatible() const {
    const double neg = negative_weight();
    const double fraction = neg / total_weight();
    return {fraction < kLrtNegativeTolerance, fraction};
}

SpectralDensity SpectralDensity::with_weight(double weight) const {
    require_positive(weight, "weight");
    SpectralDensity s = *this;
    s.weight_ = weight;
    return s;
}

SpectralDensity SpectralDensity::calibrate_weight(double coupling, double omega_s,
                                                  double gamma_target) const {
    require_positive(coupling, "coupling");
    require_positive(gamma_target, "gamma_target");
    require_finite(omega_s, "omega_s");
    const double unit_value = value(omega_s) / weight_;
    if (!(unit_value > 0.0) || !std::isfinite(unit_value)) {
        throw ValidationError(ErrorKind::degenerate_calibration,
                              {.module = "spectral", .model = to_string(kind_)},
                              "S(omega_s) = 0 at unit weight; cannot pin the target rate");
    }
    return with_weight(gamma_target / (2.0 * M_PI * coupling * unit_value));
}

namespace detail {

double dl_branchcut_moment(double omega_tilde, double width, double t, int moment,
                           double rel_tol) {
    if (!(omega_tilde > 0.0) || !(width > 0.0)) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "spectral"},
                              "branch-cut moment requires positive center and width");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ValidationError(ErrorKind::invalid_input, {.module = "spectral"},
                              "branch-cut moment requires t >= 0");
    }
    const double a2 = omega_tilde * omega_tilde + 0.25 * width * width;
    // Denominator (a2 + xi^2)^2 - (G xi)^2 = (xi^2 - G xi + a2)(xi^2 + G xi + a2);
    // the first factor's minimum is a2 - G^2/4 = omega_tilde^2 > 0.
    const double prefactor = (2.0 / M_PI) * omega_tilde * width;
    auto integrand = [=](double xi) {
        const double xi2 = xi * xi;
        const double denom = (xi2 - width * xi + a2) * (xi2 + width * xi + a2);
        double p = xi;
        for (int k = 0; k < moment; ++k) p *= xi;
        return prefactor * p * std::exp(-xi * t) / denom;
    };
    const double a = std::sqrt(a2);
    const double upper =
        t > 0.0 ? std::max({60.0 / t, 10.0 * omega_tilde, 4.0 * a}) : kInf;
    std::vector<double> pts{0.0};
    if (t > 0.0 && 1.0 / t < a) pts.push_back(1.0 / t);
    pts.push_back(a);
    pts.push_back(upper);
    std::sort(pts.begin(), pts.end());
    const quad::Spec spec{.rel_tol = rel_tol, .abs_tol = 1e-300, .max_depth = 15,
                          .label = "dl_branchcut_moment"};
    return quad::integrate_segments(integrand, pts, spec);
}

double dl_tail_weight(double omega_tilde, double width, double x) {
    const double a2 = omega_tilde * omega_tilde + 0.25 * width * width;
    const double c = a2 - 0.5 * width * width; // = omega_tilde^2 - width^2/4
    const double d = width * omega_tilde;
    return (0.5 * M_PI - std::atan((x * x - c) / d)) / M_PI;
}

} // namespace detail

} // namespace qdecay::spectral
