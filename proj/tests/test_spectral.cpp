#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <random>

#include "qdecay/spectral.hpp"

#include "oracles.hpp"

using qdecay::spectral::SpectralDensity;
using cplx = std::complex<double>;

namespace {

// Dense triangle table: piecewise-linear edges sampled finely enough that the
// monotone-cubic interpolant integrates to the geometric area within 1e-10.
SpectralDensity triangle_table(double apex_height) {
    std::vector<double> f, v;
    const int n = 120000;
    for (int i = 0; i <= 2 * n; ++i) {
        const double x = static_cast<double>(i) / n; // [0, 2]
        f.push_back(x);
        v.push_back(x <= 1.0 ? apex_height * x : apex_height * (2.0 - x));
    }
    return SpectralDensity::tabulated(std::move(f), std::move(v));
}

} // namespace

TEST_CASE("drude_lorentz evaluation") {
    const auto s = SpectralDensity::drude_lorentz(100.0, 1.0, 1.0);
    CHECK(s.value(-5.0) == 0.0);
    CHECK(s.value(0.0) == 0.0);
    CHECK(s.value(-1e-12) == 0.0);

    // Hand substitution at w = center: a^2 - w^2 = width^2/4 there.
    const double width = 1.0, wt = 100.0;
    const double expected =
        (2.0 / M_PI) * width * wt * wt /
        (std::pow(0.25 * width * width, 2) + width * width * wt * wt);
    CHECK(s.value(100.0) == doctest::Approx(expected).epsilon(1e-14));

    CHECK_THROWS_AS((void)s.value(std::nan("")), qdecay::ValidationError);
    CHECK_THROWS_AS((void)s.value(INFINITY), qdecay::ValidationError);
}

TEST_CASE("total weight") {
    SUBCASE("triangle table integrates to its area") {
        const auto tri = triangle_table(2.0); // base 2, height 2 -> area 2
        CHECK(tri.total_weight() == doctest::Approx(2.0).epsilon(1e-10));
    }
    SUBCASE("linear in the weight") {
        const auto s1 = SpectralDensity::drude_lorentz(100.0, 1.0, 1.0);
        const auto s2 = s1.with_weight(3.5);
        const double w1 = s1.total_weight();
        CHECK(w1 > 0.0);
        CHECK(s2.total_weight() == doctest::Approx(3.5 * w1).epsilon(1e-12));
    }
    SUBCASE("matches a dense trapezoid") {
        const auto s = SpectralDensity::drude_lorentz(100.0, 1.0, 1.0);
        const double brute =
            oracle::trapezoid([&](double w) { return s.value(w); }, 0.0, 2.0e4, 1 << 24);
        CHECK(s.total_weight() == doctest::Approx(brute).epsilon(1e-5));
    }
    SUBCASE("matches the closed form") {
        // \int_0^inf = 1/2 + atan((wt^2 - G^2/4) / (G wt)) / pi at unit weight
        const double wt = 100.0, g = 10.0;
        const auto s = SpectralDensity::drude_lorentz(wt, g, 1.0);
        const double closed =
            0.5 + std::atan((wt * wt - 0.25 * g * g) / (g * wt)) / M_PI;
        CHECK(s.total_weight() == doctest::Approx(closed).epsilon(1e-9));
    }
    SUBCASE("full lorentzian is normalized to its weight") {
        const auto s = SpectralDensity::full_lorentzian(10.0, 2.0, 1.75);
        CHECK(s.total_weight() == doctest::Approx(1.75).epsilon(1e-9));
    }
}

TEST_CASE("correlation from spectrum") {
    const auto s = SpectralDensity::drude_lorentz(100.0, 10.0, 1.0);

    SUBCASE("tau = 0 reduces to the total weight") {
        const cplx c0 = s.correlation(0.0);
        CHECK(c0.real() == doctest::Approx(s.total_weight()).epsilon(1e-9));
        CHECK(std::abs(c0.imag()) < 1e-12 * std::abs(c0));
    }
    SUBCASE("hermiticity under tau -> -tau") {
        std::mt19937 rng(712);
        std::uniform_real_distribution<double> dist(1e-3, 2.0);
        for (int i = 0; i < 100; ++i) {
            const double tau = dist(rng);
            const cplx a = s.correlation(-tau);
            const cplx b = std::conj(s.correlation(tau));
            CHECK(std::abs(a - b) <= 1e-10 * std::abs(b));
        }
    }
    SUBCASE("matches a dense Fourier sum at tau = 0.3") {
        const cplx brute = oracle::fourier_sum([&](double w) { return s.value(w); }, 0.0, 4.0e3,
                                               0.3, 1 << 23);
        const cplx got = s.correlation(0.3);
        CHECK(std::abs(got - brute) <= 5e-6 * std::abs(brute));
    }
    SUBCASE("full lorentzian correlation is the plain exponential") {
        const auto lor = SpectralDensity::full_lorentzian(10.0, 2.0, 1.0);
        const double tau = 0.7;
        const cplx expected = std::exp(cplx(-1.0 * tau, -10.0 * tau));
        CHECK(std::abs(lor.correlation(tau) - expected) < 1e-12);
    }
    SUBCASE("tabulated correlation against the Fourier oracle") {
        const auto tri = triangle_table(1.0);
        const cplx brute =
            oracle::fourier_sum([&](double w) { return tri.value(w); }, 0.0, 2.0, 1.9, 1 << 20);
        CHECK(std::abs(tri.correlation(1.9) - brute) < 1e-7);
    }
}

TEST_CASE("pole + branch-cut split is consistent at tau = 0") {
    // 1 - B0(0) must equal the directly integrated weight of the unit shape.
    const double wt = 100.0, g = 10.0;
    const auto s = SpectralDensity::drude_lorentz(wt, g, 1.0);
    const double b0 = qdecay::spectral::detail::dl_branchcut_moment(wt, g, 0.0, 0);
    CHECK(1.0 - b0 == doctest::Approx(s.total_weight()).epsilon(1e-9));
    CHECK(qdecay::spectral::detail::dl_tail_weight(wt, g, 0.0) ==
          doctest::Approx(s.total_weight()).epsilon(1e-9));
}

TEST_CASE("lrt compatibility predicate") {
    SUBCASE("one-sided peak is compatible") {
        const auto v = SpectralDensity::drude_lorentz(100.0, 10.0, 2.0).lrt_compatible();
        CHECK(v.compatible);
        CHECK(v.negative_fraction == 0.0);
    }
    SUBCASE("full lorentzian leaks onto w < 0") {
        const auto lor = SpectralDensity::full_lorentzian(10.0, 2.0, 1.0);
        CHECK(lor.value(-10.0) > 0.0);
        const auto v = lor.lrt_compatible();
        CHECK_FALSE(v.compatible);
        // Leakage is the Lorentzian CDF at 0: 1/2 - atan(2 * center / width) / pi.
        const double expected = 0.5 - std::atan(2.0 * 10.0 / 2.0) / M_PI;
        CHECK(v.negative_fraction == doctest::Approx(expected).epsilon(1e-6));
    }
    SUBCASE("positive-support table is compatible") {
        const auto tab = SpectralDensity::tabulated({5.0, 10.0, 15.0}, {0.0, 1.0, 0.0});
        const auto v = tab.lrt_compatible();
        CHECK(v.compatible);
        CHECK(v.negative_fraction == 0.0);
    }
    SUBCASE("verdict is invariant under weight rescaling") {
        for (double w : {0.01, 1.0, 7.0, 4000.0}) {
            CHECK_FALSE(SpectralDensity::full_lorentzian(10.0, 2.0, w).lrt_compatible().compatible);
            CHECK(SpectralDensity::drude_lorentz(10.0, 2.0, w).lrt_compatible().compatible);
        }
    }
}

TEST_CASE("weight calibration") {
    const double g2 = 1.0, ws = 100.0;
    const auto base = SpectralDensity::drude_lorentz(100.0, 10.0, 1.0);

    SUBCASE("closed loop pins the golden-rule rate") {
        const auto cal = base.calibrate_weight(g2, ws, 1.0);
        CHECK(2.0 * M_PI * g2 * cal.value(ws) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("already-calibrated model is a fixed point") {
        const auto cal = base.calibrate_weight(g2, ws, 1.0);
        const auto again = cal.calibrate_weight(g2, ws, 1.0);
        CHECK(again.weight() == doctest::Approx(cal.weight()).epsilon(1e-12));
    }
    SUBCASE("doubling the target doubles the weight") {
        const auto c1 = base.calibrate_weight(g2, ws, 1.0);
        const auto c2 = base.calibrate_weight(g2, ws, 2.0);
        CHECK(c2.weight() == doctest::Approx(2.0 * c1.weight()).epsilon(1e-12));
    }
    SUBCASE("degenerate when the spectrum vanishes at omega_s") {
        CHECK_THROWS_AS((void)base.calibrate_weight(g2, -5.0, 1.0), qdecay::ValidationError);
        const auto tab = SpectralDensity::tabulated({5.0, 6.0, 7.0}, {0.0, 1.0, 0.0});
        CHECK_THROWS_AS((void)tab.calibrate_weight(g2, 20.0, 1.0), qdecay::ValidationError);
    }
}

TEST_CASE("non-negativity over random frequencies") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> mag(-4.0, 4.0);
    std::bernoulli_distribution flip(0.5);
    const auto dl = SpectralDensity::drude_lorentz(100.0, 10.0, 1.0);
    const auto lor = SpectralDensity::full_lorentzian(10.0, 2.0, 1.0);
    const auto tab = SpectralDensity::tabulated({1.0, 2.0, 2.5, 4.0}, {0.0, 3.0, 0.2, 0.0});
    for (int i = 0; i < 10000; ++i) {
        const double w = (flip(rng) ? 1.0 : -1.0) * std::pow(10.0, mag(rng));
        CHECK(dl.value(w) >= 0.0);
        CHECK(lor.value(w) >= 0.0);
        CHECK(tab.value(w) >= 0.0);
        if (w <= 0.0) CHECK(dl.value(w) == 0.0);
    }
    CHECK(tab.value(0.999999) == 0.0);
    CHECK(tab.value(4.000001) == 0.0);
}

TEST_CASE("tabulated CSV loading") {
    const std::string path = "spectral_test_table.csv";
    {
        std::ofstream out(path);
        out << "frequency,value\n1.0,0.0\n2.0,3.0\n4.0,0.5\n";
    }
    const auto s = SpectralDensity::tabulated_from_csv(path);
    CHECK(s.value(2.0) == doctest::Approx(3.0));
    CHECK(s.value(0.5) == 0.0);

    {
        std::ofstream out(path);
        out << "1.0,0.0\n2.0,3.0\n4.0,0.5\n"; // header optional
    }
    CHECK(SpectralDensity::tabulated_from_csv(path).value(2.0) == doctest::Approx(3.0));

    {
        std::ofstream out(path);
        out << "1.0,0.0\n2.0,3.0\n2.0,0.5\n"; // non-increasing grid
    }
    CHECK_THROWS_AS((void)SpectralDensity::tabulated_from_csv(path), qdecay::ValidationError);
    CHECK_THROWS_AS((void)SpectralDensity::tabulated_from_csv("no_such_file.csv"),
                    qdecay::ValidationError);
    std::remove(path.c_str());
}

TEST_CASE("branch-cut moments behave") {
    const double wt = 100.0, g = 1.0;
    SUBCASE("positive and decreasing in t") {
        double prev = qdecay::spectral::detail::dl_branchcut_moment(wt, g, 0.0, 0);
        CHECK(prev > 0.0);
        for (double t : {0.1, 1.0, 10.0, 100.0}) {
            const double cur = qdecay::spectral::detail::dl_branchcut_moment(wt, g, t, 0);
            CHECK(cur > 0.0);
            CHECK(cur < prev);
            prev = cur;
        }
    }
    SUBCASE("dense-grid trapezoid cross-check at t = 0") {
        const double a2 = wt * wt + 0.25 * g * g;
        auto integrand = [&](double xi) {
            const double xi2 = xi * xi;
            return (2.0 / M_PI) * wt * g * xi /
                   ((xi2 - g * xi + a2) * (xi2 + g * xi + a2));
        };
        const double brute = oracle::trapezoid(integrand, 0.0, 1.0e5, 1 << 24);
        CHECK(qdecay::spectral::detail::dl_branchcut_moment(wt, g, 0.0, 0) ==
              doctest::Approx(brute).epsilon(1e-6));
    }
}
