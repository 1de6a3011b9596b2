#include <doctest.h>

#include <cmath>
#include <complex>

#include "qdecay/quad.hpp"

using cplx = std::complex<double>;
namespace quad = qdecay::quad;

TEST_CASE("adaptive integration, real and complex") {
    const double gauss = quad::integrate([](double x) { return std::exp(-x * x); }, 0.0, 8.0);
    CHECK(gauss == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-12));

    // \int_0^inf e^{-x} e^{-i a x} dx = 1 / (1 + i a)
    const double a = 3.0;
    const cplx got = quad::integrate(
        [a](double x) { return std::exp(-x) * std::exp(cplx(0.0, -a * x)); }, 0.0,
        std::numeric_limits<double>::infinity());
    const cplx expected = 1.0 / cplx(1.0, a);
    CHECK(std::abs(got - expected) < 1e-12);
}

TEST_CASE("missed tolerance throws with the residual attached") {
    // A delta-like spike the rule cannot resolve at depth 2.
    auto spike = [](double x) { return 1.0 / (1e-12 + (x - 0.37) * (x - 0.37)); };
    quad::Spec spec;
    spec.max_depth = 2;
    spec.rel_tol = 1e-12;
    spec.label = "spike";
    try {
        (void)quad::integrate(spike, 0.0, 1.0, spec);
        FAIL("expected a NumericalError");
    } catch (const qdecay::NumericalError& e) {
        CHECK(e.kind() == qdecay::ErrorKind::quadrature_failure);
        CHECK(e.residual() > 0.0);
        CHECK(std::string(e.what()).find("spike") != std::string::npos);
    }
}

TEST_CASE("segment integration accumulates across breakpoints") {
    const std::vector<double> pts{0.0, 1.0, 2.0, 10.0};
    const double got = quad::integrate_segments([](double x) { return std::exp(-x); }, pts);
    CHECK(got == doctest::Approx(1.0 - std::exp(-10.0)).epsilon(1e-12));
}

TEST_CASE("oscillatory chunking matches the closed form") {
    // \int_0^L e^{-x} e^{-i a x} dx with a large enough to force chunking.
    const double a = 200.0, L = 40.0;
    const cplx got = quad::integrate_oscillatory(
        [a](double x) { return std::exp(-x) * std::exp(cplx(0.0, -a * x)); }, 0.0, L, a, 1e-12);
    const cplx expected = (1.0 - std::exp(-L) * std::exp(cplx(0.0, -a * L))) / cplx(1.0, a);
    CHECK(std::abs(got - expected) < 1e-11);
}
