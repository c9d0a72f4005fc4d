#include <gtest/gtest.h>

#include <complex>
#include <numbers>

#include "hvk/quadrature.hpp"

using namespace hvk;
using cd = std::complex<double>;
using std::numbers::pi;

TEST(quadrature, smooth_real) {
    auto r = integrate([](double x) { return std::sin(x); }, 0.0, pi);
    EXPECT_NEAR(r.value, 2.0, 1e-13);
    EXPECT_TRUE(r.converged);
    EXPECT_LT(r.error, 1e-9);
}

TEST(quadrature, complex_valued) {
    auto r = integrate([](double x) { return std::exp(cd(0, 3 * x)) * x; }, 0.0, 1.0);
    // int_0^1 x e^{3ix} dx = e^{3i}/(3i) + (e^{3i}-1)/9
    cd expect = std::exp(cd(0, 3)) / cd(0, 3) + (std::exp(cd(0, 3)) - 1.0) / 9.0;
    EXPECT_LT(std::abs(r.value - expect), 1e-13);
}

TEST(quadrature, reversed_interval_flips_sign) {
    auto f = [](double x) { return std::exp(-x * x); };
    EXPECT_NEAR(integrate(f, 0.0, 2.0).value, -integrate(f, 2.0, 0.0).value, 1e-15);
}

TEST(quadrature, endpoint_singularity) {
    auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-10, 1e-14, 4000, true});
    EXPECT_NEAR(r.value, 2.0, 1e-9);
}

TEST(quadrature, breakpoints_help_kinks) {
    auto f = [](double x) { return std::abs(x - 0.3); };
    auto r = integrate(f, 0.0, 1.0, {}, {0.3});
    EXPECT_NEAR(r.value, 0.045 + 0.245, 1e-14);
    EXPECT_LE(r.intervals, 4);
}

TEST(quadrature, budget_exhaustion_reports) {
    QuadOptions opt{1e-14, 0.0, 8, true};
    auto f = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
    EXPECT_THROW(integrate(f, 0.0, 1.0, opt), quadrature_failure);
    opt.throw_on_failure = false;
    auto r = integrate(f, 0.0, 1.0, opt);
    EXPECT_FALSE(r.converged);
    EXPECT_GT(r.error, 0.0);
    try {
        opt.throw_on_failure = true;
        integrate(f, 0.0, 1.0, opt);
    } catch (const quadrature_failure& e) {
        EXPECT_GT(e.error_estimate, 0.0);
    }
}

TEST(quadrature, tolerance_halving_within_estimate) {
    auto f = [](double x) { return cd(std::cos(5 * x), std::log1p(x)) / (1.0 + x * x); };
    for (double tol : {1e-4, 1e-6, 1e-8}) {
        auto a = integrate(f, 0.0, 3.0, {tol, 0.0, 4000, true});
        auto b = integrate(f, 0.0, 3.0, {tol / 2, 0.0, 4000, true});
        EXPECT_LE(std::abs(a.value - b.value), a.error + b.error);
    }
}

TEST(quadrature, nested_triangle) {
    QuadOptions o{1e-11, 1e-14, 2000, true};
    auto r = integrate2d([](double x, double y) { return x * y; }, 0.0, 1.0, [](double) { return 0.0; },
                         [](double x) { return x; }, o, o);
    EXPECT_NEAR(r.value, 1.0 / 8.0, 1e-13);
}

TEST(quadrature, zero_width) {
    auto r = integrate([](double x) { return x; }, 1.0, 1.0);
    EXPECT_EQ(r.value, 0.0);
}
