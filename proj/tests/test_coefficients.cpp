#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <numbers>

#include "hvk/coefficients.hpp"

using namespace hvk;
using std::numbers::pi;

TEST(coefficients, bridge_to_projection_traces) {
    for (int n = 2; n <= 12; ++n) {
        auto P = build_principal(n);
        for (int k = 2; k <= n; ++k)
            for (int p = 1; p <= n; ++p)
                EXPECT_EQ(gardiner_coefficient(n, k, p), Rational(-2) * trace_E_pi(P, k - 1, p)) << n << k << p;
    }
}

TEST(coefficients, quadratic_row) {
    for (int n = 2; n <= 12; ++n)
        for (int p = 1; p <= n; ++p) EXPECT_EQ(gardiner_coefficient(n, 2, p), n + 1 - 2 * p);
}

TEST(coefficients, top_degree_row) {
    for (int n = 2; n <= 12; ++n)
        for (int p = 1; p <= n; ++p) EXPECT_EQ(gardiner_coefficient(n, n, p), gardiner_top_degree(n, p));
}

TEST(coefficients, rows_sum_to_zero) {
    for (int n = 2; n <= 12; ++n)
        for (int k = 2; k <= n; ++k) {
            Rational s = 0;
            for (int p = 1; p <= n; ++p) s += gardiner_coefficient(n, k, p);
            EXPECT_EQ(s, 0);
        }
}

TEST(coefficients, largest_is_first_entry) {
    for (int n = 2; n <= 12; ++n)
        for (int k = 2; k <= n; ++k) EXPECT_EQ(largest_gardiner(n, k), gardiner_coefficient(n, k, 1));
}

TEST(coefficients, range_checks) {
    EXPECT_THROW(gardiner_coefficient(4, 1, 1), invalid_argument);
    EXPECT_THROW(gardiner_coefficient(4, 5, 1), invalid_argument);
    EXPECT_THROW(gardiner_coefficient(4, 3, 0), invalid_argument);
    EXPECT_THROW(consecutive_difference(4, 3, 4), invalid_argument);
    EXPECT_THROW(hejhal_constant(0), invalid_argument);
    EXPECT_THROW(variance_constant(2, 0), invalid_argument);
}

TEST(coefficients, hejhal_values) {
    EXPECT_EQ(hejhal_constant(2), (PiRational{Rational(1, 2), -1}));
    EXPECT_EQ(hejhal_constant(3), (PiRational{Rational(-1, 3), -1}));
    // 2^2 (3!)^2 / 6! = 1/5
    EXPECT_EQ(hejhal_constant(4), (PiRational{Rational(1, 5), -1}));
    EXPECT_EQ(hejhal_constant(5), (PiRational{Rational(-4, 35), -1}));
    EXPECT_NEAR(hejhal_constant(2).value(), 1 / (2 * pi), 1e-16);
}

TEST(coefficients, eta_values) {
    for (int n = 2; n <= 12; ++n) {
        EXPECT_EQ(eta_squared(n, 1), 1);
        auto P = build_principal(n);
        for (int k = 1; k < n; ++k) EXPECT_EQ(eta_squared(n, k), eta_squared_from_traces(P, k));
    }
    EXPECT_EQ(eta_squared(3, 2), 1);
    EXPECT_EQ(eta_squared(5, 3), Rational(5, 72));
}

TEST(coefficients, consecutive_differences) {
    for (int n = 2; n <= 12; ++n) {
        auto P = build_principal(n);
        for (int p = 1; p < n; ++p) EXPECT_EQ(consecutive_difference(n, 2, p), 2);
        for (int k = 2; k <= n; ++k) {
            EXPECT_NE(consecutive_difference(n, k, 1), 0) << n << k;
            for (int p = 1; p < n; ++p)
                EXPECT_EQ(consecutive_difference(n, k, p),
                          Rational(-2) * (trace_E_pi(P, k - 1, p) - trace_E_pi(P, k - 1, p + 1)));
        }
    }
    // c^{(1)}_{33} - c^{(2)}_{33} = -1 - 2
    EXPECT_EQ(consecutive_difference(3, 3, 1), -3);
}

TEST(coefficients, reflection_symmetry) {
    // c^{(n+1-p)} = (-1)^{k+1} c^{(p)}
    for (int n = 2; n <= 12; ++n)
        for (int k = 2; k <= n; ++k)
            for (int p = 1; p <= n; ++p)
                EXPECT_EQ(gardiner_coefficient(n, k, n + 1 - p), Rational(sign_power(k + 1)) * gardiner_coefficient(n, k, p));
}

TEST(coefficients, consecutive_difference_vanishes_at_center_for_odd_degree) {
    for (int n = 4; n <= 12; n += 2)
        for (int k = 3; k <= n; k += 2) EXPECT_EQ(consecutive_difference(n, k, n / 2), 0) << n << k;
    // isolated zeros away from the center
    EXPECT_EQ(consecutive_difference(7, 4, 2), 0);
    EXPECT_EQ(consecutive_difference(11, 5, 2), 0);
}

TEST(coefficients, table_contents) {
    auto t = coefficient_table(5);
    EXPECT_EQ(t.entries.size(), 20u);
    EXPECT_EQ(t.dynkin, 20);
    EXPECT_EQ(t.eta_sq.at(3), Rational(5, 72));
    EXPECT_EQ(t.entries.at({4, 2}), gardiner_coefficient(5, 4, 2));
}

TEST(coefficients, trace_variation_laurent_identity) {
    for (int n = 2; n <= 12; ++n) {
        Laurent lhs = laurent_trace_variation_lhs(n), rhs = laurent_trace_variation_rhs(n);
        for (auto it = lhs.begin(); it != lhs.end();)
            it = it->second == 0 ? lhs.erase(it) : std::next(it);
        for (auto it = rhs.begin(); it != rhs.end();)
            it = it->second == 0 ? rhs.erase(it) : std::next(it);
        EXPECT_EQ(lhs, rhs) << n;
    }
}

TEST(coefficients, trace_variation_sinh_form) {
    // at t = e^{l/2}: sum_p e^{(n+1-2p)l/2} c = 2(-1)^n (n-1)! sinh(l/2)^{n-1}
    const double l = 1.3;
    for (int n = 2; n <= 8; ++n) {
        double lhs = 0;
        for (int p = 1; p <= n; ++p) lhs += std::exp((n + 1 - 2 * p) * l / 2) * gardiner_coefficient(n, n, p).get_d();
        double rhs = 2 * sign_power(n) * factorial(n - 1).get_d() * std::pow(std::sinh(l / 2), n - 1);
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(rhs)) << n;
    }
}

TEST(coefficients, symplectic_examples) {
    EXPECT_EQ(symplectic_pairing({3.0, 0.0}, true, true, 4), 0.0);
    EXPECT_EQ(symplectic_pairing({0.0, 1.0}, true, true, 4), -2.0);
    EXPECT_EQ(symplectic_pairing({0.0, 1.0}, false, true, 4), 0.0);
    EXPECT_EQ(symplectic_pairing({0.0, 1.0}, true, false, 3), -8.0);
}

TEST(coefficients, twist_values) {
    EXPECT_EQ(twist_coefficient(2, 2), (PiRational{Rational(1, 2), -1}));
    EXPECT_EQ(twist_coefficient(3, 2), (PiRational{Rational(1, 8), -1}));
    EXPECT_EQ(twist_coefficient(3, 3), (PiRational{Rational(-1, 12), -1}));
}

TEST(coefficients, hamiltonian_values) {
    EXPECT_NEAR(hamiltonian_coefficient(2, 2, 1), 1 / (4 * pi), 1e-16);
    for (int n = 2; n <= 12; ++n)
        for (int k = 2; k <= n; ++k) EXPECT_NE(hamiltonian_coefficient(n, k, 1), 0.0);
    double h = hamiltonian_coefficient(3, 3, 1);
    double s = gardiner_coefficient(3, 3, 1).get_d() * hejhal_constant(3).value();
    EXPECT_EQ(std::signbit(h), std::signbit(s));
    EXPECT_NEAR(hamiltonian_coefficient_standard(5, 4, 2) * std::sqrt(eta_squared(5, 3).get_d()),
                hamiltonian_coefficient(5, 4, 2), 1e-15);
}

TEST(coefficients, pressure_values) {
    EXPECT_EQ(pressure_coefficient_standard(2, 2, -2), (PiRational{Rational(1, 4), -1}));
    EXPECT_EQ(pressure_coefficient_normalized(2, 2, -2), (PiRational{Rational(1, 4), -1}));
    EXPECT_EQ(variance_constant(2, -2), (PiRational{Rational(1, 4), -1}));
    EXPECT_EQ(variance_constant(3, -2), (PiRational{Rational(2), -1}));
}

TEST(coefficients, pressure_pipelines_exact) {
    for (int chi : {-2, -4, -7})
        for (int n = 2; n <= 12; ++n)
            for (int k = 2; k <= n; ++k) {
                EXPECT_EQ(pressure_coefficient_standard(n, k, chi), pressure_pipeline(n, k, chi));
                EXPECT_EQ(pressure_coefficient_normalized(n, k, chi),
                          pressure_coefficient_standard(n, k, chi) * eta_squared(n, k - 1));
            }
}

TEST(coefficients, endomorphism_scalar_from_linear_system) {
    // on span{q, iq} with <q,q> = 1: P(u,v) = p Re<u,v>, w(u,v) = -2 Im<u,v>
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {4, 3}, {6, 6}}) {
        double p = pressure_coefficient_normalized(n, k, -2).value();
        std::complex<double> basis[2] = {{1, 0}, {0, 1}};
        Eigen::Matrix2d Pm, Wm;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                std::complex<double> inner = basis[i] * std::conj(basis[j]);
                Pm(i, j) = p * inner.real();
                Wm(i, j) = -2 * inner.imag();
            }
        Eigen::Matrix2d At = Pm * Wm.inverse();
        Eigen::Matrix2d A = At.transpose();
        double c = pressure_endomorphism_scalar(n, k, -2);
        Eigen::Matrix2d J;
        J << 0, -1, 1, 0;  // multiplication by i
        EXPECT_LT((A - c * J).norm(), 1e-14 * std::abs(c));
        EXPECT_LT(c * c * -1, 0.0);
    }
    EXPECT_NEAR(pressure_endomorphism_scalar(2, 2, -2), -1 / (8 * pi), 1e-16);
}

TEST(coefficients, recip_antisymmetry_is_conjugation) {
    for (double re : {-1.5, 0.0, 2.0})
        for (double im : {-0.7, 0.3}) {
            std::complex<double> a(re, im);
            EXPECT_EQ(std::imag(a), -std::imag(std::conj(a)));
        }
}

TEST(coefficients, sparse_trace_matches_matrices) {
    for (int n = 2; n <= 10; ++n)
        for (int k = 1; k < n; ++k) EXPECT_EQ(Rational(trace_EF_sparse(n, k)), -trace_EF(n, k));
}

TEST(coefficients, large_n_trace_ratio_converges) {
    auto rs = large_n_checks(2, {10, 20, 40, 1000});
    for (const auto& r : rs)
        if (r.claim_id.find("trace") != std::string::npos) {
            EXPECT_TRUE(r.passed) << r.claim_id;
        }
}

TEST(coefficients, large_n_sixth_normalization_converges) {
    for (int k : {2, 3}) {
        auto rs = large_n_checks(k, {125, 250, 500, 1000});
        for (const auto& r : rs) {
            if (r.claim_id.find(".limit") == std::string::npos) continue;
            double v = std::stod(r.diagnostics.at("ratio_sixth_n1000"));
            EXPECT_NEAR(v, 1.0, 0.02) << r.claim_id;
        }
    }
}

TEST(coefficients, large_n_eigenvalue_ratio_k2_is_constant) {
    auto rs = large_n_checks(2, {10, 20});
    for (const auto& r : rs)
        if (r.claim_id == "asymptotics.k2.eigenvalue.limit") {
            EXPECT_NEAR(r.computed[0].value, 1 / std::sqrt(2.0), 1e-15);
        }
}

TEST(coefficients, large_n_rejects_bad_lists) {
    EXPECT_THROW(large_n_checks(3, {3, 10}), invalid_argument);
    EXPECT_THROW(large_n_checks(2, {20, 10}), invalid_argument);
    EXPECT_THROW(large_n_checks(1, {10}), invalid_argument);
}
