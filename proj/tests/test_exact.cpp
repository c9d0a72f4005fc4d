#include <gtest/gtest.h>

#include "hvk/exact.hpp"

using namespace hvk;

TEST(exact, gauss_rational_field_ops) {
    GaussRational a(Rational(1, 2), Rational(-3, 4));
    GaussRational b(Rational(2), Rational(5, 3));
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(a - a, GaussRational());
    EXPECT_EQ(a * a.conj(), GaussRational(a.norm2()));
    EXPECT_THROW(a / GaussRational(), domain_error);
}

TEST(exact, i_power_cycles) {
    for (long m = -8; m <= 8; ++m) EXPECT_EQ(i_power(m) * i_power(1), i_power(m + 1));
    EXPECT_EQ(i_power(2), GaussRational(-1));
}

TEST(exact, factorials) {
    EXPECT_EQ(factorial(0), 1);
    EXPECT_EQ(factorial(10), 3628800);
    EXPECT_EQ(double_factorial(0), 1);
    EXPECT_EQ(double_factorial(-1), 1);
    EXPECT_EQ(double_factorial(7), 105);
    EXPECT_EQ(double_factorial(8), 384);
    EXPECT_THROW(factorial(-1), invalid_argument);
}

TEST(exact, binomials) {
    EXPECT_EQ(binomial(10, 3), 120);
    EXPECT_EQ(binomial(3, 5), 0);
    EXPECT_EQ(binomial(3, -1), 0);
    EXPECT_EQ(binomial_ext(4, 5), Rational(1, 5));
    EXPECT_EQ(binomial_ext(5, 2), Rational(10));
    // Pascal's rule over a small grid
    for (long n = 1; n < 30; ++n)
        for (long k = 1; k <= n; ++k) EXPECT_EQ(binomial(n, k), binomial(n - 1, k) + binomial(n - 1, k - 1));
}

TEST(exact, ratio_is_reduced) {
    EXPECT_EQ(ratio(2, 4), Rational(1, 2));
    EXPECT_EQ(ratio(3, -6), Rational(-1, 2));
    EXPECT_EQ(ratio(0, 5), Rational(0));
    EXPECT_THROW(ratio(1, 0), domain_error);
}

TEST(exact, pow2_signs) {
    EXPECT_EQ(pow2(3), Rational(8));
    EXPECT_EQ(pow2(-3), Rational(1, 8));
    EXPECT_EQ(pow2(0), Rational(1));
    EXPECT_EQ(sign_power(3), -1);
    EXPECT_EQ(sign_power(-2), 1);
}

TEST(exact, matrix_algebra) {
    ExactMatrix a(3), b(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            a(i, j) = ratio(i + 2 * j + 1, j + 1);
            b(i, j) = ratio(i * j - 1, 3);
        }
    EXPECT_EQ((a * b).trace(), (b * a).trace());
    EXPECT_TRUE(commutator(a, a).is_zero());
    EXPECT_EQ(a.pow(3), a * a * a);
    EXPECT_EQ(a * ExactMatrix::identity(3), a);
    EXPECT_THROW(a + ExactMatrix(2), invalid_argument);
}

TEST(exact, solve_recovers_solution) {
    ExactMatrix a(4);
    std::vector<Rational> x{Rational(1, 3), Rational(-2), Rational(5, 7), Rational(0)};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = Rational((i + 1) * (j + 2) % 5 + (i == j ? 3 : 0));
    std::vector<Rational> b(4, Rational(0));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) b[i] += a(i, j) * x[j];
    EXPECT_EQ(solve(a, b), x);
    EXPECT_THROW(solve(ExactMatrix(2), std::vector<Rational>(2, Rational(1))), internal_consistency_error);
}
