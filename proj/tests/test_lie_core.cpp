#include <gtest/gtest.h>

#include "hvk/lie_core.hpp"

using namespace hvk;

namespace {

// dense integer version of the raising operator, built entrywise
std::vector<std::vector<long long>> raise_ll(int n) {
    std::vector<std::vector<long long>> r(n, std::vector<long long>(n, 0));
    for (int p = 1; p < n; ++p) r[p][p - 1] = n - p;
    return r;
}

std::vector<std::vector<long long>> mul_ll(const std::vector<std::vector<long long>>& a,
                                           const std::vector<std::vector<long long>>& b) {
    const std::size_t n = a.size();
    std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

}  // namespace

TEST(lie_core, rejects_small_dimension) {
    EXPECT_THROW(build_principal(1), invalid_dimension);
    EXPECT_THROW(dynkin_index(0), invalid_dimension);
}

TEST(lie_core, n2_weight_matrix) {
    auto P = build_principal(2);
    // w-basis: w_1 has weight -1/2; in the reversed basis this reads diag(1/2, -1/2)
    EXPECT_EQ(P.A(0, 0), Rational(-1, 2));
    EXPECT_EQ(P.A(1, 1), Rational(1, 2));
    EXPECT_EQ(P.A(0, 1), 0);
}

TEST(lie_core, n3_eigenvalues) {
    auto P = build_principal(3);
    std::vector<Rational> expect{Rational(-1), Rational(0), Rational(1)};
    EXPECT_EQ(P.mu, expect);
}

TEST(lie_core, n4_raise_on_w1) {
    auto P = build_principal(4);
    EXPECT_EQ(P.raise(1, 0), 3);
    for (int i = 0; i < 4; ++i)
        if (i != 1) {
            EXPECT_EQ(P.raise(i, 0), 0);
        }
}

TEST(lie_core, brackets_hold_exactly) {
    for (int n = 2; n <= 12; ++n) {
        auto P = build_principal(n);
        EXPECT_EQ(commutator(P.A, P.raise), P.raise) << n;
        EXPECT_EQ(commutator(P.A, P.lower), -P.lower) << n;
        EXPECT_EQ(commutator(P.raise, P.lower), P.A * Rational(2)) << n;
    }
}

TEST(lie_core, weight_vectors_are_powers) {
    for (int n = 2; n <= 8; ++n) {
        auto P = build_principal(n);
        for (int k = 1; k < n; ++k) {
            EXPECT_EQ(P.E(k), P.raise.pow(k));
            EXPECT_EQ(P.F(k), -P.lower.pow(k));
            EXPECT_EQ(commutator(P.A, P.E(k)), P.E(k) * Rational(k));
        }
    }
}

TEST(lie_core, u_vectors_are_eigenvectors) {
    for (int n = 2; n <= 9; ++n) {
        auto P = build_principal(n);
        GaussMatrix MU = to_gauss(P.M) * P.U;
        for (int p = 1; p <= n; ++p)
            for (int r = 0; r < n; ++r)
                EXPECT_EQ(MU(r, p - 1), P.U(r, p - 1) * GaussRational(P.mu[p - 1])) << n << " " << p;
    }
}

TEST(lie_core, projections_resolve_identity) {
    for (int n = 2; n <= 12; ++n) {
        auto P = build_principal(n);
        ExactMatrix sum(n), weighted(n);
        for (int p = 1; p <= n; ++p) {
            sum += P.pi(p);
            weighted += P.pi(p) * P.mu[p - 1];
            for (int q = 1; q <= n; ++q) {
                ExactMatrix prod = P.pi(p) * P.pi(q);
                if (p == q) EXPECT_EQ(prod, P.pi(p));
                else EXPECT_TRUE(prod.is_zero());
            }
        }
        EXPECT_EQ(sum, ExactMatrix::identity(n));
        EXPECT_EQ(weighted, P.M);
    }
}

TEST(lie_core, projection_matches_eigenvector_column) {
    // pi_p u_p = u_p and pi_p u_q = 0, so the phase of u_p never enters
    auto P = build_principal(5);
    for (int p = 1; p <= 5; ++p) {
        GaussMatrix prod = to_gauss(P.pi(p)) * P.U;
        for (int q = 1; q <= 5; ++q)
            for (int r = 0; r < 5; ++r)
                EXPECT_EQ(prod(r, q - 1), p == q ? P.U(r, q - 1) : GaussRational());
    }
}

TEST(lie_core, trace_EF_examples) {
    EXPECT_EQ(trace_EF(3, 1), -4);
    EXPECT_EQ(trace_EF(3, 2), -4);
    EXPECT_EQ(trace_EF(4, 2), -24);
    EXPECT_THROW(trace_EF(4, 4), invalid_argument);
    EXPECT_THROW(trace_EF(4, 0), invalid_argument);
}

TEST(lie_core, trace_EF_against_integer_products) {
    for (int n = 2; n <= 9; ++n) {
        auto r = raise_ll(n);
        auto l = std::vector<std::vector<long long>>(n, std::vector<long long>(n, 0));
        for (int p = 2; p <= n; ++p) l[p - 2][p - 1] = p - 1;
        auto e = r, f = l;
        for (int k = 1; k < n; ++k) {
            if (k > 1) {
                e = mul_ll(e, r);
                f = mul_ll(f, l);
            }
            auto ef = mul_ll(e, f);
            long long tr = 0;
            for (int i = 0; i < n; ++i) tr += ef[i][i];
            EXPECT_EQ(trace_EF(n, k), Rational(static_cast<long>(-tr))) << n << " " << k;
        }
    }
}

TEST(lie_core, trace_law_full_grid) {
    for (int n = 2; n <= 12; ++n) {
        auto P = build_principal(n);
        for (int k = 1; k < n; ++k) EXPECT_EQ(trace_EF(P, k), trace_EF_closed(n, k)) << n << " " << k;
    }
}

TEST(lie_core, combinatorial_identity) {
    for (int n = 2; n <= 12; ++n)
        for (int k = 1; k < n; ++k) EXPECT_EQ(combinatorial_sum(n, k), binomial(n + k, 2 * k + 1));
}

TEST(lie_core, projection_trace_law_full_grid) {
    for (int n = 2; n <= 12; ++n) {
        auto P = build_principal(n);
        for (int k = 1; k < n; ++k)
            for (int p = 1; p <= n; ++p) {
                EXPECT_EQ(trace_E_pi(P, k, p), trace_E_pi_closed(n, k, p)) << n << k << p;
                EXPECT_EQ(trace_F_pi(P, k, p), -trace_E_pi(P, k, p));
            }
    }
}

TEST(lie_core, highest_projection_trace) {
    for (int n = 2; n <= 10; ++n) {
        auto P = build_principal(n);
        for (int k = 1; k < n; ++k) EXPECT_EQ(trace_E_pi(P, k, 1), trace_E_pi_highest(n, k));
    }
}

TEST(lie_core, vanishing_projection_trace) {
    EXPECT_EQ(trace_E_pi(3, 1, 2), 0);
    EXPECT_EQ(trace_E_pi(7, 2, 6), 0);
    EXPECT_EQ(trace_E_pi_closed(13, 3, 12), 0);
}

TEST(lie_core, killing_pairing_examples) {
    auto P = build_principal(3);
    EXPECT_EQ(killing_pairing(P.A, P.A), 2);
    EXPECT_EQ(killing_pairing(P.E(1), P.F(1)), -4);
    EXPECT_EQ(killing_pairing(P.M, ExactMatrix(3)), 0);
    EXPECT_THROW(killing_pairing(P.A, ExactMatrix(2)), invalid_argument);
}

TEST(lie_core, dynkin_index_values) {
    EXPECT_EQ(dynkin_index(2), 1);
    EXPECT_EQ(dynkin_index(3), 4);
    EXPECT_EQ(dynkin_index(10), 165);
    for (int n = 2; n <= 12; ++n) EXPECT_EQ(dynkin_index_from_traces(build_principal(n)), dynkin_index(n));
}

TEST(lie_core, principal_basis_duality) {
    for (int n = 2; n <= 7; ++n) {
        auto P = build_principal(n);
        auto B = principal_basis(P);
        ASSERT_EQ(B.h.size(), static_cast<std::size_t>(n - 1));
        for (int j = 1; j < n; ++j) {
            const auto& h = B.h[j - 1];
            EXPECT_TRUE(commutator(h, P.M).is_zero());
            EXPECT_EQ(h.trace(), 0);
            for (int i = 1; i < n; ++i) EXPECT_EQ(killing_pairing(P.E(i), h), Rational(i == j ? 1 : 0));
        }
    }
}

TEST(lie_core, principal_basis_n2_direction) {
    auto P = build_principal(2);
    auto h = principal_basis(P).h[0];
    ExactMatrix d = P.M;  // X - Y = -sqrt2 M
    Rational scale = killing_pairing(P.E(1), d);
    EXPECT_EQ(h, d * (Rational(1) / scale));
}

TEST(lie_core, principal_basis_parity_pattern) {
    // h_j lies in span{M^m : m <= j, m = j mod 2}; M^m e_1 is a Krylov basis
    for (int n = 3; n <= 7; ++n) {
        auto P = build_principal(n);
        auto B = principal_basis(P);
        std::vector<ExactMatrix> pw{ExactMatrix::identity(n)};
        for (int m = 1; m < n; ++m) pw.push_back(pw.back() * P.M);
        ExactMatrix K(n);
        for (int m = 0; m < n; ++m)
            for (int r = 0; r < n; ++r) K(r, m) = pw[m](r, 0);
        for (int j = 1; j < n; ++j) {
            const auto& h = B.h[j - 1];
            std::vector<Rational> col(n);
            for (int r = 0; r < n; ++r) col[r] = h(r, 0);
            auto a = solve(K, col);
            ExactMatrix rebuilt(n);
            for (int m = 0; m < n; ++m) {
                rebuilt += pw[m] * a[m];
                if (m > j || (m - j) % 2 != 0) {
                    EXPECT_EQ(a[m], 0) << n << " " << j << " " << m;
                }
            }
            EXPECT_EQ(rebuilt, h);
        }
    }
}

TEST(lie_core, normalized_dual_factor) {
    auto B = principal_basis(build_principal(5));
    EXPECT_EQ(B.eta_sq[0], 1);
    EXPECT_EQ(B.eta_sq[2], Rational(5, 72));
}
