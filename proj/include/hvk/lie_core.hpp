#pragma once

#include <algorithm>
#include <vector>

#include "hvk/errors.hpp"
#include "hvk/exact.hpp"

namespace hvk {

/*
 * Principal sl(2) inside sl(n), written in the w-basis w_1..w_n (index p-1).
 *
 * X and Y carry a factor sqrt(2) in this basis, so the rational matrices
 * raise = -sqrt2 X and lower = sqrt2 Y are stored instead. The relations
 * [A,X]=X, [A,Y]=-Y, [X,Y]=-A read [A,raise]=raise, [A,lower]=-lower,
 * [raise,lower]=2A.
 */
struct PrincipalEmbedding {
    int n = 0;
    ExactMatrix A;
    ExactMatrix raise;            // -sqrt2 X : w_p -> (n-p) w_{p+1}
    ExactMatrix lower;            // sqrt2 Y  : w_p -> (p-1) w_{p-1}
    ExactMatrix M;                // (Y-X)/sqrt2 = (raise+lower)/2
    std::vector<ExactMatrix> E0;  // E0[k], k = 1..n-1 (E0[0] unused)
    std::vector<ExactMatrix> F0;
    std::vector<Rational> mu;     // mu[p-1] = (2p-n-1)/2
    GaussMatrix U;                // columns u_p
    std::vector<ExactMatrix> Pi;  // Pi[p-1] = pi_p

    const ExactMatrix& E(int k) const { return E0.at(static_cast<std::size_t>(k)); }
    const ExactMatrix& F(int k) const { return F0.at(static_cast<std::size_t>(k)); }
    const ExactMatrix& pi(int p) const { return Pi.at(static_cast<std::size_t>(p - 1)); }
};

inline Rational weight(int n, int p) { return ratio(2 * p - n - 1, 2); }

inline void check_dimension(int n) {
    if (n < 2) throw invalid_dimension("n must be at least 2");
}

// Lagrange interpolation of M at its simple rational eigenvalues
inline std::vector<ExactMatrix> spectral_projections(const ExactMatrix& M, const std::vector<Rational>& mu) {
    const std::size_t n = mu.size();
    std::vector<ExactMatrix> out;
    out.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
        ExactMatrix P = ExactMatrix::identity(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == p) continue;
            Rational denom = mu[p] - mu[j];
            if (denom == 0) throw degenerate_spectrum("repeated eigenvalue in spectral projection");
            ExactMatrix f = M - ExactMatrix::identity(n) * mu[j];
            f *= Rational(1) / denom;
            P = P * f;
        }
        out.push_back(std::move(P));
    }
    return out;
}

inline PrincipalEmbedding build_principal(int n) {
    check_dimension(n);
    PrincipalEmbedding P;
    P.n = n;
    const std::size_t N = static_cast<std::size_t>(n);

    P.raise = ExactMatrix(N);
    P.lower = ExactMatrix(N);
    for (int p = 1; p < n; ++p) P.raise(p, p - 1) = n - p;
    for (int p = 2; p <= n; ++p) P.lower(p - 2, p - 1) = p - 1;

    for (int p = 1; p <= n; ++p) P.mu.push_back(weight(n, p));
    P.A = diagonal(P.mu);

    P.M = (P.raise + P.lower) * Rational(1, 2);

    P.E0.assign(N, ExactMatrix(N));
    P.F0.assign(N, ExactMatrix(N));
    ExactMatrix e = ExactMatrix::identity(N), f = ExactMatrix::identity(N);
    for (int k = 1; k < n; ++k) {
        e = e * P.raise;
        f = f * P.lower;
        P.E0[k] = e;
        P.F0[k] = -f;
    }

    P.U = GaussMatrix(N);
    const GaussRational scale(pow2(-(n - 1)));
    for (int p = 1; p <= n; ++p) {
        GaussRational c = i_power(n - p) * scale;
        for (int r = 0; r <= p - 1; ++r)
            for (int s = 0; s <= n - p; ++s) {
                Rational coef(binomial(p - 1, r) * binomial(n - p, s));
                if (s % 2) coef = -coef;
                P.U(r + s, p - 1) += c * GaussRational(coef);
            }
    }

    P.Pi = spectral_projections(P.M, P.mu);
    return P;
}

inline Rational killing_pairing(const ExactMatrix& m1, const ExactMatrix& m2) {
    if (m1.size() != m2.size()) throw invalid_argument("killing_pairing: dimension mismatch");
    Rational t = 0;
    const std::size_t n = m1.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t += m1(i, j) * m2(j, i);
    return t;
}

inline void check_k(int n, int k) {
    if (k < 1 || k > n - 1) throw invalid_argument("k must lie in 1..n-1");
}
inline void check_p(int n, int p) {
    if (p < 1 || p > n) throw invalid_argument("p must lie in 1..n");
}

inline Rational trace_EF(const PrincipalEmbedding& P, int k) {
    check_k(P.n, k);
    return killing_pairing(P.E(k), P.F(k));
}
inline Rational trace_EF(int n, int k) {
    check_dimension(n);
    check_k(n, k);
    return trace_EF(build_principal(n), k);
}

inline Rational trace_E_pi(const PrincipalEmbedding& P, int k, int p) {
    check_k(P.n, k);
    check_p(P.n, p);
    return killing_pairing(P.E(k), P.pi(p));
}
inline Rational trace_E_pi(int n, int k, int p) {
    check_dimension(n);
    check_k(n, k);
    check_p(n, p);
    return trace_E_pi(build_principal(n), k, p);
}

inline Rational trace_F_pi(const PrincipalEmbedding& P, int k, int p) {
    check_k(P.n, k);
    check_p(P.n, p);
    return killing_pairing(P.F(k), P.pi(p));
}

/* closed forms */

// (k!)^2 C(n+k, 2k+1), equal to -Tr(E0_k F0_k)
inline Rational trace_EF_closed(int n, int k) {
    check_k(n, k);
    Integer f = factorial(k);
    return -Rational(f * f * binomial(n + k, 2 * k + 1));
}

inline Rational trace_E_pi_closed(int n, int k, int p) {
    check_k(n, k);
    check_p(n, p);
    Integer sum = 0;
    for (int j = std::max(0, k + p - n); j <= std::min(k, p - 1); ++j) {
        Integer c = binomial(k, j);
        Integer term = binomial(n - k - 1, p - j - 1) * c * c;
        if ((j + k) % 2) sum -= term;
        else sum += term;
    }
    Rational pre(factorial(p - 1) * factorial(n - p), factorial(n - k - 1));
    pre.canonicalize();
    return pre * pow2(-k) * Rational(sum);
}

inline Rational trace_E_pi_highest(int n, int k) {
    check_k(n, k);
    Rational r(factorial(n - 1), factorial(n - k - 1));
    r.canonicalize();
    return Rational(sign_power(k)) * r * pow2(-k);
}

// sum_{p=k+1}^{n} C(p-1,k) C(n-p+k,k)
inline Integer combinatorial_sum(int n, int k) {
    Integer s = 0;
    for (int p = k + 1; p <= n; ++p) s += binomial(p - 1, k) * binomial(n - p + k, k);
    return s;
}

inline Rational dynkin_index(int n) {
    check_dimension(n);
    return Rational(binomial(n + 1, 3));
}

// Tr(A_n^2)/Tr(A_2^2) from the constructed embedding
inline Rational dynkin_index_from_traces(const PrincipalEmbedding& P) {
    PrincipalEmbedding two = build_principal(2);
    return killing_pairing(P.A, P.A) / killing_pairing(two.A, two.A);
}

struct PrincipalBasis {
    std::vector<ExactMatrix> h;        // h[j-1] = h_j
    std::vector<Rational> eta_sq;      // eta_j^2; normalized duals are h_j / eta_j
};

inline Rational eta_squared_closed(int n, int k) {
    check_k(n, k);
    Integer f = factorial(k);
    Rational r(binomial(n + 1, 3), f * f * binomial(n + k, 2 * k + 1));
    r.canonicalize();
    return r;
}

// h_j in the centralizer of X-Y with Tr(E0_i h_j) = delta_ij and Tr(h_j) = 0
inline PrincipalBasis principal_basis(const PrincipalEmbedding& P) {
    const int n = P.n;
    const std::size_t N = static_cast<std::size_t>(n);
    ExactMatrix T(N);
    for (int i = 1; i < n; ++i)
        for (int p = 1; p <= n; ++p) T(i - 1, p - 1) = trace_E_pi(P, i, p);
    for (int p = 1; p <= n; ++p) T(N - 1, p - 1) = 1;

    PrincipalBasis out;
    for (int j = 1; j < n; ++j) {
        std::vector<Rational> rhs(N, Rational(0));
        rhs[j - 1] = 1;
        std::vector<Rational> a = solve(T, rhs);
        ExactMatrix h(N);
        for (int p = 1; p <= n; ++p) h += P.pi(p) * a[p - 1];
        out.h.push_back(std::move(h));
        out.eta_sq.push_back(eta_squared_closed(n, j));
    }
    return out;
}

}  // namespace hvk
