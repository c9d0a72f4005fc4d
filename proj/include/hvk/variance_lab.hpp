#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <vector>

#include "hvk/coefficients.hpp"
#include "hvk/errors.hpp"
#include "hvk/exact.hpp"
#include "hvk/quadrature.hpp"
#include "hvk/report.hpp"

namespace hvk {

inline void check_beta_args(int m, int d, double R) {
    if (m < 0 || d < 0) throw invalid_argument("incomplete beta: m and d must be non-negative");
    if (!(R >= 0.0 && R < 1.0)) throw invalid_argument("incomplete beta: R must lie in [0,1)");
}

// (2d)!!(m-1)!! / ((2(d-j))!! (m+2j+1)!!) as a rational
inline Rational incomplete_beta_weight(int m, int d, int j) {
    Rational r(double_factorial(2 * d) * double_factorial(m - 1),
               double_factorial(2 * (d - j)) * double_factorial(m + 2 * j + 1));
    r.canonicalize();
    return r;
}

// sum_j R^{m+2j+1} (1-R^2)^{d-j} (2d)!!(m-1)!! / ((2(d-j))!!(m+2j+1)!!)
inline double incomplete_beta_closed(int m, int d, double R) {
    check_beta_args(m, d, R);
    const double om = (1.0 - R) * (1.0 + R);
    double s = 0.0;
    for (int j = 0; j <= d; ++j)
        s += std::pow(R, m + 2 * j + 1) * std::pow(om, d - j) * incomplete_beta_weight(m, d, j).get_d();
    return s;
}

// I_{m,d} = 2d/(m+1) I_{m+2,d-1} + R^{m+1}(1-R^2)^d/(m+1)
inline double incomplete_beta_recursive(int m, int d, double R) {
    check_beta_args(m, d, R);
    const double om = (1.0 - R) * (1.0 + R);
    double v = std::pow(R, m + 2 * d + 1) / (m + 2 * d + 1);  // I_{m+2d,0}
    for (int e = 1; e <= d; ++e) {
        int mm = m + 2 * (d - e);
        v = 2.0 * e / (mm + 1) * v + std::pow(R, mm + 1) * std::pow(om, e) / (mm + 1);
    }
    return v;
}

inline double incomplete_beta_quadrature(int m, int d, double R) {
    check_beta_args(m, d, R);
    if (R == 0.0) return 0.0;
    QuadOptions opt{1e-13, 0.0, 4000, true};
    return integrate([&](double S) { return std::pow(S, m) * std::pow((1.0 - S) * (1.0 + S), d); }, 0.0, R, opt)
        .value;
}

// sum over i+j=k, i,j <= p-1 of ((2p-2)!!)^2 / ((2(p-1-i))!! (2(p-1-j))!!)
inline Rational F_constant(int k, int p) {
    if (p < 1 || k < 0 || k > 2 * p - 2) throw invalid_argument("F_constant: need 0 <= k <= 2p-2");
    Integer top = double_factorial(2 * p - 2);
    Rational s = 0;
    for (int i = 0; i <= p - 1; ++i) {
        int j = k - i;
        if (j < 0 || j > p - 1) continue;
        Rational t(top * top, double_factorial(2 * (p - 1 - i)) * double_factorial(2 * (p - 1 - j)));
        t.canonicalize();
        s += t;
    }
    return s;
}

inline Rational tech_limit_stated(int p) {
    Integer f = factorial(p - 1);
    return pow2(2 * p - 2) * Rational(f * f);
}

// 4^{p-1} ((p-1)!)^2 / (2p-1)!, the limit when C(m+2p-1,m) ~ m^{2p-1}/(2p-1)!
inline Rational tech_limit_corrected(int p) {
    Rational r(factorial(p - 1) * factorial(p - 1), factorial(2 * p - 1));
    r.canonicalize();
    return pow2(2 * p - 2) * r;
}

struct TechSum {
    double R = 0.0;
    double sum = 0.0;
    double G = 0.0;  // sum / |log(1-R)|
    long terms = 0;
    double tail_bound = 0.0;
};

// sum_{m <= M} C(m+2p-1, m) I_{m,p-1}(R)^2, stopping early once the geometric tail is negligible
inline TechSum tech_partial_sum(int p, double eps, long M) {
    if (p < 1) throw invalid_argument("tech sum: p must be positive");
    if (!(eps > 0 && eps < 1)) throw invalid_argument("tech sum: need 0 < 1-R < 1");
    const double R = 1.0 - eps, R2 = R * R, om = eps * (2.0 - eps);
    const int d = p - 1;
    std::vector<double> wj(static_cast<std::size_t>(d) + 1), omp(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j) {
        Integer w = double_factorial(2 * d) / double_factorial(2 * (d - j));
        wj[j] = w.get_d();
        omp[j] = std::pow(om, d - j);
    }
    const double inv_fact = 1.0 / factorial(2 * p - 1).get_d();
    TechSum out;
    out.R = R;
    double Rm1 = R;  // R^{m+1}
    double last = 0.0;
    long m = 0;
    for (; m <= M; ++m) {
        // I_{m,d}: the ratio (m-1)!!/(m+2j+1)!! is 1/((m+1)(m+3)...(m+2j+1))
        double I = 0.0, inv = 1.0 / (m + 1), Rp = Rm1;
        for (int j = 0; j <= d; ++j) {
            if (j > 0) {
                inv /= (m + 2 * j + 1);
                Rp *= R2;
            }
            I += Rp * omp[j] * wj[j] * inv;
        }
        double b = inv_fact;
        for (int i = 1; i <= 2 * p - 1; ++i) b *= double(m + i);
        double term = b * I * I;
        out.sum += term;
        last = term;
        Rm1 *= R;
        double q = R2 * double(m + 2 * p) / double(m + 1);
        if (q < 1.0) {
            out.tail_bound = last * q / (1.0 - q);
            if (out.tail_bound < 1e-15 * out.sum) {
                ++m;
                break;
            }
        } else {
            out.tail_bound = INFINITY;
        }
    }
    out.terms = m;
    if (out.tail_bound > 1e-3 * out.sum)
        throw truncation_insufficient("tech sum: tail above 1e-3 of the partial sum", out.tail_bound);
    out.G = out.sum / std::abs(std::log(eps));
    return out;
}

struct TechFit {
    double a = 0.0, b = 0.0;
    std::vector<TechSum> sums;
};

// least squares G = a + b / |log(1-R)|
inline TechFit tech_fit(int p, const std::vector<double>& eps_schedule, const std::vector<long>& M_schedule) {
    if (eps_schedule.size() < 2) throw invalid_argument("tech fit needs at least two R values");
    if (!M_schedule.empty() && M_schedule.size() != eps_schedule.size())
        throw invalid_argument("tech fit: one M per R");
    for (std::size_t i = 1; i < eps_schedule.size(); ++i)
        if (!(eps_schedule[i] < eps_schedule[i - 1])) throw invalid_argument("tech fit: R schedule must increase");
    TechFit f;
    Eigen::MatrixXd A(eps_schedule.size(), 2);
    Eigen::VectorXd y(eps_schedule.size());
    for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
        double e = eps_schedule[i];
        long M = M_schedule.empty() ? static_cast<long>(std::ceil(60.0 / e)) : M_schedule[i];
        f.sums.push_back(tech_partial_sum(p, e, M));
        A(i, 0) = 1.0;
        A(i, 1) = 1.0 / std::abs(std::log(e));
        y(i) = f.sums.back().G;
    }
    Eigen::Vector2d c = A.colPivHouseholderQr().solve(y);
    f.a = c(0);
    f.b = c(1);
    return f;
}

inline std::vector<double> default_tech_schedule() { return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

inline VerificationReport tech_limit_check(int p, const std::vector<double>& eps_schedule = default_tech_schedule(),
                                           const std::vector<long>& M_schedule = {}) {
    TechFit f = tech_fit(p, eps_schedule, M_schedule);
    double stated = tech_limit_stated(p).get_d();
    VerificationReport r;
    r.claim_id = "variance.tech.p" + std::to_string(p);
    r.tolerance = 0.05;
    r.computed.push_back({"fitted_limit", f.a, ""});
    r.reference.push_back(exact_value("2^(2p-2)((p-1)!)^2", tech_limit_stated(p)));
    r.defect = std::abs(f.a - stated) / stated;
    r.passed = r.defect < r.tolerance;
    r.diag("fit_slope", f.b);
    r.diag("corrected_limit", tech_limit_corrected(p).get_d());
    r.diag("fitted_over_corrected", f.a / tech_limit_corrected(p).get_d());
    for (const auto& s : f.sums) r.diag("G(1-" + format_short(1.0 - s.R) + ")", s.G);
    return r;
}

/* ---- binomial series identities ---- */

struct SeriesValue {
    double value = 0.0;
    long terms = 0;
};

// sum_n C(n+2k-1, n) t_n with t_n given; stops once the geometric tail < tol * sum
template <typename T>
SeriesValue binomial_series(int k, double ratio_bound, T term, double tol = 1e-15, long max_terms = 10000000) {
    SeriesValue out;
    double c = 1.0;  // C(n+2k-1, n)
    for (long n = 0; n < max_terms; ++n) {
        if (n > 0) c *= double(n + 2 * k - 1) / double(n);
        double t = c * term(n);
        out.value += t;
        out.terms = n + 1;
        double q = ratio_bound * double(n + 2 * k) / double(n + 1);
        if (q < 1.0 && t * q / (1.0 - q) < tol * std::abs(out.value)) return out;
    }
    throw truncation_insufficient("binomial series did not reach its tail tolerance", 0.0);
}

inline double r_of_R(double R) { return 0.5 * std::log((1.0 + R) / (1.0 - R)); }

// (1-R^2)^{-1} = sum_n C(n+2k-1,n) R^{2n} (1-R^2)^{2k-1}
inline std::pair<double, double> identity_a(int k, double R) {
    double om = (1.0 - R) * (1.0 + R);
    auto s = binomial_series(k, R * R, [&](long n) { return std::pow(R, 2.0 * n) * std::pow(om, 2 * k - 1); });
    return {s.value, 1.0 / om};
}

// r(R) = sum_n C(n+2k-1,n) I_{2n,2k-1}(R)
inline std::pair<double, double> identity_b(int k, double R) {
    auto s = binomial_series(k, R * R, [&](long n) { return incomplete_beta_closed(static_cast<int>(2 * n), 2 * k - 1, R); });
    return {s.value, r_of_R(R)};
}

// (1-L)^{2k} sum_{n<=N} C(n+2k-1,n) L^n = 1 + O(L^{N+1}) as exact polynomials
inline bool identity_c_exact(int k, int N) {
    std::vector<Integer> a(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) a[n] = binomial(n + 2 * k - 1, n);
    std::vector<Integer> prod(static_cast<std::size_t>(N) + 1, Integer(0));
    for (int i = 0; i <= 2 * k; ++i) {
        Integer c = binomial(2 * k, i);
        if (i % 2) c = -c;
        for (int n = 0; n + i <= N; ++n) prod[n + i] += c * a[n];
    }
    if (prod[0] != 1) return false;
    for (int n = 1; n <= N; ++n)
        if (prod[n] != 0) return false;
    return true;
}

inline VerificationReport binomial_series_identities(int k, double R, double tolerance = 1e-8) {
    if (k < 2) throw invalid_argument("series identities: k must be at least 2");
    if (!(R > 0 && R < 1)) throw invalid_argument("series identities: R must lie in (0,1)");
    VerificationReport r;
    r.claim_id = "variance.series.k" + std::to_string(k) + ".R" + format_short(R);
    r.tolerance = tolerance;
    auto [a_lhs, a_rhs] = identity_a(k, R);
    auto [b_lhs, b_rhs] = identity_b(k, R);
    r.computed.push_back({"(a) sum", a_lhs, ""});
    r.reference.push_back({"(a) 1/(1-R^2)", a_rhs, ""});
    r.computed.push_back({"(b) sum", b_lhs, ""});
    r.reference.push_back({"(b) r(R)", b_rhs, ""});
    bool c_ok = identity_c_exact(k, 40);
    r.computed.push_back({"(c) exact", c_ok ? 1.0 : 0.0, c_ok ? "1" : "0"});
    r.reference.push_back({"(c) exact", 1.0, "1"});
    r.close();
    return r;
}

// cross-degree variance pairings vanish
inline PiRational variance_pairing_constant(int k, int k0, int chi) {
    if (k != k0) {
        check_chi(chi);
        return {Rational(0), 0};
    }
    return variance_constant(k, chi);
}

struct BetaAgreement {
    double closed_vs_recursive = 0.0;
    double closed_vs_quadrature = 0.0;
    double recursive_vs_quadrature = 0.0;
    double max() const { return std::max({closed_vs_recursive, closed_vs_quadrature, recursive_vs_quadrature}); }
};

inline double rel_diff(double a, double b) {
    double s = std::max(std::abs(a), std::abs(b));
    return s > 0 ? std::abs(a - b) / s : 0.0;
}

inline BetaAgreement beta_agreement(int m, int d, double R) {
    double c = incomplete_beta_closed(m, d, R), r = incomplete_beta_recursive(m, d, R),
           q = incomplete_beta_quadrature(m, d, R);
    return {rel_diff(c, r), rel_diff(c, q), rel_diff(r, q)};
}

inline std::vector<double> beta_R_grid() { return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}; }

inline VerificationReport beta_triple_check(int m_max = 40, int d_max = 6, double tolerance = 1e-11) {
    VerificationReport r;
    r.claim_id = "variance.incomplete_beta";
    r.tolerance = tolerance;
    double worst = 0.0;
    std::string where;
    for (int m = 0; m <= m_max; ++m)
        for (int d = 0; d <= d_max; ++d)
            for (double R : beta_R_grid()) {
                double w = beta_agreement(m, d, R).max();
                if (w > worst) worst = w, where = "m" + std::to_string(m) + ".d" + std::to_string(d) + ".R" + format_short(R);
            }
    r.computed.push_back({"max pairwise relative defect", worst, ""});
    r.reference.push_back({"zero", 0.0, ""});
    r.defect = worst;
    r.passed = worst < tolerance;
    r.diag("worst_at", where);
    return r;
}

inline std::vector<VerificationReport> variance_reports() {
    std::vector<VerificationReport> out;
    out.push_back(beta_triple_check());
    for (int p = 1; p <= 4; ++p) out.push_back(tech_limit_check(p));
    for (int k : {2, 3, 4})
        for (double R : {0.3, 0.6, 0.9}) out.push_back(binomial_series_identities(k, R));
    return out;
}

}  // namespace hvk
