#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "hvk/errors.hpp"
#include "hvk/exact.hpp"
#include "hvk/lie_core.hpp"
#include "hvk/report.hpp"

namespace hvk {

// coeff * pi^pi_power
struct PiRational {
    Rational coeff = 0;
    int pi_power = 0;

    double value() const { return coeff.get_d() * std::pow(std::numbers::pi, pi_power); }

    PiRational& operator*=(const PiRational& o) {
        coeff *= o.coeff;
        pi_power += o.pi_power;
        return *this;
    }
    PiRational& operator*=(const Rational& r) {
        coeff *= r;
        return *this;
    }
    PiRational& operator+=(const PiRational& o) {
        if (o.coeff == 0) return *this;
        if (coeff == 0) return *this = o;
        if (o.pi_power != pi_power) throw invalid_argument("PiRational: adding different powers of pi");
        coeff += o.coeff;
        return *this;
    }
    PiRational operator-() const { return {-coeff, pi_power}; }
};

inline PiRational operator*(PiRational a, const PiRational& b) { return a *= b; }
inline PiRational operator*(PiRational a, const Rational& r) { return a *= r; }
inline PiRational operator*(const Rational& r, PiRational a) { return a *= r; }
inline PiRational operator+(PiRational a, const PiRational& b) { return a += b; }
inline PiRational operator-(PiRational a, const PiRational& b) { return a += -b; }
inline bool operator==(const PiRational& a, const PiRational& b) {
    if (a.coeff == 0 && b.coeff == 0) return true;
    return a.coeff == b.coeff && a.pi_power == b.pi_power;
}

inline void check_gardiner_range(int n, int k, int p) {
    check_dimension(n);
    if (k < 2 || k > n) throw invalid_argument("k must lie in 2..n");
    if (p < 1 || p > n) throw invalid_argument("p must lie in 1..n");
}

inline void check_chi(int chi) {
    if (chi >= 0) throw invalid_argument("chi must be negative");
}

// c^{(p)}_{n,k} from the alternating-sum closed form
inline Rational gardiner_coefficient(int n, int k, int p) {
    check_gardiner_range(n, k, p);
    Integer sum = 0;
    for (int j = std::max(1, k + p - n); j <= std::min(k, p); ++j) {
        Integer c = binomial(k - 1, j - 1);
        Integer term = binomial(n - k, p - j) * c * c;
        if ((j + k + 1) % 2) sum -= term;
        else sum += term;
    }
    Rational pre(factorial(p - 1) * factorial(n - p), factorial(n - k));
    pre.canonicalize();
    return pre * pow2(2 - k) * Rational(sum);
}

// (-1)^k (n-1)! / (2^{k-2} (n-k)!)
inline Rational largest_gardiner(int n, int k) {
    check_gardiner_range(n, k, 1);
    Rational r(factorial(n - 1), factorial(n - k));
    r.canonicalize();
    return Rational(sign_power(k)) * r * pow2(2 - k);
}

// (-1)^{p+n+1} (n-1)!/2^{n-2} C(n-1,p-1)
inline Rational gardiner_top_degree(int n, int p) {
    check_gardiner_range(n, n, p);
    return Rational(sign_power(p + n + 1)) * Rational(factorial(n - 1) * binomial(n - 1, p - 1)) * pow2(2 - n);
}

// A(k,n) = (-1)^k (n-1)! / (2^{k-1} (n-k)!), the cross-ratio constant
inline Rational cross_ratio_constant(int n, int k) {
    return largest_gardiner(n, k) * Rational(1, 2);
}

inline PiRational hejhal_constant(int k) {
    if (k < 1) throw invalid_argument("hejhal_constant: k must be positive");
    Integer f = factorial(k - 1);
    Rational r(f * f, factorial(2 * k - 2));
    r.canonicalize();
    return {Rational(sign_power(k)) * pow2(k - 2) * r, -1};
}

inline Rational eta_squared(int n, int k) {
    check_dimension(n);
    return eta_squared_closed(n, k);
}

// -d(n)/Tr(E0_k F0_k) from the constructed matrices
inline Rational eta_squared_from_traces(const PrincipalEmbedding& P, int k) {
    return -dynkin_index(P.n) / trace_EF(P, k);
}

inline Rational consecutive_difference(int n, int k, int p) {
    check_gardiner_range(n, k, p);
    if (p > n - 1) throw invalid_argument("p must lie in 1..n-1");
    return gardiner_coefficient(n, k, p) - gardiner_coefficient(n, k, p + 1);
}

struct CoefficientTable {
    int n = 0;
    std::map<std::pair<int, int>, Rational> entries;  // (k, p) -> c
    std::map<int, Rational> largest;
    std::map<int, Rational> eta_sq;                   // k = 1..n-1
    Rational dynkin;
};

inline CoefficientTable coefficient_table(int n) {
    check_dimension(n);
    CoefficientTable t;
    t.n = n;
    for (int k = 2; k <= n; ++k) {
        for (int p = 1; p <= n; ++p) t.entries[{k, p}] = gardiner_coefficient(n, k, p);
        t.largest[k] = largest_gardiner(n, k);
    }
    for (int k = 1; k < n; ++k) t.eta_sq[k] = eta_squared(n, k);
    t.dynkin = dynkin_index(n);
    return t;
}

/*
 * Laurent polynomial in t: coefficient of t^e stored at key e.
 */
using Laurent = std::map<int, Rational>;

inline Laurent laurent_trace_variation_lhs(int n) {
    Laurent out;
    for (int p = 1; p <= n; ++p) {
        Rational c = gardiner_coefficient(n, n, p);
        if (c != 0) out[n + 1 - 2 * p] += c;
    }
    return out;
}

// (-1)^n (n-1)! / 2^{n-2} * (t - 1/t)^{n-1}
inline Laurent laurent_trace_variation_rhs(int n) {
    Laurent out;
    Rational pre = Rational(sign_power(n)) * Rational(factorial(n - 1)) * pow2(2 - n);
    for (int j = 0; j <= n - 1; ++j) {
        Rational c = pre * Rational(binomial(n - 1, j));
        if (j % 2) c = -c;
        out[n - 1 - 2 * j] += c;
    }
    return out;
}

inline double symplectic_pairing(std::complex<double> inner, bool same_degree, bool normalized, int n) {
    if (!same_degree) return 0.0;
    double w = -2.0 * inner.imag();
    return normalized ? w : dynkin_index(n).get_d() * w;
}

inline PiRational twist_coefficient(int n, int k) {
    check_gardiner_range(n, k, 1);
    PiRational r = hejhal_constant(k);
    r.coeff /= dynkin_index(n);
    return r;
}

// c r_k eta_{k-1} / 2
inline double hamiltonian_coefficient(int n, int k, int p) {
    check_gardiner_range(n, k, p);
    double eta = std::sqrt(eta_squared(n, k - 1).get_d());
    return gardiner_coefficient(n, k, p).get_d() * hejhal_constant(k).value() * eta / 2.0;
}

// same without the normalization factor eta_{k-1}
inline double hamiltonian_coefficient_standard(int n, int k, int p) {
    check_gardiner_range(n, k, p);
    return gardiner_coefficient(n, k, p).get_d() * hejhal_constant(k).value() / 2.0;
}

// 2^{k-2} ((k-1)!)^2 / (2 pi |chi|)
inline PiRational variance_constant(int k, int chi) {
    if (k < 2) throw invalid_argument("variance_constant: k must be at least 2");
    check_chi(chi);
    Integer f = factorial(k - 1);
    return {pow2(k - 2) * Rational(f * f) / Rational(2 * (-chi)), -1};
}

inline PiRational pressure_coefficient_standard(int n, int k, int chi) {
    check_gardiner_range(n, k, 1);
    check_chi(chi);
    Rational b(factorial(k - 1) * factorial(n - 1), factorial(n - k));
    b.canonicalize();
    return {b * b * pow2(1 - k) / Rational(-chi), -1};
}

inline PiRational pressure_pipeline(int n, int k, int chi) {
    Rational g = largest_gardiner(n, k);
    return variance_constant(k, chi) * (g * g);
}

inline PiRational pressure_coefficient_normalized(int n, int k, int chi) {
    check_gardiner_range(n, k, 1);
    check_chi(chi);
    Integer f = factorial(n - 1);
    Rational r(f * f * binomial(n + 1, 3) * factorial(2 * k - 1), factorial(n + k - 1) * factorial(n - k));
    r.canonicalize();
    return {r * pow2(1 - k) / Rational(-chi), -1};
}

// c with A = c * (multiplication by i) on the degree-k summand
inline double pressure_endomorphism_scalar(int n, int k, int chi) {
    return -pressure_coefficient_normalized(n, k, chi).value() / 2.0;
}

inline LabeledValue exact_value(const std::string& label, const Rational& r) {
    return {label, r.get_d(), r.get_str()};
}

// -Tr(E0_k F0_k) summed along the two nonzero diagonals, without building matrices
inline Integer trace_EF_sparse(int n, int k) {
    Integer s = 0;
    for (int p = 1; p <= n - k; ++p) {
        Integer e = 1, f = 1;
        for (int i = 0; i < k; ++i) {
            e *= n - p - i;
            f *= p + i;
        }
        s += e * f;
    }
    return s;
}

/*
 * Large-n ratios:
 *  (a) eta_{k-1} (n-2)!/(2^{k-2}(n-k)!) against sqrt((2k-1)!/3)/(2^{k-2}(k-1)!)
 *  (b) -Tr(E0_k F0_k) against n^{2k+1}(k!)^2/(2k+1)!
 *  (c) pressure_coefficient_normalized/(n-1)^2 against (2k-1)!/(2^{k-1} 3 pi |chi|)
 * For each quantity: a limit report at the largest n (tolerance 2%) and a decay
 * report whose defect is the worst error ratio over doublings (tolerance 0.6).
 * The ratios with 6 in place of 3 are recorded as diagnostics.
 */
inline std::vector<VerificationReport> large_n_checks(int k, const std::vector<int>& n_list, int chi = -2) {
    if (k < 2) throw invalid_argument("large_n_checks: k must be at least 2");
    if (n_list.empty() || !std::is_sorted(n_list.begin(), n_list.end()) || n_list.front() < k + 1)
        throw invalid_argument("large_n_checks: n_list must be increasing with n > k");
    check_chi(chi);

    auto ratio_a_sq = [k](int n) -> Rational {
        Rational fall(factorial(n - 2), factorial(n - k));
        fall.canonicalize();
        Integer fk = factorial(k - 1);
        return eta_squared(n, k - 1) * fall * fall * Rational(fk * fk) * 3 / Rational(factorial(2 * k - 1));
    };
    auto ratio_b = [k](int n) -> Rational {
        Integer nn = 1;
        for (int i = 0; i < 2 * k + 1; ++i) nn *= n;
        Integer fk = factorial(k);
        Rational r(trace_EF_sparse(n, k) * factorial(2 * k + 1), nn * fk * fk);
        r.canonicalize();
        return r;
    };
    auto ratio_c = [k, chi](int n) -> Rational {
        PiRational pn = pressure_coefficient_normalized(n, k, chi);
        Rational target = Rational(factorial(2 * k - 1)) * pow2(1 - k) / Rational(3 * (-chi));
        return pn.coeff / Rational(static_cast<long>(n - 1) * (n - 1)) / target;
    };

    struct Series {
        std::string name;
        std::vector<double> ratio;
        std::vector<double> ratio6;
    };
    std::vector<Series> all = {{"eigenvalue", {}, {}}, {"trace", {}, {}}, {"pressure", {}, {}}};
    for (int n : n_list) {
        double a = std::sqrt(ratio_a_sq(n).get_d());
        all[0].ratio.push_back(a);
        all[0].ratio6.push_back(a * std::sqrt(2.0));
        double b = ratio_b(n).get_d();
        all[1].ratio.push_back(b);
        all[1].ratio6.push_back(b);
        double c = ratio_c(n).get_d();
        all[2].ratio.push_back(c);
        all[2].ratio6.push_back(2.0 * c);
    }

    std::vector<VerificationReport> out;
    const std::string base = "asymptotics.k" + std::to_string(k) + ".";
    for (const auto& s : all) {
        VerificationReport lim;
        lim.claim_id = base + s.name + ".limit";
        lim.computed.push_back({"ratio_n" + std::to_string(n_list.back()), s.ratio.back(), ""});
        lim.reference.push_back({"limit", 1.0, ""});
        lim.tolerance = 0.02;
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            lim.diag("ratio_n" + std::to_string(n_list[i]), s.ratio[i]);
            lim.diag("ratio_sixth_n" + std::to_string(n_list[i]), s.ratio6[i]);
        }
        lim.close();
        out.push_back(lim);

        VerificationReport dec;
        dec.claim_id = base + s.name + ".decay";
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
            double e0 = std::abs(s.ratio[i] - 1.0), e1 = std::abs(s.ratio[i + 1] - 1.0);
            double q = e0 > 0 ? e1 / e0 : (e1 > 0 ? INFINITY : 0.0);
            if (n_list[i + 1] == 2 * n_list[i]) worst = std::max(worst, q);
            dec.diag("error_n" + std::to_string(n_list[i]), e0);
        }
        dec.diag("error_n" + std::to_string(n_list.back()), std::abs(s.ratio.back() - 1.0));
        dec.computed.push_back({"worst_doubling_error_ratio", worst, ""});
        dec.reference.push_back({"bound", 0.6, ""});
        dec.tolerance = 0.6;
        dec.defect = worst;
        dec.passed = worst <= dec.tolerance;
        out.push_back(dec);
    }
    return out;
}

}  // namespace hvk
