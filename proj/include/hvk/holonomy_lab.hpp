#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hvk/coefficients.hpp"
#include "hvk/errors.hpp"
#include "hvk/lie_core.hpp"
#include "hvk/ode.hpp"
#include "hvk/poincare_series.hpp"
#include "hvk/quadrature.hpp"
#include "hvk/report.hpp"

namespace hvk {

enum class DeformationMode { standard_hitchin, normalized_hitchin, oper_standard, oper_normalized };

inline std::string mode_name(DeformationMode m) {
    switch (m) {
        case DeformationMode::standard_hitchin: return "standard-hitchin";
        case DeformationMode::normalized_hitchin: return "normalized-hitchin";
        case DeformationMode::oper_standard: return "oper-standard";
        case DeformationMode::oper_normalized: return "oper-normalized";
    }
    return "?";
}

inline bool is_oper(DeformationMode m) {
    return m == DeformationMode::oper_standard || m == DeformationMode::oper_normalized;
}
inline bool is_normalized(DeformationMode m) {
    return m == DeformationMode::normalized_hitchin || m == DeformationMode::oper_normalized;
}

/*
 * Numeric data of the principal embedding in the u-frame, where the
 * undeformed connection is diagonal. Built once per n.
 */
struct UFrameData {
    int n = 0;
    Eigen::VectorXd lambda;              // mu_p = (2p-n-1)/2
    std::vector<Eigen::MatrixXcd> E, F;  // E[j] = U^{-1} E0_j U, j = 1..n-1
    std::vector<Eigen::MatrixXcd> Ew, Fw;
    std::vector<std::vector<Rational>> trE, trF;  // trE[j][p-1] = Tr(E0_j pi_p)
    Eigen::MatrixXcd U;
};

inline Eigen::MatrixXcd to_eigen(const ExactMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(i, j).get_d();
    return out;
}
inline Eigen::MatrixXcd to_eigen(const GaussMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(i, j).to_complex();
    return out;
}

inline std::shared_ptr<const UFrameData> uframe(int n) {
    static std::map<int, std::shared_ptr<const UFrameData>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    PrincipalEmbedding P = build_principal(n);
    auto d = std::make_shared<UFrameData>();
    d->n = n;
    d->lambda.resize(n);
    for (int p = 1; p <= n; ++p) d->lambda(p - 1) = P.mu[p - 1].get_d();
    d->U = to_eigen(P.U);
    Eigen::MatrixXcd Ui = d->U.inverse();
    d->E.resize(n);
    d->F.resize(n);
    d->Ew.resize(n);
    d->Fw.resize(n);
    d->trE.resize(n);
    d->trF.resize(n);
    for (int j = 1; j < n; ++j) {
        d->Ew[j] = to_eigen(P.E(j));
        d->Fw[j] = to_eigen(P.F(j));
        d->E[j] = Ui * d->Ew[j] * d->U;
        d->F[j] = Ui * d->Fw[j] * d->U;
        for (int p = 1; p <= n; ++p) {
            d->trE[j].push_back(trace_E_pi(P, j, p));
            d->trF[j].push_back(trace_F_pi(P, j, p));
        }
    }
    cache[n] = d;
    return d;
}

struct DeformationSpec {
    int n = 2;
    int k = 2;
    DeformationMode mode = DeformationMode::standard_hitchin;
    std::function<Complex(double)> q_hat;

    void validate() const {
        check_dimension(n);
        if (k < 2 || k > n) throw invalid_argument("deformation degree must lie in 2..n");
        if (!q_hat) throw invalid_argument("deformation needs a q_hat profile");
    }
    double eta() const { return is_normalized(mode) ? std::sqrt(eta_squared(n, k - 1).get_d()) : 1.0; }

    // coefficients (a, b) with Ddot = a E0_{k-1} + b F0_{k-1}
    std::pair<Complex, Complex> weights(double s) const {
        Complex q = q_hat(s) * eta();
        if (is_oper(mode)) return {q, 0.0};
        return {q, -std::conj(q)};
    }
    Eigen::MatrixXcd u_frame(double s) const {
        auto d = uframe(n);
        auto [a, b] = weights(s);
        return a * d->E[k - 1] + b * d->F[k - 1];
    }
    Eigen::MatrixXcd w_frame(double s) const {
        auto d = uframe(n);
        auto [a, b] = weights(s);
        return a * d->Ew[k - 1] + b * d->Fw[k - 1];
    }
};

inline DeformationSpec cylinder_deformation(int n, int k, DeformationMode mode,
                                            std::shared_ptr<const CylinderForm> q) {
    if (q->degree() != k) throw invalid_argument("cylinder form degree does not match k");
    return {n, k, mode, [q](double s) { return q->on_axis(s); }};
}

struct HolonomyProblem {
    int n = 2;
    double ell = 1.0;
    double t = 0.0;
    DeformationSpec deformation;

    void validate() const {
        deformation.validate();
        if (deformation.n != n) throw invalid_argument("holonomy problem: dimension mismatch");
        if (!(ell > 0)) throw invalid_argument("holonomy problem: ell must be positive");
    }
    Eigen::MatrixXcd generator(double s, double tt) const {
        auto d = uframe(n);
        Eigen::MatrixXcd G = Eigen::MatrixXcd(d->lambda.cast<Complex>().asDiagonal());
        if (tt != 0.0) G += tt * deformation.u_frame(s);
        return G;
    }
};

inline OdeOptions holonomy_options() { return {1e-12, 1e-15, 1e-2, 1e-13, 2000000}; }

// transport for D = d + G(s) ds: V' = -G V, V(0) = I
template <typename Gen>
OdeResult transport(Gen G, int n, double ell, const OdeOptions& opt = holonomy_options()) {
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
    return dp5_adaptive([&](double s, const Eigen::MatrixXcd& V) -> Eigen::MatrixXcd { return -(G(s) * V); }, I,
                        0.0, ell, opt);
}

inline OdeResult holonomy_solution(const HolonomyProblem& P, const OdeOptions& opt = holonomy_options()) {
    P.validate();
    return transport([&](double s) { return P.generator(s, P.t); }, P.n, P.ell, opt);
}

inline Eigen::MatrixXcd holonomy(const HolonomyProblem& P, const OdeOptions& opt = holonomy_options()) {
    return holonomy_solution(P, opt).y;
}

inline Eigen::MatrixXcd holonomy_on_mesh(const HolonomyProblem& P, double t, const std::vector<double>& mesh) {
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(P.n, P.n);
    return dp5_on_mesh([&](double s, const Eigen::MatrixXcd& V) -> Eigen::MatrixXcd { return -(P.generator(s, t) * V); },
                       I, mesh);
}

inline void check_simple(const std::vector<Complex>& logs) {
    for (std::size_t i = 0; i < logs.size(); ++i)
        for (std::size_t j = i + 1; j < logs.size(); ++j)
            if (std::abs(logs[i] - logs[j]) < 1e-8) throw degenerate_spectrum("holonomy eigenvalues collide");
}

// log-eigenvalues sorted by decreasing real part
inline std::vector<Complex> eigen_logs(const Eigen::MatrixXcd& V) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(V, false);
    if (es.info() != Eigen::Success) throw internal_consistency_error("eigenvalue solver failed");
    std::vector<Complex> logs;
    for (Eigen::Index i = 0; i < V.rows(); ++i) {
        if (std::abs(es.eigenvalues()(i)) == 0.0) throw domain_error("singular holonomy");
        logs.push_back(std::log(es.eigenvalues()(i)));
    }
    std::sort(logs.begin(), logs.end(), [](Complex a, Complex b) { return a.real() > b.real(); });
    check_simple(logs);
    return logs;
}

// log-eigenvalues matched to reference labels; imaginary parts follow the reference branch
inline std::vector<Complex> tracked_logs(const Eigen::MatrixXcd& V, const std::vector<Complex>& ref) {
    std::vector<Complex> raw = eigen_logs(V);
    std::vector<Complex> out(ref.size());
    std::vector<bool> used(raw.size(), false);
    for (std::size_t p = 0; p < ref.size(); ++p) {
        std::size_t best = raw.size();
        double bd = INFINITY;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (used[i]) continue;
            Complex d = raw[i] - ref[p];
            d.imag(std::remainder(d.imag(), 2 * std::numbers::pi));
            if (std::abs(d) < bd) bd = std::abs(d), best = i;
        }
        used[best] = true;
        Complex d = raw[best] - ref[p];
        d.imag(std::remainder(d.imag(), 2 * std::numbers::pi));
        out[p] = ref[p] + d;
    }
    return out;
}

inline std::vector<Complex> fuchsian_logs(int n, double ell) {
    std::vector<Complex> out;
    for (int p = 1; p <= n; ++p) out.emplace_back((n + 1 - 2 * p) * ell / 2.0, 0.0);
    return out;
}

struct FdResult {
    std::vector<Complex> value;  // d/dt log lambda_p, p = 1..n
    std::vector<Complex> error;  // Richardson error estimate
    Complex trace_value = 0.0;   // d/dt Tr V(ell)
    Complex trace_error = 0.0;
    double h = 0.0;
    int mesh_steps = 0;
};

// sup of |Ddot| over the mesh in the Frobenius norm
inline double deformation_scale(const HolonomyProblem& P, const std::vector<double>& mesh) {
    double m = 0.0;
    for (double s : mesh) m = std::max(m, P.deformation.u_frame(s).norm());
    return m;
}

/*
 * Central differences in t at t = 0 on the frozen t = 0 mesh, Richardson
 * combined over h and h/2. Default h = 1e-3 / sup|Ddot|.
 */
inline FdResult first_variation_fd_all(const HolonomyProblem& P, double h = 0.0) {
    P.validate();
    HolonomyProblem P0 = P;
    P0.t = 0.0;
    OdeResult base = holonomy_solution(P0);
    FdResult r;
    r.mesh_steps = base.accepted;
    if (h <= 0) {
        double sc = deformation_scale(P0, base.mesh);
        if (sc == 0.0) {
            r.value.assign(P.n, 0.0);
            r.error.assign(P.n, 0.0);
            return r;
        }
        h = 1e-3 / sc;
    }
    r.h = h;
    std::vector<Complex> ref = fuchsian_logs(P.n, P.ell);
    auto eval = [&](double t) {
        Eigen::MatrixXcd V = holonomy_on_mesh(P0, t, base.mesh);
        return std::make_pair(tracked_logs(V, ref), V.trace());
    };
    auto [lp1, tp1] = eval(h);
    auto [lm1, tm1] = eval(-h);
    auto [lp2, tp2] = eval(h / 2);
    auto [lm2, tm2] = eval(-h / 2);
    for (int p = 0; p < P.n; ++p) {
        Complex d1 = (lp1[p] - lm1[p]) / (2 * h), d2 = (lp2[p] - lm2[p]) / h;
        r.value.push_back((4.0 * d2 - d1) / 3.0);
        r.error.push_back((d2 - d1) / 3.0);
    }
    Complex d1 = (tp1 - tm1) / (2 * h), d2 = (tp2 - tm2) / h;
    r.trace_value = (4.0 * d2 - d1) / 3.0;
    r.trace_error = (d2 - d1) / 3.0;
    return r;
}

inline Complex first_variation_fd(const HolonomyProblem& P, int p, double h = 0.0) {
    check_p(P.n, p);
    return first_variation_fd_all(P, h).value[p - 1];
}

struct ProfileIntegrals {
    Complex q;         // int q_hat ds over [0, ell]
    Complex q_conj;    // int conj(q_hat) ds
    double abs_sup = 0.0;
};

inline ProfileIntegrals profile_integrals(const DeformationSpec& D, double ell) {
    ProfileIntegrals out;
    QuadOptions opt{1e-13, 1e-15, 4000, true};
    out.q = integrate(D.q_hat, 0.0, ell, opt).value;
    out.q_conj = std::conj(out.q);
    for (int i = 0; i <= 64; ++i) out.abs_sup = std::max(out.abs_sup, std::abs(D.q_hat(ell * i / 64.0)));
    return out;
}

// -int Tr(Ddot pi_p) ds with exact projection traces
inline Complex first_variation_formula(const HolonomyProblem& P, int p) {
    P.validate();
    check_p(P.n, p);
    const auto& D = P.deformation;
    auto d = uframe(P.n);
    ProfileIntegrals I = profile_integrals(D, P.ell);
    double eta = D.eta();
    Complex a = eta * I.q;
    Complex b = is_oper(D.mode) ? Complex(0.0) : -eta * I.q_conj;
    return -(d->trE[D.k - 1][p - 1].get_d() * a + d->trF[D.k - 1][p - 1].get_d() * b);
}

// c int Re q (Hitchin) or (c/2) int q (oper), times eta for normalized modes
inline Complex gardiner_prediction(const HolonomyProblem& P, int p) {
    const auto& D = P.deformation;
    ProfileIntegrals I = profile_integrals(D, P.ell);
    double c = gardiner_coefficient(P.n, D.k, p).get_d() * D.eta();
    return is_oper(D.mode) ? 0.5 * c * I.q : Complex(c * I.q.real());
}

inline double complex_defect(Complex a, Complex b, double floor) {
    double s = std::max(std::abs(b), floor);
    return s > 0 ? std::abs(a - b) / s : std::abs(a - b);
}

// floor for relative defects when the prediction vanishes at some p
inline double gardiner_floor(const HolonomyProblem& P) {
    double m = 0.0;
    for (int p = 1; p <= P.n; ++p) m = std::max(m, std::abs(gardiner_prediction(P, p)));
    if (m == 0.0) {
        ProfileIntegrals I = profile_integrals(P.deformation, P.ell);
        for (int p = 1; p <= P.n; ++p)
            m = std::max(m, std::abs(gardiner_coefficient(P.n, P.deformation.k, p).get_d()) * P.ell * I.abs_sup);
    }
    return m;
}

inline std::vector<VerificationReport> gardiner_reports(int n, int k, double ell,
                                                        std::shared_ptr<const CylinderForm> q, DeformationMode mode,
                                                        double tolerance = 1e-6) {
    HolonomyProblem P{n, ell, 0.0, cylinder_deformation(n, k, mode, q)};
    FdResult fd = first_variation_fd_all(P);
    double floor = gardiner_floor(P);
    std::vector<VerificationReport> out;
    for (int p = 1; p <= n; ++p) {
        VerificationReport r;
        r.claim_id = "gardiner." + mode_name(mode) + ".n" + std::to_string(n) + ".k" + std::to_string(k) + ".p" +
                     std::to_string(p) + ".ell" + format_short(ell);
        r.tolerance = tolerance;
        Complex pred = gardiner_prediction(P, p);
        Complex formula = first_variation_formula(P, p);
        add_complex(r, "dlog_lambda", fd.value[p - 1], pred);
        r.defect = complex_defect(fd.value[p - 1], pred, floor);
        r.passed = r.defect <= tolerance;
        r.diag("trace_route.re", formula.real());
        r.diag("trace_route.im", formula.imag());
        r.diag("trace_route_defect", complex_defect(formula, pred, floor));
        r.diag("fd_error_estimate", std::abs(fd.error[p - 1]));
        r.diag("h", fd.h);
        out.push_back(std::move(r));
    }
    return out;
}

inline VerificationReport gardiner_check(int n, int k, int p, double ell, std::shared_ptr<const CylinderForm> q,
                                         DeformationMode mode = DeformationMode::standard_hitchin,
                                         double tolerance = 1e-6) {
    check_gardiner_range(n, k, p);
    return gardiner_reports(n, k, ell, std::move(q), mode, tolerance)[p - 1];
}

// d/dt Tr(holonomy) against 2 (-1)^n (n-1)! sinh(ell/2)^{n-1} int Re q
inline VerificationReport trace_variation_check(int n, double ell, std::shared_ptr<const CylinderForm> q,
                                                double tolerance = 1e-6) {
    HolonomyProblem P{n, ell, 0.0, cylinder_deformation(n, n, DeformationMode::standard_hitchin, q)};
    FdResult fd = first_variation_fd_all(P);
    ProfileIntegrals I = profile_integrals(P.deformation, ell);
    double pred = 2.0 * sign_power(n) * factorial(n - 1).get_d() * std::pow(std::sinh(ell / 2), n - 1) * I.q.real();
    VerificationReport r;
    r.claim_id = "trace_variation.n" + std::to_string(n) + ".ell" + format_short(ell);
    r.tolerance = tolerance;
    add_complex(r, "dtrace", fd.trace_value, pred);
    double floor = 2.0 * factorial(n - 1).get_d() * std::pow(std::sinh(ell / 2), n - 1) * ell * I.abs_sup;
    r.defect = complex_defect(fd.trace_value, pred, std::abs(pred) > 0 ? 0.0 : floor);
    r.passed = r.defect <= tolerance;
    r.diag("fd_error_estimate", std::abs(fd.trace_error));
    return r;
}

}  // namespace hvk
