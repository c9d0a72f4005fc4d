#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hvk/coefficients.hpp"
#include "hvk/errors.hpp"
#include "hvk/holonomy_lab.hpp"
#include "hvk/hyperbolic.hpp"
#include "hvk/poincare_series.hpp"
#include "hvk/quadrature.hpp"
#include "hvk/report.hpp"

namespace hvk {

/* ---- Veronese frames in the polynomial model ---- */

// a point of the closed upper half plane: interior, real, or infinity
struct ClosedPoint {
    Complex z = 0.0;
    bool inf = false;

    static ClosedPoint at(Complex w) { return {w, false}; }
    static ClosedPoint infinity() { return {0.0, true}; }
    static ClosedPoint from(const BoundaryPoint& p) { return p.inf ? infinity() : at(p.x); }
};

inline double binom_d(int n, int j) { return binomial(n, j).get_d(); }

/*
 * line(z) has components C(n-1,j) z^j; covector(z) kills line(z) and its
 * first n-2 derivatives, computed from the (n-1)x(n-1) minors of those columns.
 */
struct VeroneseFrame {
    int n = 2;
    ClosedPoint point;
    Eigen::VectorXcd line, covector;

    VeroneseFrame(int n_, ClosedPoint p) : n(n_), point(p) {
        if (n < 2) throw invalid_dimension("VeroneseFrame: n must be at least 2");
        line = Eigen::VectorXcd::Zero(n);
        covector = Eigen::VectorXcd::Zero(n);
        if (p.inf) {
            line(n - 1) = 1.0;
            covector(0) = 1.0;
            return;
        }
        Eigen::MatrixXcd D(n, n - 1);
        for (int j = 0; j < n; ++j) {
            line(j) = binom_d(n - 1, j) * ipow(p.z, j);
            for (int m = 0; m < n - 1; ++m) {
                // m-th derivative of C(n-1,j) z^j
                double c = j >= m ? binom_d(n - 1, j) * Integer(factorial(j) / factorial(j - m)).get_d() : 0.0;
                D(j, m) = j >= m ? c * ipow(p.z, j - m) : Complex(0.0);
            }
        }
        for (int i = 0; i < n; ++i) {
            Eigen::MatrixXcd minor(n - 1, n - 1);
            for (int r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                minor.row(rr++) = D.row(r);
            }
            covector(i) = (i % 2 == 0 ? 1.0 : -1.0) * minor.determinant();
        }
    }
    VeroneseFrame(int n_, const BoundaryPoint& p) : VeroneseFrame(n_, ClosedPoint::from(p)) {}
    VeroneseFrame(int n_, Complex z) : VeroneseFrame(n_, ClosedPoint::at(z)) {}
};

inline Complex pairing(const VeroneseFrame& a, const VeroneseFrame& b) {
    if (a.n != b.n) throw invalid_dimension("pairing: frames of different dimension");
    return b.covector.transpose() * a.line;
}

// Sym^{n-1} of g on the monomial basis e0^{n-1-j} e1^j, with e0 -> d e0 + b e1, e1 -> c e0 + a e1
inline Eigen::MatrixXcd sym_power(const MobiusMap& g, int n) {
    if (n < 2) throw invalid_dimension("sym_power: n must be at least 2");
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<Complex> poly{1.0};  // coefficients in powers of e1
        auto times = [&](Complex c0, Complex c1) {
            std::vector<Complex> out(poly.size() + 1, 0.0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                out[i] += poly[i] * c0;
                out[i + 1] += poly[i] * c1;
            }
            poly = out;
        };
        for (int i = 0; i < n - 1 - j; ++i) times(g.d, g.b);
        for (int i = 0; i < j; ++i) times(g.c, g.a);
        for (int i = 0; i < n; ++i) S(i, j) = poly[i];
    }
    return S;
}

inline void check_pairing(Complex p, const VeroneseFrame& a, const VeroneseFrame& b) {
    if (std::abs(p) <= 1e-13 * a.line.norm() * b.covector.norm())
        throw generic_position_error("cross ratio: degenerate pairing");
}

inline Complex fuchsian_cross_ratio(ClosedPoint x, ClosedPoint y, ClosedPoint X, ClosedPoint Y, int n) {
    VeroneseFrame fx(n, x), fy(n, y), fX(n, X), fY(n, Y);
    Complex xY = pairing(fx, fY), yX = pairing(fy, fX);
    check_pairing(xY, fx, fY);
    check_pairing(yX, fy, fX);
    return pairing(fx, fX) * pairing(fy, fY) / (xY * yX);
}

inline Complex fuchsian_cross_ratio(const BoundaryPoint& x, const BoundaryPoint& y, const BoundaryPoint& X,
                                    const BoundaryPoint& Y, int n) {
    return fuchsian_cross_ratio(ClosedPoint::from(x), ClosedPoint::from(y), ClosedPoint::from(X),
                                ClosedPoint::from(Y), n);
}

/* ---- elementary functions along a geodesic ---- */

/*
 * Geodesic from u to U in arc length s. The Frenet line sits at gamma(a) and
 * the osculating covector at gamma(b); a = -inf and b = +inf put them at the
 * ideal ends.
 */
struct ElementaryPath {
    BoundaryPoint u, U;
    double a = -std::numeric_limits<double>::infinity();
    double b = std::numeric_limits<double>::infinity();
};

struct ElementaryVectors {
    Eigen::VectorXcd zeta, zeta_star;  // u-frame components, rescaled by e^{mu_1 (s-a)} and e^{mu_1 (b-s)}
};

// transport of the line e_n and the covector e_1 (w-basis) under d + Lambda ds
inline ElementaryVectors elementary_vectors(int n, const ElementaryPath& path, double s) {
    static std::map<int, std::pair<Eigen::VectorXcd, Eigen::VectorXcd>> cache;
    auto d = uframe(n);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_pair(Eigen::VectorXcd(d->U.inverse().col(n - 1)),
                                             Eigen::VectorXcd(d->U.row(0).transpose())))
                 .first;
    const Eigen::VectorXcd& c = it->second.first;
    const Eigen::VectorXcd& e = it->second.second;
    ElementaryVectors v{Eigen::VectorXcd::Zero(n), Eigen::VectorXcd::Zero(n)};
    for (int p = 0; p < n; ++p) {
        double gap = d->lambda(p) - d->lambda(0);
        double ta = std::isinf(path.a) ? (p == 0 ? 1.0 : 0.0) : std::exp(-gap * (s - path.a));
        double tb = std::isinf(path.b) ? (p == 0 ? 1.0 : 0.0) : std::exp(-gap * (path.b - s));
        v.zeta(p) = c(p) * ta;
        v.zeta_star(p) = e(p) * tb;
    }
    return v;
}

// p_{z,Z}(s) in the u-frame
inline Eigen::MatrixXcd elementary_projection(int n, const ElementaryPath& path, double s) {
    auto v = elementary_vectors(n, path, s);
    Complex den = v.zeta_star.transpose() * v.zeta;
    if (std::abs(den) <= 1e-14 * v.zeta.norm() * v.zeta_star.norm())
        throw generic_position_error("elementary projection: pairing collapses along the path");
    return v.zeta * v.zeta_star.transpose() / den;
}

inline Complex elementary_integrand(const DeformationSpec& D, const ElementaryPath& path, double s) {
    auto v = elementary_vectors(D.n, path, s);
    Complex den = v.zeta_star.transpose() * v.zeta;
    if (std::abs(den) <= 1e-14 * v.zeta.norm() * v.zeta_star.norm())
        throw generic_position_error("elementary variation: pairing collapses along the path");
    Complex num = v.zeta_star.transpose() * (D.u_frame(s) * v.zeta);
    return -num / den;
}

inline QuadResult<Complex> elementary_variation(const ElementaryPath& path, const DeformationSpec& D, double w0,
                                                double w1, const QuadOptions& opt = line_options()) {
    D.validate();
    if (!std::isfinite(w0) || !std::isfinite(w1)) throw invalid_argument("elementary_variation: infinite window");
    return integrate([&](double s) { return elementary_integrand(D, path, s); }, w0, w1, opt);
}

inline QuadResult<Complex> elementary_variation(const ElementaryPath& path, const DeformationSpec& D,
                                                const QuadOptions& opt = line_options()) {
    return elementary_variation(path, D, path.a, path.b, opt);
}

// Ddot along the geodesic from u to U, profile q(gamma(s))[gamma'(s)^k]
inline DeformationSpec geodesic_deformation(int n, DeformationMode mode, const DifferentialPtr& q,
                                            const BoundaryPoint& u, const BoundaryPoint& U) {
    return {n, q->degree(), mode, restrict_to_geodesic(q, u, U)};
}

// interior endpoints: line at z, covector at Z
inline QuadResult<Complex> elementary_variation(Complex z, Complex Z, int n, DeformationMode mode,
                                                const DifferentialPtr& q, const QuadOptions& opt = line_options()) {
    GeodesicArc g = geodesic_through(z, Z);
    ElementaryPath path{g.u, g.U, g.s0, g.s1};
    return elementary_variation(path, geodesic_deformation(n, mode, q, g.u, g.U), opt);
}

/* ---- Busemann cutoffs ---- */

inline void check_quadruple(const BoundaryPoint& x1, const BoundaryPoint& x2, const BoundaryPoint& X1,
                            const BoundaryPoint& X2, bool allow_equal_pairs = false) {
    std::array<BoundaryPoint, 4> p{x1, x2, X1, X2};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            bool same_side = (i < 2 && j < 2) || (i >= 2 && j >= 2);
            if (p[i] == p[j] && !(allow_equal_pairs && same_side))
                throw invalid_argument("boundary points must be pairwise distinct");
        }
}

// Euclidean centroid of the disk images, taken back to the half plane
inline Complex quadruple_center(const std::vector<BoundaryPoint>& pts) {
    Complex w = 0.0;
    for (const auto& p : pts) w += std::polar(1.0, disk_angle(p));
    w /= static_cast<double>(pts.size());
    if (std::abs(w) > 1.0 - 1e-9) throw invalid_argument("quadruple_center: points too concentrated");
    return cayley_to_half_plane(w);
}

// arc-length window on the geodesic u -> U cut where the Busemann functions of u and U reach T
inline std::pair<double, double> busemann_window(const BoundaryPoint& u, const BoundaryPoint& U, double T,
                                                 Complex base) {
    Complex z0 = geodesic_frame(u, U).apply(Complex(0, 1));
    double s0 = busemann_time(u, z0, base) - T;
    double s1 = T - busemann_time(U, z0, base);
    if (!(s1 > s0)) throw invalid_argument("busemann_window: truncation time too small");
    return {s0, s1};
}

inline int alternating_sign(int i, int j) { return (i + j) % 2 == 0 ? 1 : -1; }

struct CutoffResult {
    Complex value = 0.0;
    double error = 0.0;
    double T = 0.0;
    Complex base = Complex(0, 1);
};

/* ---- cross ratio variation along the four geodesics ---- */

inline CutoffResult cross_ratio_variation_direct(const BoundaryPoint& x1, const BoundaryPoint& x2,
                                                 const BoundaryPoint& X1, const BoundaryPoint& X2,
                                                 const DifferentialPtr& q, int n, DeformationMode mode, double T,
                                                 std::optional<Complex> base = std::nullopt,
                                                 const QuadOptions& opt = line_options()) {
    check_quadruple(x1, x2, X1, X2);
    CutoffResult r;
    r.T = T;
    r.base = base ? *base : quadruple_center({x1, x2, X1, X2});
    std::array<BoundaryPoint, 2> xs{x1, x2}, Xs{X1, X2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            auto [s0, s1] = busemann_window(xs[i], Xs[j], T, r.base);
            ElementaryPath path{xs[i], Xs[j], s0, s1};
            auto v = elementary_variation(path, geodesic_deformation(n, mode, q, xs[i], Xs[j]), opt);
            r.value += double(alternating_sign(i, j)) * v.value;
            r.error += v.error;
        }
    return r;
}

/* ---- rhombus function ---- */

// s -> f(gamma(s), gamma'(s)) on the geodesic from u to U
using GeodesicProfile =
    std::function<std::function<Complex(double)>(const BoundaryPoint&, const BoundaryPoint&)>;

inline GeodesicProfile differential_profile(const DifferentialPtr& q) {
    return [q](const BoundaryPoint& u, const BoundaryPoint& U) { return restrict_to_geodesic(q, u, U); };
}

inline GeodesicProfile real_part_profile(const DifferentialPtr& q) {
    return [q](const BoundaryPoint& u, const BoundaryPoint& U) -> std::function<Complex(double)> {
        auto f = restrict_to_geodesic(q, u, U);
        return [f](double s) { return Complex(f(s).real()); };
    };
}

inline GeodesicProfile tangent_function_profile(std::function<Complex(Complex, Complex)> f) {
    return [f](const BoundaryPoint& u, const BoundaryPoint& U) -> std::function<Complex(double)> {
        MobiusMap T = geodesic_frame(u, U);
        return [f, T](double s) {
            Complex w(0, std::exp(s));
            return f(T.apply(w), T.derivative(w) * w);
        };
    };
}

struct RhombusQuery {
    BoundaryPoint x1, x2, X1, X2;
    GeodesicProfile f;
    double T = 12.0;
    double tolerance = std::numeric_limits<double>::infinity();
    std::optional<Complex> base;
};

struct RhombusResult {
    Complex value = 0.0;    // at T
    Complex doubled = 0.0;  // at 2T
    double sensitivity = 0.0;
    double error = 0.0;
    double T = 0.0;
    Complex base = Complex(0, 1);
};

inline CutoffResult rhombus_sum(const RhombusQuery& q, double T, const QuadOptions& opt = line_options()) {
    if (!q.f) throw invalid_argument("rhombus: missing profile");
    check_quadruple(q.x1, q.x2, q.X1, q.X2, true);
    CutoffResult r;
    r.T = T;
    r.base = q.base ? *q.base : quadruple_center({q.x1, q.x2, q.X1, q.X2});
    std::array<BoundaryPoint, 2> xs{q.x1, q.x2}, Xs{q.X1, q.X2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            auto [s0, s1] = busemann_window(xs[i], Xs[j], T, r.base);
            auto v = integrate(q.f(xs[i], Xs[j]), s0, s1, opt);
            r.value += double(alternating_sign(i, j)) * v.value;
            r.error += v.error;
        }
    return r;
}

inline RhombusResult rhombus(const RhombusQuery& q, const QuadOptions& opt = line_options()) {
    auto a = rhombus_sum(q, q.T, opt);
    auto b = rhombus_sum(q, 2 * q.T, opt);
    RhombusResult r{a.value, b.value, std::abs(b.value - a.value), a.error, q.T, a.base};
    if (r.sensitivity > q.tolerance) throw truncation_insufficient("rhombus: T-doubling sensitivity", r.sensitivity);
    return r;
}

/* ---- automorphic side ---- */

inline std::shared_ptr<const ThetaSum> alternating_kernel(const BoundaryPoint& x1, const BoundaryPoint& x2,
                                                          const BoundaryPoint& X1, const BoundaryPoint& X2, int k) {
    std::array<BoundaryPoint, 2> xs{x1, x2}, Xs{X1, X2};
    std::vector<ThetaTerm> terms;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) terms.push_back({xs[i], Xs[j], double(alternating_sign(i, j))});
    return std::make_shared<ThetaSum>(k, std::move(terms));
}

struct RegionIntegral {
    std::vector<double> radii;
    std::vector<Complex> values;  // r_k int_{|w| <= rho} <q, K> dsigma
    std::vector<double> errors;

    Complex value() const { return values.back(); }
    double growth() const {
        return values.size() < 2 ? std::numeric_limits<double>::infinity()
                                 : std::abs(values.back() - values[values.size() - 2]);
    }
};

inline std::vector<double> default_radii() { return {1 - 1e-3, 1 - 1e-4, 1 - 1e-5}; }

/*
 * r_k times the pairing of q with the kernel over the disks |w| <= rho,
 * accumulated annulus by annulus so each radius reuses the previous ones.
 */
inline RegionIntegral automorphic_integral(const DifferentialPtr& q, const DifferentialPtr& kernel,
                                           const std::vector<BoundaryPoint>& marks,
                                           std::vector<double> radii = default_radii(),
                                           const QuadOptions& opt = {1e-7, 1e-12, 4000, true}) {
    const int k = q->degree();
    if (kernel->degree() != k) throw invalid_argument("automorphic_integral: degree mismatch");
    if (radii.empty()) throw invalid_argument("automorphic_integral: no radii");
    double rk = hejhal_constant(k).value();
    std::vector<double> breaks;
    for (const auto& p : marks) breaks.push_back(disk_angle(p));
    auto integrand = [&](double phi, double rho) -> Complex {
        Complex w = std::polar(rho, phi);
        Complex z = cayley_to_half_plane(w);
        double den = 1.0 - rho * rho;
        return pointwise_pairing(q->coefficient(z), kernel->coefficient(z), z, k) * (4.0 * rho / (den * den));
    };
    QuadOptions inner = opt;
    inner.rel_tol = opt.rel_tol * 0.1;
    RegionIntegral R;
    Complex acc = 0.0;
    double err = 0.0, lo = 0.0;
    for (double rho : radii) {
        if (!(rho > lo && rho < 1)) throw invalid_argument("automorphic_integral: radii must increase inside (0,1)");
        // radial variable inside, graded toward the outer circle
        std::vector<double> rb;
        for (double t = 0.5; 1 - t > lo && 1 - t < rho; t *= 0.5) rb.push_back(1 - t);
        auto part = integrate2d(integrand, 0.0, 2 * std::numbers::pi, [lo](double) { return lo; },
                                [rho](double) { return rho; }, opt, inner, breaks, rb);
        acc += rk * part.value;
        err += std::abs(rk) * part.error;
        R.radii.push_back(rho);
        R.values.push_back(acc);
        R.errors.push_back(err);
        lo = rho;
    }
    return R;
}

struct RhombusAutomorphicOptions {
    double T = 12.0;
    std::vector<double> radii = default_radii();
    double tolerance = 5e-2;
};

inline VerificationReport rhombus_automorphic_check(const BoundaryPoint& x1, const BoundaryPoint& x2,
                                                    const BoundaryPoint& X1, const BoundaryPoint& X2,
                                                    const DifferentialPtr& q, const std::string& label,
                                                    const RhombusAutomorphicOptions& o = {}) {
    const int k = q->degree();
    RhombusQuery query{x1, x2, X1, X2, differential_profile(q), o.T, std::numeric_limits<double>::infinity(), {}};
    auto rh = rhombus(query);
    auto K = alternating_kernel(x1, x2, X1, X2, k);
    auto area = automorphic_integral(q, K, {x1, x2, X1, X2}, o.radii);
    VerificationReport rep;
    rep.claim_id = "crossratio.rhombus." + label + ".k" + std::to_string(k);
    rep.tolerance = o.tolerance;
    add_complex(rep, "rhombus", rh.value, area.value());
    rep.close(std::abs(area.value()));
    rep.diag("experimental", "rank-2 Schottky group, not a compact quotient");
    rep.diag("T", o.T);
    rep.diag("rhombus_T_sensitivity", rh.sensitivity);
    rep.diag("region_growth", area.growth());
    rep.diag("region_growth_relative", area.growth() / std::max(1e-300, std::abs(area.value())));
    rep.diag("outer_radius", area.radii.back());
    rep.diag("area_quadrature_error", area.errors.back());
    return rep;
}

/* ---- Schottky test data ---- */

inline void check_degree(int n, int k) {
    check_dimension(n);
    if (k < 2 || k > n) throw invalid_argument("differential degree must lie in 2..n");
}

struct CrossRatioData {
    SchottkyGroup group;
    BoundaryPoint x1, x2, X1, X2;  // attracting and repelling fixed points of a and b
    int L = 4;
};

inline CrossRatioData schottky_cross_ratio_data(int L = 4) {
    CrossRatioData d{test_schottky_group(), {}, {}, {}, {}, L};
    std::tie(d.X1, d.x1) = d.group.generators()[0].fixed_points();
    std::tie(d.X2, d.x2) = d.group.generators()[1].fixed_points();
    return d;
}

inline DifferentialPtr schottky_form(const CrossRatioData& d, int k) {
    return build_series(d.group, Word{1}, k, d.L).form;
}

inline VerificationReport cross_ratio_rhombus_check(int n, int k, double T = 16.0, int L = 4,
                                                    double tolerance = 1e-4) {
    check_degree(n, k);
    auto d = schottky_cross_ratio_data(L);
    auto q = schottky_form(d, k);
    auto direct = cross_ratio_variation_direct(d.x1, d.x2, d.X1, d.X2, q, n, DeformationMode::oper_standard, T);
    RhombusQuery query{d.x1, d.x2, d.X1, d.X2, differential_profile(q), T,
                       std::numeric_limits<double>::infinity(), {}};
    auto rh = rhombus(query);
    double A = cross_ratio_constant(n, k).get_d();
    VerificationReport rep;
    rep.claim_id = "crossratio.cr1.n" + std::to_string(n) + ".k" + std::to_string(k);
    rep.tolerance = tolerance;
    add_complex(rep, "direct", direct.value, A * rh.value);
    rep.close(std::max(1.0, std::abs(A * rh.value)));
    rep.diag("A", A);
    rep.diag("T", T);
    rep.diag("L", L);
    rep.diag("rhombus_T_sensitivity", rh.sensitivity);
    rep.diag("direct_quadrature_error", direct.error);
    return rep;
}

inline VerificationReport hitchin_oper_check(int n, int k, double T = 28.0, int L = 4, double tolerance = 1e-8) {
    check_degree(n, k);
    auto d = schottky_cross_ratio_data(L);
    auto q = schottky_form(d, k);
    auto h = cross_ratio_variation_direct(d.x1, d.x2, d.X1, d.X2, q, n, DeformationMode::standard_hitchin, T);
    auto o = cross_ratio_variation_direct(d.x1, d.x2, d.X1, d.X2, q, n, DeformationMode::oper_standard, T);
    VerificationReport rep;
    rep.claim_id = "crossratio.hitchin.n" + std::to_string(n) + ".k" + std::to_string(k);
    rep.tolerance = tolerance;
    add_complex(rep, "hitchin", h.value, 2.0 * o.value.real());
    rep.close(std::max(1.0, std::abs(h.value)));
    rep.diag("T", T);
    rep.diag("quadrature_error", h.error + 2 * o.error);
    return rep;
}

inline VerificationReport schottky_rhombus_automorphic_check(int k, int L = 4,
                                                             const RhombusAutomorphicOptions& o = {}) {
    auto d = schottky_cross_ratio_data(L);
    auto rep = rhombus_automorphic_check(d.x1, d.x2, d.X1, d.X2, schottky_form(d, k), "schottky", o);
    rep.diag("L", L);
    return rep;
}

/* ---- triple ratios, n = 3 ---- */

// sum over ordered pairs i != j of theta^3_{x_i,x_j}
inline std::shared_ptr<const ThetaSum> triple_kernel(const BoundaryPoint& x1, const BoundaryPoint& x2,
                                                     const BoundaryPoint& x3) {
    std::array<BoundaryPoint, 3> p{x1, x2, x3};
    std::vector<ThetaTerm> terms;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) terms.push_back({p[i], p[j], 1.0});
    return std::make_shared<ThetaSum>(3, std::move(terms));
}

inline RegionIntegral triple_ratio_variation(const BoundaryPoint& x1, const BoundaryPoint& x2,
                                             const BoundaryPoint& x3, const DifferentialPtr& q3,
                                             std::vector<double> radii = default_radii()) {
    if (q3->degree() != 3) throw invalid_argument("triple_ratio_variation: q must be cubic");
    if (x1 == x2 || x2 == x3 || x1 == x3) throw invalid_argument("triple_ratio_variation: points must be distinct");
    return automorphic_integral(q3, triple_kernel(x1, x2, x3), {x1, x2, x3}, std::move(radii));
}

// log T(x1,x2,x3) = log b(x1,x2,x3,m) + log b(x3,x1,x2,m) + log b(x2,x3,x1,m)
inline CutoffResult triple_ratio_variation_composed(const BoundaryPoint& x1, const BoundaryPoint& x2,
                                                    const BoundaryPoint& x3, const BoundaryPoint& m,
                                                    const DifferentialPtr& q, DeformationMode mode, double T,
                                                    std::optional<Complex> base = std::nullopt) {
    Complex o = base ? *base : quadruple_center({x1, x2, x3, m});
    CutoffResult r;
    r.T = T;
    r.base = o;
    for (auto [a, b, c] : {std::array<BoundaryPoint, 3>{x1, x2, x3}, {x3, x1, x2}, {x2, x3, x1}}) {
        auto v = cross_ratio_variation_direct(a, b, c, m, q, 3, mode, T, o);
        r.value += v.value;
        r.error += v.error;
    }
    return r;
}

// periods along the three sides a -> b -> c -> a of an ideal triangle, Busemann cut at T
inline CutoffResult triangle_period(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c,
                                    const GeodesicProfile& f, double T, Complex base,
                                    const QuadOptions& opt = line_options()) {
    CutoffResult r;
    r.T = T;
    r.base = base;
    for (auto [u, U] : {std::pair{a, b}, {b, c}, {c, a}}) {
        auto [s0, s1] = busemann_window(u, U, T, base);
        auto v = integrate(f(u, U), s0, s1, opt);
        r.value += v.value;
        r.error += v.error;
    }
    return r;
}

inline std::vector<VerificationReport> crossratio_reports(bool quick = true) {
    std::vector<VerificationReport> out;
    for (int n = 2; n <= 4; ++n)
        for (int k = 2; k <= n; ++k) {
            out.push_back(cross_ratio_rhombus_check(n, k));
            if (!quick || k == 2) out.push_back(hitchin_oper_check(n, k));
        }
    out.push_back(schottky_rhombus_automorphic_check(2));
    sort_reports(out);
    return out;
}

}  // namespace hvk
