#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <utility>
#include <vector>

#include "hvk/errors.hpp"
#include "hvk/quadrature.hpp"

namespace hvk {

using Complex = std::complex<double>;

// z^k by repeated squaring; std::pow on complex goes through exp/log
inline Complex ipow(Complex z, int k) {
    if (k < 0) return 1.0 / ipow(z, -k);
    Complex r = 1.0;
    while (k) {
        if (k & 1) r *= z;
        z *= z;
        k >>= 1;
    }
    return r;
}

/* ---- boundary points and isometries ---- */

struct BoundaryPoint {
    double x = 0.0;
    bool inf = false;

    static BoundaryPoint at(double v) { return {v, false}; }
    static BoundaryPoint infinity() { return {0.0, true}; }
    bool is_infinite() const { return inf; }
    friend bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) {
        return a.inf == b.inf && (a.inf || a.x == b.x);
    }
};

inline void check_upper(Complex z) {
    if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw domain_error("point is not in the upper half-plane");
}

inline double hyperbolic_distance(Complex z, Complex w) {
    check_upper(z);
    check_upper(w);
    // 2 asinh(|z-w| / (2 sqrt(y y'))) avoids the cancellation in acosh near 0
    return 2.0 * std::asinh(std::abs(z - w) / (2.0 * std::sqrt(z.imag() * w.imag())));
}

struct MobiusMap {
    double a = 1, b = 0, c = 0, d = 1;

    // rescales to determinant 1; orientation reversing or singular input is rejected
    static MobiusMap make(double a, double b, double c, double d) {
        double det = a * d - b * c;
        if (!(det > 0)) throw invalid_argument("Mobius map needs positive determinant");
        double s = 1.0 / std::sqrt(det);
        return {a * s, b * s, c * s, d * s};
    }
    static MobiusMap translation(double t) { return {1, t, 0, 1}; }
    static MobiusMap dilation(double ell) { return {std::exp(ell / 2), 0, 0, std::exp(-ell / 2)}; }
    static MobiusMap rotation(double t) { return {std::cos(t), std::sin(t), -std::sin(t), std::cos(t)}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }

    Complex apply(Complex z) const { return (a * z + b) / (c * z + d); }
    BoundaryPoint apply(const BoundaryPoint& p) const {
        if (p.inf) return c == 0.0 ? BoundaryPoint::infinity() : BoundaryPoint::at(a / c);
        double den = c * p.x + d;
        if (den == 0.0) return BoundaryPoint::infinity();
        return BoundaryPoint::at((a * p.x + b) / den);
    }
    Complex derivative(Complex z) const {
        Complex den = c * z + d;
        return 1.0 / (den * den);
    }
    MobiusMap inverse() const { return {d, -b, -c, a}; }
    friend MobiusMap operator*(const MobiusMap& g, const MobiusMap& h) {
        return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
    }

    bool is_hyperbolic() const { return std::abs(trace()) > 2.0; }
    double translation_length() const {
        if (!is_hyperbolic()) throw domain_error("translation length of a non-hyperbolic map");
        return 2.0 * std::acosh(std::abs(trace()) / 2.0);
    }

    // (repelling, attracting) fixed points of a hyperbolic map
    std::pair<BoundaryPoint, BoundaryPoint> fixed_points() const {
        if (!is_hyperbolic()) throw domain_error("fixed points requested for a non-hyperbolic map");
        if (c == 0.0) {
            BoundaryPoint fin = BoundaryPoint::at(b / (d - a));
            // g(z) = (a/d) z + b/d: infinity attracts when |a| > |d|
            return std::abs(a) > std::abs(d) ? std::make_pair(fin, BoundaryPoint::infinity())
                                             : std::make_pair(BoundaryPoint::infinity(), fin);
        }
        double t = trace();
        double disc = std::sqrt(t * t - 4.0);
        double z1 = (a - d + disc) / (2.0 * c), z2 = (a - d - disc) / (2.0 * c);
        // |g'(z)| = 1/(cz+d)^2 < 1 at the attracting point
        bool first_attracts = std::abs(c * z1 + d) > std::abs(c * z2 + d);
        return first_attracts ? std::make_pair(BoundaryPoint::at(z2), BoundaryPoint::at(z1))
                              : std::make_pair(BoundaryPoint::at(z1), BoundaryPoint::at(z2));
    }
};

// the isometry sending 0 -> u, infinity -> U, and i to the top of the geodesic
inline MobiusMap geodesic_frame(const BoundaryPoint& u, const BoundaryPoint& U) {
    if (u == U) throw invalid_argument("geodesic endpoints coincide");
    if (U.inf) return MobiusMap::translation(u.x);
    if (u.inf) return {U.x, -1, 1, 0};  // z -> U - 1/z
    double sigma = U.x > u.x ? 1.0 : -1.0;
    return MobiusMap::make(U.x, sigma * u.x, 1.0, sigma);
}

/* ---- geodesics ---- */

struct GeodesicArc {
    BoundaryPoint u, U;  // repelling and attracting ends
    double s0 = 0.0, s1 = 0.0;

    MobiusMap frame() const { return geodesic_frame(u, U); }
    double length() const { return s1 - s0; }
    Complex point(double s) const { return frame().apply(Complex(0, std::exp(s))); }
    // unit tangent (hyperbolic norm 1) as a complex number
    Complex tangent(double s) const {
        Complex w(0, std::exp(s));
        return frame().derivative(w) * w;
    }
    // arc-length coordinate of a point on the full geodesic
    double coordinate(Complex z) const {
        Complex w = frame().inverse().apply(z);
        return std::log(std::abs(w));
    }
    GeodesicArc reversed() const { return {U, u, -s1, -s0}; }
};

// full geodesic through two interior points, oriented from z to w, with the arc between them
inline GeodesicArc geodesic_through(Complex z, Complex w) {
    check_upper(z);
    check_upper(w);
    if (z == w) throw invalid_argument("geodesic through coincident points");
    GeodesicArc g;
    double dx = w.real() - z.real();
    if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(z.real()))) {
        double x = 0.5 * (z.real() + w.real());
        if (w.imag() > z.imag()) g.u = BoundaryPoint::at(x), g.U = BoundaryPoint::infinity();
        else g.u = BoundaryPoint::infinity(), g.U = BoundaryPoint::at(x);
    } else {
        double cx = (std::norm(w) - std::norm(z)) / (2.0 * dx);
        double R = std::abs(z - cx);
        if (dx > 0) g.u = BoundaryPoint::at(cx - R), g.U = BoundaryPoint::at(cx + R);
        else g.u = BoundaryPoint::at(cx + R), g.U = BoundaryPoint::at(cx - R);
    }
    g.s0 = g.coordinate(z);
    g.s1 = g.coordinate(w);
    return g;
}

/* ---- theta forms and holomorphic differentials ---- */

// coefficient of theta_{u,U} = (U-u) dz / ((z-u)(z-U)) with the limits at infinity
inline Complex theta_coefficient(const BoundaryPoint& u, const BoundaryPoint& U, Complex z) {
    if (u == U) throw invalid_argument("theta form with coincident endpoints");
    if (U.inf) return -1.0 / (z - u.x);
    if (u.inf) return 1.0 / (z - U.x);
    return (U.x - u.x) / ((z - u.x) * (z - U.x));
}

struct ThetaForm {
    BoundaryPoint u, U;
    int k = 1;

    Complex coefficient(Complex z) const { return ipow(theta_coefficient(u, U, z), k); }
    ThetaForm pullback(const MobiusMap& g) const {
        MobiusMap gi = g.inverse();
        return {gi.apply(u), gi.apply(U), k};
    }
};

inline Complex evaluate_theta(const ThetaForm& f, Complex z, Complex tangent) {
    check_upper(z);
    return f.coefficient(z) * ipow(tangent, f.k);
}

// |theta^k| in the metric <dz,dz> = 2 y^2
inline double norm_theta(const ThetaForm& f, Complex z) {
    check_upper(z);
    return std::pow(std::abs(theta_coefficient(f.u, f.U, z)) * std::sqrt(2.0) * z.imag(), f.k);
}

// pointwise pairing of f1 dz^k and f2 dz^k
inline Complex pointwise_pairing(Complex f1, Complex f2, Complex z, int k) {
    return f1 * std::conj(f2) * std::pow(2.0 * z.imag() * z.imag(), k);
}

/*
 * A holomorphic k-differential f(z) dz^k. Pullbacks default to composition;
 * theta sums override it by moving their endpoints, which keeps precision
 * when points approach the boundary.
 */
class Differential : public std::enable_shared_from_this<Differential> {
public:
    virtual ~Differential() = default;
    virtual int degree() const = 0;
    virtual Complex coefficient(Complex z) const = 0;
    virtual std::shared_ptr<const Differential> pullback(const MobiusMap& g) const;

    Complex evaluate(Complex z, Complex v) const { return coefficient(z) * ipow(v, degree()); }
};

using DifferentialPtr = std::shared_ptr<const Differential>;

class ComposedDifferential : public Differential {
public:
    ComposedDifferential(DifferentialPtr base, MobiusMap g) : base_(std::move(base)), g_(g) {}
    int degree() const override { return base_->degree(); }
    Complex coefficient(Complex z) const override {
        return base_->coefficient(g_.apply(z)) * ipow(g_.derivative(z), degree());
    }
    DifferentialPtr pullback(const MobiusMap& h) const override {
        return std::make_shared<ComposedDifferential>(base_, g_ * h);
    }

private:
    DifferentialPtr base_;
    MobiusMap g_;
};

inline DifferentialPtr Differential::pullback(const MobiusMap& g) const {
    return std::make_shared<ComposedDifferential>(shared_from_this(), g);
}

struct ThetaTerm {
    BoundaryPoint u, U;
    Complex weight = 1.0;
};

// sum_j w_j theta_{u_j,U_j}^k
class ThetaSum : public Differential {
public:
    ThetaSum(int k, std::vector<ThetaTerm> terms) : k_(k), terms_(std::move(terms)) {
        if (k < 1) throw invalid_argument("ThetaSum: degree must be positive");
    }
    int degree() const override { return k_; }
    Complex coefficient(Complex z) const override {
        Complex s = 0.0;
        for (const auto& t : terms_) s += t.weight * ipow(theta_coefficient(t.u, t.U, z), k_);
        return s;
    }
    DifferentialPtr pullback(const MobiusMap& g) const override {
        MobiusMap gi = g.inverse();
        std::vector<ThetaTerm> moved;
        moved.reserve(terms_.size());
        for (const auto& t : terms_) moved.push_back({gi.apply(t.u), gi.apply(t.U), t.weight});
        return std::make_shared<ThetaSum>(k_, std::move(moved));
    }
    const std::vector<ThetaTerm>& terms() const { return terms_; }

private:
    int k_;
    std::vector<ThetaTerm> terms_;
};

class ScaledDifferential : public Differential {
public:
    ScaledDifferential(DifferentialPtr base, Complex c) : base_(std::move(base)), c_(c) {}
    int degree() const override { return base_->degree(); }
    Complex coefficient(Complex z) const override { return c_ * base_->coefficient(z); }
    DifferentialPtr pullback(const MobiusMap& g) const override {
        return std::make_shared<ScaledDifferential>(base_->pullback(g), c_);
    }

private:
    DifferentialPtr base_;
    Complex c_;
};

inline DifferentialPtr theta_differential(const BoundaryPoint& u, const BoundaryPoint& U, int k) {
    return std::make_shared<ThetaSum>(k, std::vector<ThetaTerm>{{u, U, 1.0}});
}

// s -> q(gamma(s))[gamma'(s)^k], evaluated in the geodesic's own frame
inline std::function<Complex(double)> restrict_to_geodesic(const DifferentialPtr& q, const BoundaryPoint& u,
                                                          const BoundaryPoint& U) {
    DifferentialPtr local = q->pullback(geodesic_frame(u, U));
    const int k = q->degree();
    return [local, k](double s) {
        Complex w(0, std::exp(s));
        return local->coefficient(w) * ipow(w, k);
    };
}

/* ---- integration ---- */

inline QuadOptions line_options() { return {1e-10, 1e-14, 4000, true}; }
inline QuadOptions area_options() { return {1e-8, 1e-13, 2000, true}; }

// integral of f(gamma(s), gamma'(s)) ds over the arc
template <typename F>
QuadResult<Complex> integrate_along(const GeodesicArc& arc, F f, const QuadOptions& opt = line_options()) {
    if (!std::isfinite(arc.s0) || !std::isfinite(arc.s1)) throw invalid_argument("integrate_along: infinite arc");
    MobiusMap T = arc.frame();
    return integrate(
        [&](double s) -> Complex {
            Complex w(0, std::exp(s));
            return Complex(f(T.apply(w), T.derivative(w) * w));
        },
        arc.s0, arc.s1, opt);
}

inline QuadResult<Complex> integrate_differential_along(const GeodesicArc& arc, const DifferentialPtr& q,
                                                       const QuadOptions& opt = line_options()) {
    auto qh = restrict_to_geodesic(q, arc.u, arc.U);
    return integrate(qh, arc.s0, arc.s1, opt);
}

/*
 * Area integrals against dsigma = dx dy / y^2.
 * Annulus {r0 <= |z| <= r1}: with z = e^{t + i phi}, dsigma = dt dphi / sin^2 phi.
 */
template <typename F>
QuadResult<Complex> integrate_annulus(F f, double r0, double r1, const QuadOptions& opt = area_options()) {
    if (!(r0 > 0) || !(r1 >= r0)) throw invalid_argument("integrate_annulus: need 0 < r0 <= r1");
    QuadOptions inner = opt;
    inner.rel_tol = opt.rel_tol * 0.1;
    return integrate2d(
        [&](double t, double phi) -> Complex {
            double sn = std::sin(phi);
            return Complex(f(std::exp(Complex(t, phi)))) / (sn * sn);
        },
        std::log(r0), std::log(r1), [](double) { return 0.0; }, [](double) { return std::numbers::pi; }, opt,
        inner, {}, {std::numbers::pi / 2});
}

// slab between the perpendiculars to the arc's geodesic at arc-length sa and sb
struct Slab {
    GeodesicArc axis;  // uses axis.s0, axis.s1 as the two cut positions

    static Slab between(Complex z, Complex w) { return {geodesic_through(z, w)}; }
    bool contains(Complex z) const {
        double t = axis.coordinate(z);
        double lo = std::min(axis.s0, axis.s1), hi = std::max(axis.s0, axis.s1);
        return t >= lo - 1e-12 && t <= hi + 1e-12;
    }
    double width() const { return std::abs(axis.s1 - axis.s0); }
};

template <typename F>
QuadResult<Complex> integrate_slab(const Slab& slab, F f, const QuadOptions& opt = area_options()) {
    MobiusMap T = slab.axis.frame();
    double lo = std::min(slab.axis.s0, slab.axis.s1), hi = std::max(slab.axis.s0, slab.axis.s1);
    if (lo == hi) return {};
    return integrate_annulus([&](Complex w) { return Complex(f(T.apply(w))); }, std::exp(lo), std::exp(hi), opt);
}

// K = 2^{k/2} int_0^pi sin^{k-2}
inline double slab_constant(int k) {
    auto r = integrate([k](double t) { return std::pow(std::sin(t), k - 2); }, 0.0, std::numbers::pi,
                       {1e-12, 1e-15, 4000, true});
    return std::pow(2.0, k / 2.0) * r.value;
}

/*
 * Disk-model integral over {|w| <= rmax}, w = (z - i)/(z + i), with
 * dsigma = 4 dA / (1 - |w|^2)^2. Angular breakpoints go to the images of
 * distinguished boundary points.
 */
inline Complex cayley_to_half_plane(Complex w) { return Complex(0, 1) * (1.0 + w) / (1.0 - w); }
inline Complex cayley_to_disk(Complex z) { return (z - Complex(0, 1)) / (z + Complex(0, 1)); }
inline double disk_angle(const BoundaryPoint& p) {
    if (p.inf) return 0.0;
    double a = std::arg(cayley_to_disk(Complex(p.x, 0)));
    return a < 0 ? a + 2 * std::numbers::pi : a;
}

template <typename F>
QuadResult<Complex> integrate_disk(F f, double rmax, std::vector<double> angle_breaks,
                                   const QuadOptions& opt = area_options()) {
    if (!(rmax > 0 && rmax < 1)) throw invalid_argument("integrate_disk: need 0 < rmax < 1");
    QuadOptions inner = opt;
    inner.rel_tol = opt.rel_tol * 0.1;
    return integrate2d(
        [&](double phi, double rho) -> Complex {
            Complex w = std::polar(rho, phi);
            double den = 1.0 - rho * rho;
            return Complex(f(cayley_to_half_plane(w))) * (4.0 * rho / (den * den));
        },
        0.0, 2 * std::numbers::pi, [](double) { return 0.0; }, [rmax](double) { return rmax; }, opt, inner,
        angle_breaks);
}

/* ---- Busemann functions ---- */

// B_c(z) = log(y/|z-c|^2), or log y for c = infinity, normalized to vanish at base
inline double busemann_raw(const BoundaryPoint& c, Complex z) {
    check_upper(z);
    if (c.inf) return std::log(z.imag());
    return std::log(z.imag() / std::norm(z - c.x));
}

inline double busemann_time(const BoundaryPoint& center, Complex z, Complex base = Complex(0, 1)) {
    return busemann_raw(center, z) - busemann_raw(center, base);
}

}  // namespace hvk
