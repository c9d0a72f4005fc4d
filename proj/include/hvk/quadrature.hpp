#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <string>
#include <type_traits>
#include <vector>

#include "hvk/errors.hpp"

namespace hvk {

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_intervals = 4000;
    bool throw_on_failure = true;
};

template <typename T>
struct QuadResult {
    T value{};
    double error = 0.0;
    int evaluations = 0;
    int intervals = 0;
    bool converged = true;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
inline double real_part(double v) { return v; }
inline double real_part(const std::complex<double>& v) { return v.real(); }
inline double imag_part(double) { return 0.0; }
inline double imag_part(const std::complex<double>& v) { return v.imag(); }

// Gauss-Kronrod 7/15 abscissae and weights
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
    double a, b;
    T value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename T, typename F>
Panel<T> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T fc = f(c);
    T resk = fc * wgk[7];
    T resg = fc * wg[3];
    double resabs = magnitude(fc) * wgk[7];
    T fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        double dx = h * xgk[j];
        fv1[j] = f(c - dx);
        fv2[j] = f(c + dx);
        resk += (fv1[j] + fv2[j]) * wgk[j];
        resabs += (magnitude(fv1[j]) + magnitude(fv2[j])) * wgk[j];
        if (j % 2 == 1) resg += (fv1[j] + fv2[j]) * wg[j / 2];
    }
    T mean = resk * 0.5;
    double resasc = magnitude(fc - mean) * wgk[7];
    for (int j = 0; j < 7; ++j) resasc += wgk[j] * (magnitude(fv1[j] - mean) + magnitude(fv2[j] - mean));
    resasc *= std::abs(h);
    resabs *= std::abs(h);
    double err = magnitude((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > 2.2250738585072014e-308 / (50 * 2.22e-16)) err = std::max(err, 50 * 2.22e-16 * resabs);
    return {a, b, resk * h, err};
}

}  // namespace detail

/*
 * Globally adaptive Gauss-Kronrod quadrature on [a, b] split at the given
 * breakpoints. Works for real or complex valued integrands.
 */
template <typename F>
auto integrate(F f, double a, double b, const QuadOptions& opt = {}, std::vector<double> breakpoints = {})
    -> QuadResult<std::decay_t<decltype(f(a))>> {
    using T = std::decay_t<decltype(f(a))>;
    QuadResult<T> res;
    if (a == b) return res;

    std::vector<double> cuts{a};
    for (double x : breakpoints)
        if ((x - a) * (x - b) < 0) cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    if (b < a) std::reverse(cuts.begin(), cuts.end());

    std::priority_queue<detail::Panel<T>> heap;
    T total{};
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto p = detail::gk15<T>(f, cuts[i], cuts[i + 1]);
        res.evaluations += 15;
        total += p.value;
        err += p.error;
        heap.push(p);
    }

    while (err > std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total))) {
        if (static_cast<int>(heap.size()) >= opt.max_intervals) {
            res.converged = false;
            break;
        }
        auto worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            res.converged = false;
            break;
        }
        auto l = detail::gk15<T>(f, worst.a, mid);
        auto r = detail::gk15<T>(f, mid, worst.b);
        res.evaluations += 30;
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
    }

    // re-sum to limit drift from the running updates
    total = T{};
    err = 0.0;
    res.intervals = static_cast<int>(heap.size());
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    res.value = total;
    res.error = err;
    if (!res.converged && opt.throw_on_failure)
        throw quadrature_failure("adaptive quadrature did not converge", detail::real_part(total),
                                 detail::imag_part(total), err);
    return res;
}

// nested 2D quadrature: outer variable x, inner variable y in [ylo(x), yhi(x)]
template <typename F, typename YL, typename YH>
auto integrate2d(F f, double xa, double xb, YL ylo, YH yhi, const QuadOptions& outer, const QuadOptions& inner,
                 std::vector<double> xbreaks = {}, std::vector<double> ybreaks = {})
    -> QuadResult<std::decay_t<decltype(f(xa, xa))>> {
    using T = std::decay_t<decltype(f(xa, xa))>;
    double inner_err = 0.0;
    int inner_evals = 0;
    bool inner_ok = true;
    auto g = [&](double x) -> T {
        auto r = integrate([&](double y) { return f(x, y); }, ylo(x), yhi(x), inner, ybreaks);
        inner_err = std::max(inner_err, r.error);
        inner_evals += r.evaluations;
        inner_ok = inner_ok && r.converged;
        return r.value;
    };
    auto r = integrate(g, xa, xb, outer, xbreaks);
    r.error += inner_err * std::abs(xb - xa);
    r.evaluations = inner_evals;
    r.converged = r.converged && inner_ok;
    return r;
}

}  // namespace hvk
