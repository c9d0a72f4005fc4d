#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "hvk/errors.hpp"

namespace hvk {

struct OdeOptions {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    double initial_step = 1e-2;
    double min_step = 1e-13;
    int max_steps = 2000000;
};

struct OdeResult {
    Eigen::MatrixXcd y;
    std::vector<double> mesh;  // accepted step boundaries, mesh.front() = s0
    int accepted = 0;
    int rejected = 0;
    double max_local_error = 0.0;  // largest accepted scaled error norm
};

namespace detail {

// Dormand-Prince 5(4) tableau
struct dp5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    // b - b*, the embedded 4th order difference
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;
};

template <typename F>
Eigen::MatrixXcd dp5_step(F& f, double s, const Eigen::MatrixXcd& y, const Eigen::MatrixXcd& k1, double h,
                          Eigen::MatrixXcd& k7, Eigen::MatrixXcd& err) {
    using T = dp5;
    Eigen::MatrixXcd k2 = f(s + T::c2 * h, y + h * (T::a21 * k1));
    Eigen::MatrixXcd k3 = f(s + T::c3 * h, y + h * (T::a31 * k1 + T::a32 * k2));
    Eigen::MatrixXcd k4 = f(s + T::c4 * h, y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3));
    Eigen::MatrixXcd k5 = f(s + T::c5 * h, y + h * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4));
    Eigen::MatrixXcd k6 =
        f(s + h, y + h * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 + T::a64 * k4 + T::a65 * k5));
    Eigen::MatrixXcd y1 = y + h * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 + T::b6 * k6);
    k7 = f(s + h, y1);
    err = h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);
    return y1;
}

inline double scaled_norm(const Eigen::MatrixXcd& err, const Eigen::MatrixXcd& y0, const Eigen::MatrixXcd& y1,
                          const OdeOptions& opt) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        double sc = opt.abs_tol + opt.rel_tol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        m = std::max(m, std::abs(err(i)) / sc);
    }
    return m;
}

}  // namespace detail

/*
 * Adaptive Dormand-Prince 5(4) for matrix-valued y' = f(s, y) on [s0, s1].
 * The accepted mesh is returned so a perturbed problem can be replayed on
 * the same steps with dp5_on_mesh.
 */
template <typename F>
OdeResult dp5_adaptive(F f, const Eigen::MatrixXcd& y0, double s0, double s1, const OdeOptions& opt = {}) {
    OdeResult res;
    res.y = y0;
    res.mesh.push_back(s0);
    if (s1 == s0) return res;
    const double dir = s1 > s0 ? 1.0 : -1.0;
    double s = s0;
    double h = dir * std::min(opt.initial_step, std::abs(s1 - s0));
    Eigen::MatrixXcd k1 = f(s, res.y), k7, err;
    double err_prev = 1e-4;
    int steps = 0;
    while (dir * (s1 - s) > 0) {
        if (++steps > opt.max_steps) throw integration_failure("dp5: step budget exhausted", res.max_local_error);
        if (dir * (s + h - s1) > 0) h = s1 - s;
        Eigen::MatrixXcd y1 = detail::dp5_step(f, s, res.y, k1, h, k7, err);
        double e = detail::scaled_norm(err, res.y, y1, opt);
        if (!std::isfinite(e)) throw integration_failure("dp5: non-finite state", e);
        if (e <= 1.0) {
            s = (std::abs(s1 - (s + h)) <= 1e-15 * std::max(1.0, std::abs(s1))) ? s1 : s + h;
            res.y = std::move(y1);
            k1 = k7;
            res.mesh.push_back(s);
            res.accepted++;
            res.max_local_error = std::max(res.max_local_error, e);
            // PI step-size controller
            double fac = e > 0 ? 0.9 * std::pow(e, -0.7 / 5) * std::pow(err_prev, 0.4 / 5) : 5.0;
            fac = std::clamp(fac, 0.2, 5.0);
            err_prev = std::max(e, 1e-4);
            h *= fac;
        } else {
            res.rejected++;
            h *= std::max(0.2, 0.9 * std::pow(e, -0.2));
        }
        if (std::abs(h) < opt.min_step && dir * (s1 - s) > opt.min_step)
            throw integration_failure("dp5: step size underflow", e);
    }
    return res;
}

// fifth order solution on a prescribed mesh (no error control)
template <typename F>
Eigen::MatrixXcd dp5_on_mesh(F f, const Eigen::MatrixXcd& y0, const std::vector<double>& mesh) {
    Eigen::MatrixXcd y = y0, k7, err;
    if (mesh.size() < 2) return y;
    Eigen::MatrixXcd k1 = f(mesh[0], y);
    for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
        y = detail::dp5_step(f, mesh[i], y, k1, mesh[i + 1] - mesh[i], k7, err);
        k1 = k7;
    }
    return y;
}

}  // namespace hvk
