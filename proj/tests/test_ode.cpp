#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "hvk/ode.hpp"

using namespace hvk;
using Eigen::MatrixXcd;

namespace {
MatrixXcd sample_generator() {
    MatrixXcd A(3, 3);
    A << std::complex<double>(0.5, 0.1), 1.0, 0.0, -0.3, std::complex<double>(0.0, -0.4), 0.7, 0.2, 0.0,
        std::complex<double>(-0.5, 0.3);
    return A;
}
}  // namespace

TEST(ode, constant_coefficients_match_expm) {
    MatrixXcd A = sample_generator();
    auto r = dp5_adaptive([&](double, const MatrixXcd& y) { return MatrixXcd(A * y); }, MatrixXcd::Identity(3, 3),
                          0.0, 2.0);
    MatrixXcd ref = (2.0 * A).exp();
    EXPECT_LT((r.y - ref).norm() / ref.norm(), 1e-10);
    EXPECT_EQ(r.mesh.front(), 0.0);
    EXPECT_EQ(r.mesh.back(), 2.0);
}

TEST(ode, time_dependent_commuting) {
    // y' = s A y  ->  y = exp(s^2/2 A)
    MatrixXcd A = sample_generator();
    auto r = dp5_adaptive([&](double s, const MatrixXcd& y) { return MatrixXcd(s * A * y); },
                          MatrixXcd::Identity(3, 3), 0.0, 1.5);
    MatrixXcd ref = (1.125 * A).exp();
    EXPECT_LT((r.y - ref).norm() / ref.norm(), 1e-10);
}

TEST(ode, backward_integration_inverts) {
    MatrixXcd A = sample_generator();
    auto f = [&](double, const MatrixXcd& y) { return MatrixXcd(A * y); };
    auto fwd = dp5_adaptive(f, MatrixXcd::Identity(3, 3), 0.0, 1.0);
    auto back = dp5_adaptive(f, fwd.y, 1.0, 0.0);
    EXPECT_LT((back.y - MatrixXcd::Identity(3, 3)).norm(), 1e-10);
}

TEST(ode, mesh_replay_reproduces) {
    MatrixXcd A = sample_generator();
    auto f = [&](double s, const MatrixXcd& y) { return MatrixXcd(std::cos(s) * A * y); };
    auto r = dp5_adaptive(f, MatrixXcd::Identity(3, 3), 0.0, 2.0);
    MatrixXcd replay = dp5_on_mesh(f, MatrixXcd::Identity(3, 3), r.mesh);
    EXPECT_LT((replay - r.y).norm(), 1e-14 * r.y.norm());
}

TEST(ode, blowup_reports_failure) {
    auto f = [](double, const MatrixXcd& y) { return MatrixXcd(y * y); };
    MatrixXcd y0 = MatrixXcd::Identity(1, 1);
    EXPECT_THROW(dp5_adaptive(f, y0, 0.0, 2.0), integration_failure);
}
