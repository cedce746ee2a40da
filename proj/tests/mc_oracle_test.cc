// Copyright 2026 The Gyronet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gyronet/mc_oracle.h"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"

#include "gyronet/errors.h"
#include "gyronet/network.h"

using namespace gyronet;

TEST(mc_oracle, vacuum_statistics) {
    const int64_t n = 1000000;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2);
    c(0) = 1;
    const auto xs = sample_joint_quadrature(vacuum(1), c, n, 1);
    const SampleMoments m = sample_moments(xs);
    EXPECT_LT(std::abs(m.mean), 4 * std::sqrt(0.5 / n));
    EXPECT_LT(std::abs(m.variance - 0.5), 4 * 0.5 * std::sqrt(2.0 / (n - 1)));
}

TEST(mc_oracle, entangled_pipeline_variance) {
    const int64_t n = 1000000;
    const NetworkConfig cfg{4, 1, 1, Topology::Entangled, Seeding::Single};
    const GaussianState s = network_output_state(cfg, {1, 2}, 0.0);
    const SampleMoments m = sample_moments(sample_joint_quadrature(s, joint_quadrature_coefficients(4), n, 9));
    const double v = 2 * std::exp(-2.0);
    EXPECT_LT(std::abs(m.variance - v), 4 * v * std::sqrt(2.0 / (n - 1)));
}

TEST(mc_oracle, seed_determinism) {
    Eigen::VectorXd c = Eigen::VectorXd::Ones(2);
    const GaussianState s = displace(vacuum(1), 0, 1);
    const auto a = sample_joint_quadrature(s, c, 200000, 42);
    const auto b = sample_joint_quadrature(s, c, 200000, 42);
    EXPECT_EQ(a, b);
    const auto other = sample_joint_quadrature(s, c, 200000, 43);
    EXPECT_NE(a, other);
    // Batches depend only on (seed, batch index), so a shorter run is a prefix.
    const auto prefix = sample_joint_quadrature(s, c, 100001, 42);
    EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), a.begin()));
}

TEST(mc_oracle, rejects_degenerate_input) {
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
    EXPECT_THROW(sample_joint_quadrature(vacuum(1), zero, 10, 1), Error);
    Eigen::VectorXd c = Eigen::VectorXd::Ones(2);
    EXPECT_THROW(sample_joint_quadrature(vacuum(1), c, 0, 1), Error);
    McRun bad;
    bad.d_phi = 0.1;
    EXPECT_THROW(bad.validate(), Error);
}

TEST(mc_oracle, compensated_sum) {
    const std::vector<double> xs{1e16, 1, -1e16};
    EXPECT_EQ(compensated_sum(xs), 1);
}

TEST(mc_oracle, entangled_estimate_agrees) {
    const McEstimate e = estimate_sensitivity_mc({2, 1, 1, Topology::Entangled, Seeding::Single}, {1, 5}, McRun{});
    EXPECT_LT(std::abs(e.z_score), 4);
    EXPECT_GT(e.std_error, 0);
    EXPECT_DOUBLE_EQ(e.analytic, sensitivity_entangled(1, 5, 1));
}

TEST(mc_oracle, separable_coherent_estimate) {
    const McEstimate e = estimate_sensitivity_mc({2, 1, 1, Topology::Separable, Seeding::Single}, {0, 3}, McRun{});
    EXPECT_NEAR(e.analytic, 1 / (2.0 * 2 * 9), 1e-15);
    EXPECT_LT(std::abs(e.delta_phi_sq_hat - 0.0277778), 4 * e.std_error);
}

TEST(mc_oracle, standard_error_scaling) {
    const NetworkConfig cfg{2, 0.95, 1, Topology::Entangled, Seeding::Single};
    McRun small;
    small.n_samples = 250000;
    McRun large = small;
    large.n_samples = 500000;
    const double ratio = estimate_sensitivity_mc(cfg, {0.5, 5}, small).std_error /
                         estimate_sensitivity_mc(cfg, {0.5, 5}, large).std_error;
    EXPECT_NEAR(ratio, std::sqrt(2.0), 0.2 * std::sqrt(2.0));
}

TEST(mc_oracle, reproducible_estimates) {
    const NetworkConfig cfg{4, 0.95, 1, Topology::Separable, Seeding::Single};
    McRun run;
    run.n_samples = 100000;
    const McEstimate a = estimate_sensitivity_mc(cfg, {1, 5}, run);
    const McEstimate b = estimate_sensitivity_mc(cfg, {1, 5}, run);
    EXPECT_EQ(a.delta_phi_sq_hat, b.delta_phi_sq_hat);
    EXPECT_EQ(a.std_error, b.std_error);
}

TEST(mc_oracle, insufficient_signal) {
    McRun run;
    run.n_samples = 10000;
    try {
        estimate_sensitivity_mc({1, 1, 1, Topology::Entangled, Seeding::Single}, {0, 1e-6}, run);
        FAIL() << "expected insufficient signal";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InsufficientSignal);
    }
}

TEST(mc_oracle, exact_angle_tracks_pipeline_not_linearization) {
    const NetworkConfig cfg{2, 0.95, 1, Topology::Entangled, Seeding::Single};
    const ProbeParams p{1, 5};
    McRun run;
    run.phi0 = 0.02;
    const McEstimate e = estimate_sensitivity_mc(cfg, p, run);
    const double exact = pipeline_sensitivity(cfg, p, run.phi0, run.d_phi).delta_phi_sq;
    EXPECT_LT(std::abs(e.delta_phi_sq_hat - exact), 4 * e.std_error);
    // The linearized closed form differs from the exact value by O(phi^2).
    EXPECT_GT(std::abs(exact / e.analytic - 1), 1e-3);
    EXPECT_LT(std::abs(exact / e.analytic - 1), 0.1);
}
