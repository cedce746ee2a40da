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

#ifndef GYRONET_MC_ORACLE_H
#define GYRONET_MC_ORACLE_H

#include <cstdint>
#include <span>
#include <vector>

#include "gyronet/gaussian.h"
#include "gyronet/sensitivity.h"

namespace gyronet {

// Sampling scheme: samples are drawn in batches of kMcBatchSize. Batch b uses
// std::mt19937_64 seeded with splitmix64(seed ^ (b * 0x9E3779B97F4A7C15)), and
// standard normals come from the Box-Muller transform on 53-bit uniforms, so a
// seed fixes every sample bit for bit regardless of thread scheduling.

inline constexpr int64_t kMcBatchSize = 65536;

/// One step of the SplitMix64 generator (finalizer applied to x + golden gamma).
uint64_t splitmix64(uint64_t x);

struct McRun {
    int64_t n_samples = 1000000;
    uint64_t seed = 42;
    /// Operating point of the average phase.
    double phi0 = 0;
    /// Half-width of the central difference for the mean slope.
    double d_phi = 1e-3;

    /// n_samples >= 2 and d_phi in [1e-4, 1e-2].
    void validate() const;
};

struct McEstimate {
    double delta_phi_sq_hat = 0;
    double std_error = 0;
    double z_score = 0;
    /// Closed-form sensitivity the estimate is compared against.
    double analytic = 0;
    double slope_hat = 0;
    double slope_std_error = 0;
    double variance_hat = 0;
    int64_t n_samples = 0;
};

/// n draws of sum_k coeffs[k] r_k for the Gaussian state. Throws InvalidState
/// if the variance is not positive.
std::vector<double> sample_joint_quadrature(
    const GaussianState &state, const Eigen::VectorXd &coeffs, int64_t n, uint64_t seed);

/// Compensated (Neumaier) sum.
double compensated_sum(std::span<const double> xs);

/// Sample mean and unbiased sample variance.
struct SampleMoments {
    double mean = 0;
    double variance = 0;
};
SampleMoments sample_moments(std::span<const double> xs);

/// Empirical error propagation on homodyne samples of the exact network
/// output at phi0 +- d_phi (slope) and phi0 (noise), with independent streams
/// for the three states. Throws InsufficientSignal when the slope is within
/// three standard errors of zero.
McEstimate estimate_sensitivity_mc(const NetworkConfig &config, const ProbeParams &params, const McRun &run);

}  // namespace gyronet

#endif
