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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "gyronet/errors.h"
#include "gyronet/network.h"

namespace gyronet {

namespace {

constexpr uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

double uniform53(std::mt19937_64 &gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

void fill_batch(std::span<double> out, uint64_t batch_seed, double mean, double sigma) {
    std::mt19937_64 gen(batch_seed);
    for (size_t i = 0; i < out.size(); i += 2) {
        // u1 in (0, 1] keeps the logarithm finite.
        const double u1 = 1 - uniform53(gen);
        const double u2 = uniform53(gen);
        const double radius = std::sqrt(-2 * std::log(u1));
        const double angle = 2 * std::numbers::pi * u2;
        out[i] = mean + sigma * radius * std::cos(angle);
        if (i + 1 < out.size()) {
            out[i + 1] = mean + sigma * radius * std::sin(angle);
        }
    }
}

}  // namespace

uint64_t splitmix64(uint64_t x) {
    uint64_t z = x + kGoldenGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void McRun::validate() const {
    if (n_samples < 2) {
        throw Error(ErrorCode::InvalidArgument, "need at least two samples");
    }
    if (!(d_phi >= 1e-4 && d_phi <= 1e-2)) {
        throw Error(ErrorCode::InvalidArgument, "d_phi must lie in [1e-4, 1e-2]");
    }
    if (!std::isfinite(phi0)) {
        throw Error(ErrorCode::InvalidArgument, "operating point must be finite");
    }
}

std::vector<double> sample_joint_quadrature(
    const GaussianState &state, const Eigen::VectorXd &coeffs, int64_t n, uint64_t seed) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidArgument, "sample count must be >= 1");
    }
    state.validate();
    const QuadratureStats stats = quadrature_stats(state, coeffs);
    if (!(stats.variance > 0)) {
        throw Error(ErrorCode::InvalidState, "quadrature variance is not positive");
    }
    const double sigma = std::sqrt(stats.variance);

    std::vector<double> samples(static_cast<size_t>(n));
    const int64_t batches = (n + kMcBatchSize - 1) / kMcBatchSize;
    auto run_batch = [&](int64_t b) {
        const int64_t begin = b * kMcBatchSize;
        const int64_t end = std::min(n, begin + kMcBatchSize);
        fill_batch(
            std::span<double>(samples).subspan(static_cast<size_t>(begin), static_cast<size_t>(end - begin)),
            splitmix64(seed ^ (static_cast<uint64_t>(b) * kGoldenGamma)), stats.mean, sigma);
    };

    const int64_t workers = std::min<int64_t>(batches, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (int64_t b = 0; b < batches; ++b) {
            run_batch(b);
        }
        return samples;
    }
    std::vector<std::thread> pool;
    for (int64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int64_t b = w; b < batches; b += workers) {
                run_batch(b);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    return samples;
}

double compensated_sum(std::span<const double> xs) {
    double sum = 0;
    double c = 0;
    for (double x : xs) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    return sum + c;
}

SampleMoments sample_moments(std::span<const double> xs) {
    if (xs.size() < 2) {
        throw Error(ErrorCode::InvalidArgument, "sample moments need at least two samples");
    }
    const double n = static_cast<double>(xs.size());
    const double mean = compensated_sum(xs) / n;
    std::vector<double> sq(xs.size());
    std::transform(xs.begin(), xs.end(), sq.begin(), [mean](double x) { return (x - mean) * (x - mean); });
    return {mean, compensated_sum(sq) / (n - 1)};
}

McEstimate estimate_sensitivity_mc(const NetworkConfig &config, const ProbeParams &params, const McRun &run) {
    config.validate();
    params.validate();
    run.validate();
    const Eigen::VectorXd coeffs = joint_quadrature_coefficients(config.M);
    const int64_t n = run.n_samples;

    const auto plus = sample_moments(sample_joint_quadrature(
        network_output_state(config, params, run.phi0 + run.d_phi), coeffs, n, splitmix64(run.seed ^ 1)));
    const auto minus = sample_moments(sample_joint_quadrature(
        network_output_state(config, params, run.phi0 - run.d_phi), coeffs, n, splitmix64(run.seed ^ 2)));
    const auto center = sample_moments(sample_joint_quadrature(
        network_output_state(config, params, run.phi0), coeffs, n, splitmix64(run.seed ^ 3)));

    McEstimate out;
    out.n_samples = n;
    out.slope_hat = (plus.mean - minus.mean) / (2 * run.d_phi);
    out.slope_std_error =
        std::sqrt((plus.variance + minus.variance) / (static_cast<double>(n) * 4 * run.d_phi * run.d_phi));
    if (!(std::abs(out.slope_hat) >= 3 * out.slope_std_error)) {
        throw Error(
            ErrorCode::InsufficientSignal, "mean slope " + std::to_string(out.slope_hat) +
                                               " is within 3 standard errors (" +
                                               std::to_string(out.slope_std_error) + ") of zero");
    }
    out.variance_hat = center.variance;
    const double s = out.slope_hat;
    const double v = out.variance_hat;
    out.delta_phi_sq_hat = v / (s * s);

    // Delta method with independent variance and slope estimates.
    const double var_v = 2 * v * v / static_cast<double>(n - 1);
    const double d_dv = 1 / (s * s);
    const double d_ds = -2 * v / (s * s * s);
    out.std_error = std::sqrt(d_dv * d_dv * var_v + d_ds * d_ds * out.slope_std_error * out.slope_std_error);
    out.analytic = sensitivity(config, params);
    out.z_score = (out.delta_phi_sq_hat - out.analytic) / out.std_error;
    return out;
}

}  // namespace gyronet
