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

#include "gyronet/network.h"

#include <cmath>
#include <vector>

#include "gyronet/errors.h"

namespace gyronet {

GaussianState network_output_state(
    const NetworkConfig &config, const ProbeParams &params, std::span<const double> phases,
    double thermal_photons) {
    config.validate();
    params.validate();
    const int M = config.M;
    if (phases.size() != static_cast<size_t>(M)) {
        throw Error(ErrorCode::InvalidArgument, "need one phase per sensor");
    }
    const bool double_seed = config.seeding == Seeding::Double;

    GaussianState state = vacuum(2 * M);
    if (config.topology == Topology::Entangled) {
        if (thermal_photons > 0) {
            for (int m = 2; m < 2 * M; ++m) {
                state = set_thermal(std::move(state), m, thermal_photons);
            }
        }
        state = displace(std::move(state), 0, params.amp);
        if (double_seed) {
            state = displace(std::move(state), 1, params.amp);
        }
        state = two_mode_squeeze(std::move(state), 0, 1, params.r);
        std::vector<int> a_ports, b_ports;
        for (int j = 0; j < M; ++j) {
            a_ports.push_back(2 * j);
            b_ports.push_back(2 * j + 1);
        }
        state = symmetric_bs_network(std::move(state), 0, a_ports);
        state = symmetric_bs_network(std::move(state), 1, b_ports);
    } else {
        for (int j = 0; j < M; ++j) {
            state = displace(std::move(state), 2 * j, params.amp);
            if (double_seed) {
                state = displace(std::move(state), 2 * j + 1, params.amp);
            }
            state = two_mode_squeeze(std::move(state), 2 * j, 2 * j + 1, params.r);
        }
    }
    for (int j = 0; j < M; ++j) {
        state = sagnac_phase(std::move(state), 2 * j, 2 * j + 1, phases[j]);
    }
    for (int m = 0; m < 2 * M; ++m) {
        state = loss_channel(std::move(state), m, config.eta);
    }
    return state;
}

GaussianState network_output_state(
    const NetworkConfig &config, const ProbeParams &params, double phi, double thermal_photons) {
    const std::vector<double> phases(static_cast<size_t>(std::max(config.M, 0)), phi);
    return network_output_state(config, params, phases, thermal_photons);
}

Eigen::VectorXd joint_quadrature_coefficients(int M) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(4 * M);
    for (int j = 0; j < M; ++j) {
        c(4 * j + 1) = 1 / std::sqrt(2.0);
        c(4 * j + 3) = 1 / std::sqrt(2.0);
    }
    return c;
}

GaussianState sum_mode_marginal(const GaussianState &network_state) {
    if (network_state.num_modes % 2 != 0) {
        throw Error(ErrorCode::InvalidArgument, "network state must hold (a, b) pairs");
    }
    const int M = network_state.num_modes / 2;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(2 * M, 4 * M);
    const double h = 1 / std::sqrt(2.0);
    for (int j = 0; j < M; ++j) {
        T(2 * j, 4 * j) = T(2 * j, 4 * j + 2) = h;
        T(2 * j + 1, 4 * j + 1) = T(2 * j + 1, 4 * j + 3) = h;
    }
    GaussianState out;
    out.num_modes = M;
    out.mean = T * network_state.mean;
    out.cov = T * network_state.cov * T.transpose();
    return out;
}

PipelineSensitivity pipeline_sensitivity(
    const NetworkConfig &config, const ProbeParams &params, double phi0, double step) {
    if (!(step > 0)) {
        throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
    }
    const Eigen::VectorXd coeffs = joint_quadrature_coefficients(config.M);
    const auto plus = quadrature_stats(network_output_state(config, params, phi0 + step), coeffs);
    const auto minus = quadrature_stats(network_output_state(config, params, phi0 - step), coeffs);
    const auto center = quadrature_stats(network_output_state(config, params, phi0), coeffs);
    PipelineSensitivity out;
    out.slope = (plus.mean - minus.mean) / (2 * step);
    out.variance = center.variance;
    out.delta_phi_sq = error_propagation(out.variance, out.slope);
    return out;
}

}  // namespace gyronet
