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

#ifndef GYRONET_NETWORK_H
#define GYRONET_NETWORK_H

#include <span>

#include "gyronet/gaussian.h"
#include "gyronet/sensitivity.h"

namespace gyronet {

// Exact Gaussian model of the whole sensor network. Sensor j owns global modes
// (2j, 2j+1) for its counter-propagating pair (a_j, b_j). Stages run in the
// order amplifier -> beamsplitter networks -> Sagnac phase -> loss.

/// Output state of the network for per-sensor phases `phases`. When
/// `thermal_photons` > 0 the unused beamsplitter-network ports carry thermal
/// light instead of vacuum (entangled topology only).
GaussianState network_output_state(
    const NetworkConfig &config, const ProbeParams &params, std::span<const double> phases,
    double thermal_photons = 0);

/// Same as above with every sensor at the common phase `phi`.
GaussianState network_output_state(
    const NetworkConfig &config, const ProbeParams &params, double phi, double thermal_photons = 0);

/// Coefficients of Y+ = sum_j (Y_aj + Y_bj)/sqrt2 over the 4M quadratures.
Eigen::VectorXd joint_quadrature_coefficients(int M);

/// Marginal state of the per-sensor sum modes c_j = (a_j + b_j)/sqrt2.
GaussianState sum_mode_marginal(const GaussianState &network_state);

struct PipelineSensitivity {
    double slope = 0;
    double variance = 0;
    double delta_phi_sq = 0;
};

/// Error propagation through the exact pipeline: slope of <Y+> from a central
/// difference at phi0 +- step, noise evaluated at phi0.
PipelineSensitivity pipeline_sensitivity(
    const NetworkConfig &config, const ProbeParams &params, double phi0, double step);

}  // namespace gyronet

#endif
