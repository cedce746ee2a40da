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

#ifndef GYRONET_SENSITIVITY_H
#define GYRONET_SENSITIVITY_H

#include <span>
#include <string_view>

#include "gyronet/gaussian.h"

namespace gyronet {

enum class Topology { Entangled, Separable };
enum class Seeding { Single, Double };

std::string_view to_string(Topology t);
std::string_view to_string(Seeding s);

/// A network of M gyroscopes, each probed on average by N photons after loss.
struct NetworkConfig {
    int M = 1;
    double eta = 1;
    double N = 1;
    Topology topology = Topology::Entangled;
    Seeding seeding = Seeding::Single;

    void validate() const;
};

/// Squeezing parameter and coherent seed amplitude (alpha for the entangled
/// network, beta for each amplifier of the separable one).
struct ProbeParams {
    double r = 0;
    double amp = 0;

    void validate() const;
};

struct SensitivityReport {
    double delta_phi_sq = 0;
    double snl = 0;
    /// Separable over entangled at the same budget; filled by optimized_report().
    double ratio_R = 0;
    double enhancement_db = 0;
    double squeezing_db = 0;
};

struct GyroGeometry {
    double area = 1;          // m^2
    double wavelength = 1e-6;  // m
    double light_speed = 299792458.0;  // m/s

    void validate() const;
};

/// Mean and variance of the joint phase quadrature Y+ = sum_j (Y_aj + Y_bj)/sqrt2
/// to first order in the phases. Entangled: mean = -sqrt(eta) amp e^r sqrt(M) phibar,
/// separable: mean = -sqrt(eta) amp e^r M phibar; double seeding doubles the mean.
/// Variance M/2 + (M eta / 2)(e^{-2r} - 1) in every case.
QuadratureStats joint_quadrature_stats(
    const NetworkConfig &config, const ProbeParams &params, std::span<const double> phases);

/// Linear error propagation: variance / slope^2.
double error_propagation(double variance, double mean_slope);

double sensitivity_entangled(double r, double alpha, double eta);
double sensitivity_separable(double r, double beta, double eta, int M);
/// One quarter of the single-seed form for the chosen topology.
double sensitivity_double_seed(Topology topology, double r, double amp, double eta, int M);
/// Dispatches on topology and seeding.
double sensitivity(const NetworkConfig &config, const ProbeParams &params);

/// Shot-noise limit 1/(2MN).
double snl(int M, double N);

/// Photons produced by one parametric amplifier.
///   single: amp^2 cosh 2r + 2 sinh^2 r
///   double: 2 amp^2 e^{2r} + 2 sinh^2 r   (both ports seeded in phase)
double total_photons(double r, double amp, Seeding seeding);

/// Mean photons reaching each gyroscope after loss for the given probe.
double photons_per_sensor(const NetworkConfig &config, const ProbeParams &params);

/// Seed amplitude that puts exactly config.N photons on each gyroscope at
/// squeezing r. Throws InfeasibleConstraint when the squeezed vacuum alone
/// already exceeds the budget.
double constrained_amplitude(const NetworkConfig &config, double r);

/// Largest squeezing compatible with the photon budget (amplitude zero).
double max_squeezing(const NetworkConfig &config);

double sensitivity_ratio(double s_sep, double s_ent);
double to_db(double ratio);
double squeezing_db(double r);

/// Omega = lambda c / (8 pi A) * delta_phi.
double angular_velocity(double delta_phi, const GyroGeometry &geom);

/// Fills delta_phi_sq, snl, enhancement_db and squeezing_db.
SensitivityReport make_report(const NetworkConfig &config, const ProbeParams &params);

}  // namespace gyronet

#endif
