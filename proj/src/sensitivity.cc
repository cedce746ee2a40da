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

#include "gyronet/sensitivity.h"

#include <cmath>
#include <numbers>
#include <string>

#include "gyronet/errors.h"

namespace gyronet {

namespace {

void check_eta(double eta) {
    if (!(eta > 0 && eta <= 1)) {
        throw Error(ErrorCode::InvalidArgument, "transmissivity must lie in (0, 1], got " + std::to_string(eta));
    }
}

void check_M(int M) {
    if (M < 1) {
        throw Error(ErrorCode::InvalidArgument, "sensor count must be >= 1");
    }
}

// Shared numerator of every homodyne closed form: e^{-2r} + 1/eta - 1.
double noise_factor(double r, double eta) {
    return std::exp(-2 * r) + 1 / eta - 1;
}

// Photon budget of one amplifier before loss, in units where the entangled
// amplifier feeds M sensors and each separable amplifier feeds one.
double budget_per_amplifier(const NetworkConfig &config) {
    const double sensors = config.topology == Topology::Entangled ? config.M : 1;
    return sensors * config.N / config.eta;
}

}  // namespace

std::string_view to_string(Topology t) {
    return t == Topology::Entangled ? "entangled" : "separable";
}

std::string_view to_string(Seeding s) {
    return s == Seeding::Single ? "single" : "double";
}

void NetworkConfig::validate() const {
    check_M(M);
    check_eta(eta);
    if (!(N > 0) || !std::isfinite(N)) {
        throw Error(ErrorCode::InvalidArgument, "photon budget N must be positive");
    }
}

void ProbeParams::validate() const {
    if (!(r >= 0) || !std::isfinite(r)) {
        throw Error(ErrorCode::InvalidArgument, "squeezing parameter must be finite and >= 0");
    }
    if (!(amp >= 0) || !std::isfinite(amp)) {
        throw Error(ErrorCode::InvalidArgument, "seed amplitude must be finite and >= 0");
    }
}

void GyroGeometry::validate() const {
    if (!(area > 0) || !(wavelength > 0) || !(light_speed > 0)) {
        throw Error(ErrorCode::InvalidArgument, "gyroscope geometry must be strictly positive");
    }
}

QuadratureStats joint_quadrature_stats(
    const NetworkConfig &config, const ProbeParams &params, std::span<const double> phases) {
    check_M(config.M);
    check_eta(config.eta);
    params.validate();
    if (phases.size() != static_cast<size_t>(config.M)) {
        throw Error(ErrorCode::InvalidArgument, "need one phase per sensor");
    }
    double phi_sum = 0;
    for (double p : phases) {
        phi_sum += p;
    }
    const double M = config.M;
    const double phi_bar = phi_sum / M;
    const double seeds = config.seeding == Seeding::Double ? 2 : 1;
    const double sensors_factor = config.topology == Topology::Entangled ? std::sqrt(M) : M;
    const double slope = seeds * std::sqrt(config.eta) * params.amp * std::exp(params.r) * sensors_factor;
    return {
        -slope * phi_bar,
        M / 2 + M * config.eta / 2 * (std::exp(-2 * params.r) - 1),
    };
}

double error_propagation(double variance, double mean_slope) {
    if (mean_slope == 0 || !std::isfinite(mean_slope)) {
        throw Error(ErrorCode::DegenerateEstimator, "mean response has zero slope");
    }
    return variance / (mean_slope * mean_slope);
}

double sensitivity_entangled(double r, double alpha, double eta) {
    check_eta(eta);
    if (!(alpha > 0)) {
        throw Error(ErrorCode::DegenerateEstimator, "entangled probe needs alpha > 0");
    }
    return noise_factor(r, eta) / (2 * alpha * alpha * std::exp(2 * r));
}

double sensitivity_separable(double r, double beta, double eta, int M) {
    check_eta(eta);
    check_M(M);
    if (!(beta > 0)) {
        throw Error(ErrorCode::DegenerateEstimator, "separable probe needs beta > 0");
    }
    return noise_factor(r, eta) / (2 * beta * beta * M * std::exp(2 * r));
}

double sensitivity_double_seed(Topology topology, double r, double amp, double eta, int M) {
    const double single =
        topology == Topology::Entangled ? sensitivity_entangled(r, amp, eta) : sensitivity_separable(r, amp, eta, M);
    return single / 4;
}

double sensitivity(const NetworkConfig &config, const ProbeParams &params) {
    config.validate();
    params.validate();
    if (config.seeding == Seeding::Double) {
        return sensitivity_double_seed(config.topology, params.r, params.amp, config.eta, config.M);
    }
    if (config.topology == Topology::Entangled) {
        return sensitivity_entangled(params.r, params.amp, config.eta);
    }
    return sensitivity_separable(params.r, params.amp, config.eta, config.M);
}

double snl(int M, double N) {
    check_M(M);
    if (!(N > 0)) {
        throw Error(ErrorCode::InvalidArgument, "photon budget N must be positive");
    }
    return 1 / (2 * M * N);
}

double total_photons(double r, double amp, Seeding seeding) {
    const double squeezed_vacuum = 2 * std::sinh(r) * std::sinh(r);
    if (seeding == Seeding::Single) {
        return amp * amp * std::cosh(2 * r) + squeezed_vacuum;
    }
    return 2 * amp * amp * std::exp(2 * r) + squeezed_vacuum;
}

double photons_per_sensor(const NetworkConfig &config, const ProbeParams &params) {
    const double n_amp = total_photons(params.r, params.amp, config.seeding);
    const double sensors = config.topology == Topology::Entangled ? config.M : 1;
    return config.eta * n_amp / sensors;
}

double constrained_amplitude(const NetworkConfig &config, double r) {
    config.validate();
    const double budget = budget_per_amplifier(config);
    const double sinh_r = std::sinh(r);
    double coherent = budget - 2 * sinh_r * sinh_r;
    if (coherent < 0) {
        if (coherent < -1e-12 * budget) {
            throw Error(
                ErrorCode::InfeasibleConstraint,
                "squeezed vacuum at r=" + std::to_string(r) + " exceeds the photon budget");
        }
        coherent = 0;
    }
    const double per_amp2 = config.seeding == Seeding::Single ? std::cosh(2 * r) : 2 * std::exp(2 * r);
    return std::sqrt(coherent / per_amp2);
}

double max_squeezing(const NetworkConfig &config) {
    config.validate();
    return std::asinh(std::sqrt(budget_per_amplifier(config) / 2));
}

double sensitivity_ratio(double s_sep, double s_ent) {
    if (!(s_sep > 0) || !(s_ent > 0)) {
        throw Error(ErrorCode::InvalidArgument, "sensitivity ratio needs positive inputs");
    }
    return s_sep / s_ent;
}

double to_db(double ratio) {
    if (!(ratio > 0)) {
        throw Error(ErrorCode::InvalidArgument, "dB conversion needs a positive ratio");
    }
    return 10 * std::log10(ratio);
}

double squeezing_db(double r) {
    return 20 / std::numbers::ln10 * r;
}

double angular_velocity(double delta_phi, const GyroGeometry &geom) {
    geom.validate();
    return geom.wavelength * geom.light_speed / (8 * std::numbers::pi * geom.area) * delta_phi;
}

SensitivityReport make_report(const NetworkConfig &config, const ProbeParams &params) {
    SensitivityReport rep;
    rep.delta_phi_sq = sensitivity(config, params);
    rep.snl = snl(config.M, config.N);
    rep.enhancement_db = to_db(rep.snl / rep.delta_phi_sq);
    rep.squeezing_db = squeezing_db(params.r);
    return rep;
}

}  // namespace gyronet
