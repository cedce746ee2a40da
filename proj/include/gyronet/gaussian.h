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

#ifndef GYRONET_GAUSSIAN_H
#define GYRONET_GAUSSIAN_H

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace gyronet {

// Quadrature convention used throughout:
//   X = (a + a^dag)/sqrt(2),  Y = -i(a - a^dag)/sqrt(2),
// ordered (x_1, y_1, x_2, y_2, ...). The covariance is the symmetrized
// second moment <{dr_j, dr_k}>, so the vacuum covariance is the identity and
// a single-quadrature variance is half the corresponding diagonal entry.

/// Multimode Gaussian state: displacement vector and covariance matrix.
struct GaussianState {
    int num_modes = 0;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;

    /// Throws InvalidState unless dimensions agree, cov is symmetric to 1e-12
    /// relative, and every symplectic eigenvalue is >= 1 - 1e-9.
    void validate() const;
};

/// Block-diagonal commutation form, blocks [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int num_modes);

struct WilliamsonResult {
    /// One entry per mode, ascending.
    Eigen::VectorXd symplectic_eigenvalues;
    /// diag(nu_1, nu_1, nu_2, nu_2, ...).
    Eigen::MatrixXd W;
    /// Symplectic matrix with S V S^T = W.
    Eigen::MatrixXd S;
};

/// Williamson normal form of a symmetric positive definite covariance.
/// Throws NumericalDomain if V is not positive definite.
WilliamsonResult williamson(const Eigen::MatrixXd &V);

/// Symplectic eigenvalues only (ascending, one per mode).
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd &V);

GaussianState vacuum(int num_modes);

/// Replaces an uncorrelated, undisplaced mode with a thermal state holding
/// `mean_photons` photons on average.
GaussianState set_thermal(GaussianState state, int mode, double mean_photons);

/// a -> a cosh r + b^dag sinh r,  b -> b cosh r + a^dag sinh r.
GaussianState two_mode_squeeze(GaussianState state, int mode_a, int mode_b, double r);

/// Real coherent displacement so that <a> gains `amplitude`.
GaussianState displace(GaussianState state, int mode, double amplitude);

/// Lossless network with a real orthogonal mode matrix whose column for
/// `input_mode` is (1/sqrt(M), ..., 1/sqrt(M)) over `output_modes`.
/// `input_mode` must appear in `output_modes`.
GaussianState symmetric_bs_network(GaussianState state, int input_mode, std::span<const int> output_modes);

/// Counter-propagating phase pickup:
///   a -> cos(phi) a - i sin(phi) b,  b -> cos(phi) b - i sin(phi) a.
/// Exact in phi; no small-angle approximation.
GaussianState sagnac_phase(GaussianState state, int mode_a, int mode_b, double phi);

/// Pure-loss channel a -> sqrt(eta) a + sqrt(1 - eta) a_vac. eta must lie in
/// (0, 1]; eta == 0 (replace with vacuum) is accepted only when
/// `allow_full_loss` is set.
GaussianState loss_channel(GaussianState state, int mode, double eta, bool allow_full_loss = false);

/// Applies a symplectic matrix acting on the listed modes (in order).
GaussianState apply_symplectic(GaussianState state, const Eigen::MatrixXd &S, std::span<const int> modes);

struct QuadratureStats {
    double mean = 0;
    double variance = 0;
};

/// Statistics of the scalar observable sum_k coeffs[k] * r_k.
QuadratureStats quadrature_stats(const GaussianState &state, const Eigen::VectorXd &coeffs);

/// <a^dag a> of one mode.
double mean_photon_number(const GaussianState &state, int mode);
double total_mean_photon_number(const GaussianState &state);

}  // namespace gyronet

#endif
