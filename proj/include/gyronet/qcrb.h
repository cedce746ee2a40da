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

#ifndef GYRONET_QCRB_H
#define GYRONET_QCRB_H

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gyronet/gaussian.h"

namespace gyronet {

// Two-sensor entangled network described by its per-sensor sum modes
// c_j = (a_j + b_j)/sqrt2, ordered (x_c1, y_c1, x_c2, y_c2). The difference
// modes carry no displacement and no phase information.

/// Operating point for the two-sensor Fisher information.
struct ParamPoint {
    double phi1 = 0;
    double phi2 = 0;
    double r = 0;
    double alpha = 0;
    double eta = 1;
    /// Mean thermal photons injected at the unused beamsplitter ports.
    double epsilon_thermal = 1e-6;

    /// Throws InvalidArgument on eta outside (0, 1], negative r or alpha, or
    /// epsilon_thermal outside [0, 1e-4].
    void validate() const;
    /// |phi1|, |phi2| <= 0.05.
    bool small_angle() const;
};

/// How the symplectic diagonalizer S in the SLD expansion is assembled.
enum class Diagonalizer {
    /// S = W^{1/2} R V^{-1/2} with a fixed sum/difference rotation R and
    /// W = diag(nu_min, nu_min, nu_max, nu_max).
    SumBasisRotation,
    /// Exact Williamson decomposition.
    Williamson,
};

struct StateDerivatives {
    std::array<Eigen::VectorXd, 2> d_mean;
    std::array<Eigen::MatrixXd, 2> d_cov;
};

struct QfiResult {
    /// Fisher matrix for (phi1, phi2).
    Eigen::Matrix2d F;
    /// Fisher information along phi1 = phi2 = phi, i.e. u^T F u with u = (1, 1).
    double qfi_equal_phase = 0;
    /// 1 / qfi_equal_phase.
    double qcrb_avg_phase = 0;
    /// w^T F^{-1} w with w = (1/2, 1/2).
    double qcrb_avg_phase_matrix = 0;
    Eigen::VectorXd symplectic_eigenvalues;
    /// Thermal noise was added at the unused ports.
    bool regularized = false;
    /// Phases outside the small-angle regime.
    bool small_angle_warning = false;
    Diagonalizer diagonalizer = Diagonalizer::SumBasisRotation;
};

/// Sum-mode state: d = sqrt(eta/2) e^r alpha (cos phi1, -sin phi1, cos phi2, -sin phi2),
/// V = Rot(phi) (V0 + thermal) Rot(phi)^T, with V0 built from
/// p = (eta/2)(e^{2r} - 1) and q = (eta/2)(e^{-2r} - 1).
GaussianState build_output_state(const ParamPoint &p);

/// Exact derivatives of build_output_state with respect to phi1 and phi2.
StateDerivatives output_state_derivatives(const ParamPoint &p);

/// Sum-mode marginal of the full two-sensor network simulation.
GaussianState pipeline_output_state(const ParamPoint &p);

/// Central-difference derivatives of pipeline_output_state.
StateDerivatives output_state_derivatives_fd(const ParamPoint &p, double step = 1e-6);

/// Diagonalizer for `V` and the symplectic eigenvalues it is paired with.
struct Diagonalization {
    Eigen::MatrixXd S;
    Eigen::VectorXd nu;
};
Diagonalization diagonalize(const Eigen::MatrixXd &V, Diagonalizer kind);

/// F_ij = 1/2 tr[dV_j L_i] + 2 dd_i^T V^{-1} dd_j with the second-moment part
/// of the symmetric logarithmic derivative expanded in the basis S^T M S.
/// Throws Singularity when a denominator nu_j nu_k -+ 1 vanishes against a
/// non-vanishing coefficient.
Eigen::MatrixXd sld_fisher_matrix(
    const Eigen::MatrixXd &V, const Diagonalization &diag, std::span<const Eigen::VectorXd> d_mean,
    std::span<const Eigen::MatrixXd> d_cov);

QfiResult qfi_matrix(const ParamPoint &p, Diagonalizer kind = Diagonalizer::SumBasisRotation);

/// ab / (2 eta [e^{2r} alpha^2 a + eta sinh^2 2r]), a = 1 - eta + eta e^{2r},
/// b = 1 - eta + eta e^{-2r}.
double closed_form_entangled_qcrb(double r, double alpha, double eta);
/// 1 / (2 [e^{4r} alpha^2 + sinh^2 2r]).
double closed_form_entangled_qcrb_lossless(double r, double alpha);
/// 1/(4 eta) [e^{2r} beta^2 / b + 2 eta sinh^2 2r / (ab + 1)]^{-1}.
double closed_form_separable_qcrb(double r, double beta, double eta);
/// 1 / (4 [e^{4r} beta^2 + sinh^2 2r]).
double closed_form_separable_qcrb_lossless(double r, double beta);
/// Inverse of the exact Fisher information of the sum-mode state along the
/// equal-phase direction: 1 / (2 eta e^{2r} alpha^2 / b + 4 eta^2 sinh^2 2r / (ab + 1)).
double entangled_qcrb_exact(double r, double alpha, double eta);

struct OrderingRow {
    double N = 0;
    double e_cr = 0;
    double e = 0;
    double s_cr = 0;
    double s = 0;
    /// e_cr <= e <= s_cr <= s.
    bool holds = false;
    /// Same with strict inequalities.
    bool strict = false;
};

/// Optimized entangled/separable QCRB and homodyne sensitivities per N (M = 2).
std::vector<OrderingRow> qcrb_ordering_sweep(double eta, std::span<const double> N_grid);

}  // namespace gyronet

#endif
