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

#include "gyronet/qcrb.h"

#include <cmath>
#include <limits>
#include <string>

#include "gyronet/errors.h"
#include "gyronet/network.h"
#include "gyronet/optimizer.h"
#include "gyronet/sensitivity.h"

namespace gyronet {

namespace {

constexpr double kSmallAngle = 0.05;
constexpr double kDenominatorFloor = 1e-12;

Eigen::Matrix2d rotation(double phi) {
    Eigen::Matrix2d R;
    R << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
    return R;
}

Eigen::Matrix4d phase_rotation(const ParamPoint &p) {
    Eigen::Matrix4d R = Eigen::Matrix4d::Zero();
    R.block<2, 2>(0, 0) = rotation(p.phi1);
    R.block<2, 2>(2, 2) = rotation(p.phi2);
    return R;
}

// Generator of the phase rotation on sensor k: d/dphi_k Rot = Rot * E_k.
Eigen::Matrix4d phase_generator(int k) {
    Eigen::Matrix4d E = Eigen::Matrix4d::Zero();
    E(2 * k, 2 * k + 1) = 1;
    E(2 * k + 1, 2 * k) = -1;
    return E;
}

// Covariance and displacement before the phase rotation.
Eigen::Matrix4d unrotated_cov(const ParamPoint &p) {
    const double P = p.eta / 2 * std::expm1(2 * p.r);
    const double Q = p.eta / 2 * std::expm1(-2 * p.r);
    Eigen::Matrix4d V;
    V << P + 1, 0, P, 0,
         0, Q + 1, 0, Q,
         P, 0, P + 1, 0,
         0, Q, 0, Q + 1;
    // Thermal light at the unused ports lands on the difference mode (c1 - c2)/sqrt2.
    const double t = p.eta * p.epsilon_thermal;
    Eigen::Matrix4d thermal = Eigen::Matrix4d::Zero();
    thermal.block<2, 2>(0, 0) = t * Eigen::Matrix2d::Identity();
    thermal.block<2, 2>(2, 2) = t * Eigen::Matrix2d::Identity();
    thermal.block<2, 2>(0, 2) = -t * Eigen::Matrix2d::Identity();
    thermal.block<2, 2>(2, 0) = -t * Eigen::Matrix2d::Identity();
    return V + thermal;
}

Eigen::Vector4d unrotated_mean(const ParamPoint &p) {
    const double x0 = std::sqrt(p.eta / 2) * std::exp(p.r) * p.alpha;
    return Eigen::Vector4d(x0, 0, x0, 0);
}

Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd &V) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(V);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0) {
        throw Error(ErrorCode::NumericalDomain, "covariance is not positive definite");
    }
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
           es.eigenvectors().transpose();
}

// Basis blocks of the SLD expansion, each scaled by 1/sqrt2:
// l = 0: [[0, 1], [-1, 0]], 1: sigma_z, 2: identity, 3: sigma_x.
Eigen::Matrix2d basis_block(int l) {
    Eigen::Matrix2d B;
    switch (l) {
        case 0:
            B << 0, 1, -1, 0;
            break;
        case 1:
            B << 1, 0, 0, -1;
            break;
        case 2:
            B << 1, 0, 0, 1;
            break;
        default:
            B << 0, 1, 1, 0;
            break;
    }
    return B / std::sqrt(2.0);
}

void check_closed_form_inputs(double r, double amp, double eta) {
    if (!(eta > 0 && eta <= 1)) {
        throw Error(ErrorCode::InvalidArgument, "transmissivity must lie in (0, 1]");
    }
    if (!(amp >= 0) || !std::isfinite(r) || !std::isfinite(amp)) {
        throw Error(ErrorCode::InvalidArgument, "closed form needs finite r and amplitude >= 0");
    }
}

double checked_inverse(double denominator, const char *what) {
    if (!(denominator > 0)) {
        throw Error(ErrorCode::DegenerateProbe, std::string(what) + ": probe carries no phase information");
    }
    return 1 / denominator;
}

}  // namespace

void ParamPoint::validate() const {
    if (!(eta > 0 && eta <= 1)) {
        throw Error(ErrorCode::InvalidArgument, "transmissivity must lie in (0, 1], got " + std::to_string(eta));
    }
    if (!(r >= 0) || !std::isfinite(r) || !(alpha >= 0) || !std::isfinite(alpha)) {
        throw Error(ErrorCode::InvalidArgument, "r and alpha must be finite and >= 0");
    }
    if (!std::isfinite(phi1) || !std::isfinite(phi2)) {
        throw Error(ErrorCode::InvalidArgument, "phases must be finite");
    }
    if (!(epsilon_thermal >= 0 && epsilon_thermal <= 1e-4)) {
        throw Error(ErrorCode::InvalidArgument, "epsilon_thermal must lie in [0, 1e-4]");
    }
}

bool ParamPoint::small_angle() const {
    return std::abs(phi1) <= kSmallAngle && std::abs(phi2) <= kSmallAngle;
}

GaussianState build_output_state(const ParamPoint &p) {
    p.validate();
    const Eigen::Matrix4d R = phase_rotation(p);
    GaussianState s;
    s.num_modes = 2;
    s.mean = R * unrotated_mean(p);
    s.cov = R * unrotated_cov(p) * R.transpose();
    return s;
}

StateDerivatives output_state_derivatives(const ParamPoint &p) {
    p.validate();
    const Eigen::Matrix4d R = phase_rotation(p);
    const Eigen::Matrix4d V0 = unrotated_cov(p);
    const Eigen::Vector4d d0 = unrotated_mean(p);
    StateDerivatives out;
    for (int k = 0; k < 2; ++k) {
        const Eigen::Matrix4d E = phase_generator(k);
        out.d_mean[k] = R * E * d0;
        out.d_cov[k] = R * (E * V0 + V0 * E.transpose()) * R.transpose();
    }
    return out;
}

GaussianState pipeline_output_state(const ParamPoint &p) {
    p.validate();
    const NetworkConfig config{2, p.eta, 1, Topology::Entangled, Seeding::Single};
    const double phases[2] = {p.phi1, p.phi2};
    return sum_mode_marginal(network_output_state(config, {p.r, p.alpha}, phases, p.epsilon_thermal));
}

StateDerivatives output_state_derivatives_fd(const ParamPoint &p, double step) {
    if (!(step > 0)) {
        throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
    }
    StateDerivatives out;
    for (int k = 0; k < 2; ++k) {
        ParamPoint plus = p;
        ParamPoint minus = p;
        (k == 0 ? plus.phi1 : plus.phi2) += step;
        (k == 0 ? minus.phi1 : minus.phi2) -= step;
        const GaussianState sp = pipeline_output_state(plus);
        const GaussianState sm = pipeline_output_state(minus);
        out.d_mean[k] = (sp.mean - sm.mean) / (2 * step);
        out.d_cov[k] = (sp.cov - sm.cov) / (2 * step);
    }
    return out;
}

Diagonalization diagonalize(const Eigen::MatrixXd &V, Diagonalizer kind) {
    if (kind == Diagonalizer::Williamson) {
        WilliamsonResult w = williamson(V);
        return {std::move(w.S), std::move(w.symplectic_eigenvalues)};
    }
    if (V.rows() != 4 || V.cols() != 4) {
        throw Error(ErrorCode::InvalidArgument, "sum-basis diagonalizer is defined for two modes");
    }
    const Eigen::VectorXd nu = symplectic_eigenvalues(V);
    Eigen::Matrix4d R;
    R << 0, 1, 0, 1,
         1, 0, 1, 0,
         0, 1, 0, -1,
         1, 0, -1, 0;
    R /= std::sqrt(2.0);
    Eigen::Vector4d w_sqrt(nu(0), nu(0), nu(1), nu(1));
    w_sqrt = w_sqrt.cwiseSqrt();
    return {w_sqrt.asDiagonal() * R * inverse_sqrt(V), nu};
}

Eigen::MatrixXd sld_fisher_matrix(
    const Eigen::MatrixXd &V, const Diagonalization &diag, std::span<const Eigen::VectorXd> d_mean,
    std::span<const Eigen::MatrixXd> d_cov) {
    if (d_mean.size() != d_cov.size()) {
        throw Error(ErrorCode::InvalidArgument, "need matching mean and covariance derivatives");
    }
    const int n = static_cast<int>(V.rows()) / 2;
    const int P = static_cast<int>(d_cov.size());
    const Eigen::MatrixXd &S = diag.S;
    const Eigen::VectorXd &nu = diag.nu;

    std::vector<Eigen::MatrixXd> L(P, Eigen::MatrixXd::Zero(2 * n, 2 * n));
    for (int i = 0; i < P; ++i) {
        const Eigen::MatrixXd T = S * d_cov[i] * S.transpose();
        const double scale = std::max(T.norm(), std::numeric_limits<double>::min());
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                for (int l = 0; l < 4; ++l) {
                    const Eigen::Matrix2d B = basis_block(l);
                    // tr(T M) with M holding B in block (j, k).
                    const double a = (T.block(2 * k, 2 * j, 2, 2) * B).trace();
                    const double den = nu(j) * nu(k) - (l % 2 == 0 ? 1.0 : -1.0);
                    if (std::abs(den) < kDenominatorFloor) {
                        if (std::abs(a) <= 1e-9 * scale) {
                            continue;
                        }
                        throw Error(
                            ErrorCode::Singularity, "vanishing SLD denominator at (j,k,l) = (" + std::to_string(j) +
                                                        "," + std::to_string(k) + "," + std::to_string(l) + ")");
                    }
                    Eigen::MatrixXd Mjk = Eigen::MatrixXd::Zero(2 * n, 2 * n);
                    Mjk.block(2 * j, 2 * k, 2, 2) = B;
                    L[i] += a / den * S.transpose() * Mjk * S;
                }
            }
        }
    }

    const Eigen::LDLT<Eigen::MatrixXd> Vinv(V);
    Eigen::MatrixXd F(P, P);
    for (int i = 0; i < P; ++i) {
        for (int j = 0; j < P; ++j) {
            F(i, j) = 0.5 * (d_cov[j] * L[i]).trace() + 2 * d_mean[i].dot(Vinv.solve(d_mean[j]));
        }
    }
    return 0.5 * (F + F.transpose());
}

QfiResult qfi_matrix(const ParamPoint &p, Diagonalizer kind) {
    const GaussianState state = build_output_state(p);
    const StateDerivatives der = output_state_derivatives(p);

    QfiResult out;
    out.diagonalizer = kind;
    out.small_angle_warning = !p.small_angle();
    out.regularized = p.epsilon_thermal > 0;
    out.symplectic_eigenvalues = symplectic_eigenvalues(state.cov);
    if (!out.regularized && (out.symplectic_eigenvalues.array() - 1).abs().minCoeff() < 1e-6) {
        throw Error(
            ErrorCode::Singularity, "unit symplectic eigenvalue without thermal regularization (epsilon_thermal = 0)");
    }

    const Diagonalization diag = diagonalize(state.cov, kind);
    out.F = sld_fisher_matrix(state.cov, diag, der.d_mean, der.d_cov);
    out.qfi_equal_phase = out.F.sum();
    out.qcrb_avg_phase = checked_inverse(out.qfi_equal_phase, "qfi_matrix");
    const Eigen::Vector2d w(0.5, 0.5);
    out.qcrb_avg_phase_matrix = out.F.determinant() > 0 ? w.dot(out.F.inverse() * w)
                                                        : std::numeric_limits<double>::quiet_NaN();
    return out;
}

double closed_form_entangled_qcrb(double r, double alpha, double eta) {
    check_closed_form_inputs(r, alpha, eta);
    const double a = 1 - eta + eta * std::exp(2 * r);
    const double b = 1 - eta + eta * std::exp(-2 * r);
    const double s = std::sinh(2 * r);
    const double den = 2 * eta * (std::exp(2 * r) * alpha * alpha * a + eta * s * s);
    return a * b * checked_inverse(den, "entangled QCRB");
}

double closed_form_entangled_qcrb_lossless(double r, double alpha) {
    check_closed_form_inputs(r, alpha, 1);
    const double s = std::sinh(2 * r);
    return 0.5 * checked_inverse(std::exp(4 * r) * alpha * alpha + s * s, "entangled QCRB");
}

double closed_form_separable_qcrb(double r, double beta, double eta) {
    check_closed_form_inputs(r, beta, eta);
    const double a = 1 - eta + eta * std::exp(2 * r);
    const double b = 1 - eta + eta * std::exp(-2 * r);
    const double s = std::sinh(2 * r);
    const double bracket = std::exp(2 * r) * beta * beta / b + 2 * eta * s * s / (a * b + 1);
    return checked_inverse(bracket, "separable QCRB") / (4 * eta);
}

double closed_form_separable_qcrb_lossless(double r, double beta) {
    check_closed_form_inputs(r, beta, 1);
    const double s = std::sinh(2 * r);
    return 0.25 * checked_inverse(std::exp(4 * r) * beta * beta + s * s, "separable QCRB");
}

double entangled_qcrb_exact(double r, double alpha, double eta) {
    check_closed_form_inputs(r, alpha, eta);
    const double a = 1 - eta + eta * std::exp(2 * r);
    const double b = 1 - eta + eta * std::exp(-2 * r);
    const double s = std::sinh(2 * r);
    const double qfi = 2 * eta * std::exp(2 * r) * alpha * alpha / b + 4 * eta * eta * s * s / (a * b + 1);
    return checked_inverse(qfi, "entangled QCRB");
}

std::vector<OrderingRow> qcrb_ordering_sweep(double eta, std::span<const double> N_grid) {
    std::vector<OrderingRow> rows;
    rows.reserve(N_grid.size());
    for (double N : N_grid) {
        OrderingRow row;
        row.N = N;
        row.e_cr = optimize_qcrb({2, eta, N, Topology::Entangled, Seeding::Single}).delta_phi_sq;
        row.e = solve_entangled(N, 2, eta).delta_phi_sq;
        row.s_cr = optimize_qcrb({2, eta, N, Topology::Separable, Seeding::Single}).delta_phi_sq;
        row.s = solve_separable(N, 2, eta).delta_phi_sq;
        row.holds = row.e_cr <= row.e && row.e <= row.s_cr && row.s_cr <= row.s;
        row.strict = row.e_cr < row.e && row.e < row.s_cr && row.s_cr < row.s;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace gyronet
