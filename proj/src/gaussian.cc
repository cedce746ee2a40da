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

#include "gyronet/gaussian.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "gyronet/errors.h"

namespace gyronet {

namespace {

void check_mode(const GaussianState &state, int mode) {
    if (mode < 0 || mode >= state.num_modes) {
        throw Error(
            ErrorCode::InvalidArgument,
            "mode index " + std::to_string(mode) + " out of range for " + std::to_string(state.num_modes) +
                " modes");
    }
}

void check_pair(const GaussianState &state, int mode_a, int mode_b) {
    check_mode(state, mode_a);
    check_mode(state, mode_b);
    if (mode_a == mode_b) {
        throw Error(ErrorCode::InvalidArgument, "two-mode operation needs distinct modes");
    }
}

std::vector<int> quadrature_indices(std::span<const int> modes) {
    std::vector<int> idx;
    idx.reserve(2 * modes.size());
    for (int m : modes) {
        idx.push_back(2 * m);
        idx.push_back(2 * m + 1);
    }
    return idx;
}

}  // namespace

Eigen::MatrixXd symplectic_form(int num_modes) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * num_modes, 2 * num_modes);
    for (int k = 0; k < num_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1;
        omega(2 * k + 1, 2 * k) = -1;
    }
    return omega;
}

WilliamsonResult williamson(const Eigen::MatrixXd &V) {
    const Eigen::Index dim = V.rows();
    if (dim == 0 || dim % 2 != 0 || V.cols() != dim) {
        throw Error(ErrorCode::InvalidArgument, "covariance must be square with even dimension");
    }
    const int n = static_cast<int>(dim / 2);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (V + V.transpose()));
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0) {
        throw Error(ErrorCode::NumericalDomain, "covariance matrix is not positive definite");
    }
    const Eigen::VectorXd inv_sqrt = eig.eigenvalues().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd v_inv_half = eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();

    // i * V^{-1/2} Omega V^{-1/2} is Hermitian with eigenvalues +-1/nu_k. For an
    // eigenvector x + i y of +omega the real pair (sqrt2 y, sqrt2 x) spans an
    // invariant plane on which the antisymmetric form reads omega * [[0,1],[-1,0]].
    const Eigen::MatrixXd A = v_inv_half * symplectic_form(n) * v_inv_half;
    const Eigen::MatrixXcd H = std::complex<double>(0, 1) * A.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ceig(H);
    if (ceig.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalDomain, "eigendecomposition failed in williamson()");
    }

    WilliamsonResult out;
    out.symplectic_eigenvalues.resize(n);
    Eigen::MatrixXd Q(dim, dim);
    for (int k = 0; k < n; ++k) {
        // Largest omega first, so nu comes out ascending.
        const Eigen::Index col = dim - 1 - k;
        const double omega = ceig.eigenvalues()(col);
        if (omega <= 0) {
            throw Error(ErrorCode::NumericalDomain, "non-positive symplectic frequency");
        }
        const Eigen::VectorXcd z = ceig.eigenvectors().col(col);
        Q.col(2 * k) = std::sqrt(2.0) * z.imag();
        Q.col(2 * k + 1) = std::sqrt(2.0) * z.real();
        out.symplectic_eigenvalues(k) = 1.0 / omega;
    }

    Eigen::VectorXd w_diag(dim);
    for (int k = 0; k < n; ++k) {
        w_diag(2 * k) = w_diag(2 * k + 1) = out.symplectic_eigenvalues(k);
    }
    out.W = w_diag.asDiagonal();
    out.S = w_diag.cwiseSqrt().asDiagonal() * Q.transpose() * v_inv_half;
    return out;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd &V) {
    return williamson(V).symplectic_eigenvalues;
}

void GaussianState::validate() const {
    if (num_modes < 1) {
        throw Error(ErrorCode::InvalidState, "state has no modes");
    }
    const Eigen::Index dim = 2 * num_modes;
    if (mean.size() != dim || cov.rows() != dim || cov.cols() != dim) {
        throw Error(ErrorCode::InvalidState, "displacement/covariance dimensions disagree with num_modes");
    }
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw Error(ErrorCode::InvalidState, "covariance is not symmetric");
    }
    Eigen::VectorXd nu;
    try {
        nu = symplectic_eigenvalues(cov);
    } catch (const Error &) {
        throw Error(ErrorCode::InvalidState, "covariance is not positive definite");
    }
    if (nu.minCoeff() < 1 - 1e-9) {
        throw Error(
            ErrorCode::InvalidState, "uncertainty relation violated: symplectic eigenvalue " +
                                         std::to_string(nu.minCoeff()));
    }
}

GaussianState vacuum(int num_modes) {
    if (num_modes < 1) {
        throw Error(ErrorCode::InvalidArgument, "vacuum needs at least one mode");
    }
    GaussianState s;
    s.num_modes = num_modes;
    s.mean = Eigen::VectorXd::Zero(2 * num_modes);
    s.cov = Eigen::MatrixXd::Identity(2 * num_modes, 2 * num_modes);
    return s;
}

GaussianState set_thermal(GaussianState state, int mode, double mean_photons) {
    check_mode(state, mode);
    if (!(mean_photons >= 0) || !std::isfinite(mean_photons)) {
        throw Error(ErrorCode::InvalidArgument, "thermal photon number must be finite and >= 0");
    }
    const int i = 2 * mode;
    state.cov.middleRows(i, 2).setZero();
    state.cov.middleCols(i, 2).setZero();
    state.cov.block(i, i, 2, 2) = (1 + 2 * mean_photons) * Eigen::Matrix2d::Identity();
    state.mean.segment(i, 2).setZero();
    return state;
}

GaussianState apply_symplectic(GaussianState state, const Eigen::MatrixXd &S, std::span<const int> modes) {
    for (int m : modes) {
        check_mode(state, m);
    }
    const std::vector<int> idx = quadrature_indices(modes);
    const auto k = static_cast<Eigen::Index>(idx.size());
    if (S.rows() != k || S.cols() != k) {
        throw Error(ErrorCode::InvalidArgument, "symplectic matrix size does not match mode list");
    }
    const Eigen::VectorXd d_sub = state.mean(idx);
    state.mean(idx) = S * d_sub;
    const Eigen::MatrixXd rows = state.cov(idx, Eigen::all);
    state.cov(idx, Eigen::all) = S * rows;
    const Eigen::MatrixXd cols = state.cov(Eigen::all, idx);
    state.cov(Eigen::all, idx) = cols * S.transpose();
    return state;
}

GaussianState two_mode_squeeze(GaussianState state, int mode_a, int mode_b, double r) {
    check_pair(state, mode_a, mode_b);
    if (!std::isfinite(r)) {
        throw Error(ErrorCode::InvalidArgument, "squeezing parameter must be finite");
    }
    const double c = std::cosh(r);
    const double s = std::sinh(r);
    Eigen::Matrix4d S;
    // x_a' = c x_a + s x_b, y_a' = c y_a - s y_b (and a <-> b).
    S << c, 0, s, 0,
         0, c, 0, -s,
         s, 0, c, 0,
         0, -s, 0, c;
    const int modes[2] = {mode_a, mode_b};
    return apply_symplectic(std::move(state), S, modes);
}

GaussianState displace(GaussianState state, int mode, double amplitude) {
    check_mode(state, mode);
    if (!(amplitude >= 0) || !std::isfinite(amplitude)) {
        throw Error(ErrorCode::InvalidArgument, "seed amplitude must be finite and >= 0");
    }
    state.mean(2 * mode) += std::sqrt(2.0) * amplitude;
    return state;
}

GaussianState symmetric_bs_network(GaussianState state, int input_mode, std::span<const int> output_modes) {
    check_mode(state, input_mode);
    const auto m = static_cast<Eigen::Index>(output_modes.size());
    if (m < 1) {
        throw Error(ErrorCode::InvalidArgument, "beamsplitter network needs at least one port");
    }
    std::vector<int> sorted(output_modes.begin(), output_modes.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(ErrorCode::InvalidArgument, "beamsplitter network ports must be distinct");
    }
    const auto it = std::find(output_modes.begin(), output_modes.end(), input_mode);
    if (it == output_modes.end()) {
        throw Error(ErrorCode::InvalidArgument, "input mode must be one of the network ports");
    }
    const auto k = static_cast<Eigen::Index>(it - output_modes.begin());

    // Householder reflection taking e_k to the uniform unit vector u.
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
    Eigen::VectorXd v = -u;
    v(k) += 1;
    Eigen::MatrixXd O = Eigen::MatrixXd::Identity(m, m);
    const double vv = v.squaredNorm();
    if (vv > 1e-30) {
        O -= 2.0 * v * v.transpose() / vv;
    }
    // A real orthogonal mode matrix acts identically on x and y.
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            S(2 * i, 2 * j) = S(2 * i + 1, 2 * j + 1) = O(i, j);
        }
    }
    return apply_symplectic(std::move(state), S, output_modes);
}

GaussianState sagnac_phase(GaussianState state, int mode_a, int mode_b, double phi) {
    check_pair(state, mode_a, mode_b);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    Eigen::Matrix4d S;
    // x_a' = c x_a + s y_b, y_a' = c y_a - s x_b (and a <-> b).
    S << c, 0, 0, s,
         0, c, -s, 0,
         0, s, c, 0,
         -s, 0, 0, c;
    const int modes[2] = {mode_a, mode_b};
    return apply_symplectic(std::move(state), S, modes);
}

GaussianState loss_channel(GaussianState state, int mode, double eta, bool allow_full_loss) {
    check_mode(state, mode);
    const bool in_range = eta > 0 && eta <= 1;
    if (!in_range && !(allow_full_loss && eta == 0)) {
        throw Error(ErrorCode::InvalidArgument, "transmissivity must lie in (0, 1]");
    }
    const int i = 2 * mode;
    const double t = std::sqrt(eta);
    state.mean.segment(i, 2) *= t;
    state.cov.middleRows(i, 2) *= t;
    state.cov.middleCols(i, 2) *= t;
    state.cov.block(i, i, 2, 2) += (1 - eta) * Eigen::Matrix2d::Identity();
    return state;
}

QuadratureStats quadrature_stats(const GaussianState &state, const Eigen::VectorXd &coeffs) {
    if (coeffs.size() != state.mean.size()) {
        throw Error(ErrorCode::InvalidArgument, "coefficient vector length does not match the state");
    }
    return {coeffs.dot(state.mean), 0.5 * coeffs.dot(state.cov * coeffs)};
}

double mean_photon_number(const GaussianState &state, int mode) {
    check_mode(state, mode);
    const int i = 2 * mode;
    const double coherent = 0.5 * state.mean.segment(i, 2).squaredNorm();
    const double noise = 0.25 * (state.cov(i, i) + state.cov(i + 1, i + 1) - 2);
    return coherent + noise;
}

double total_mean_photon_number(const GaussianState &state) {
    double total = 0;
    for (int m = 0; m < state.num_modes; ++m) {
        total += mean_photon_number(state, m);
    }
    return total;
}

}  // namespace gyronet
