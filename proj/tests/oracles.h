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

// Reference computations that share no code path with the library.

#ifndef GYRONET_TESTS_ORACLES_H
#define GYRONET_TESTS_ORACLES_H

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace gyronet::oracle {

inline Eigen::MatrixXd omega(int n) {
    Eigen::MatrixXd O = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        O(2 * k, 2 * k + 1) = 1;
        O(2 * k + 1, 2 * k) = -1;
    }
    return O;
}

/// Fisher information of a Gaussian family in the vectorized form
/// 1/2 vec(dV)^T (V (x) V - Omega (x) Omega)^{-1} vec(dV) + 2 dd^T V^{-1} dd.
inline double kronecker_qfi(const Eigen::MatrixXd &V, const Eigen::VectorXd &dd, const Eigen::MatrixXd &dV) {
    const int n = static_cast<int>(V.rows()) / 2;
    const Eigen::MatrixXd O = omega(n);
    const Eigen::MatrixXd K = Eigen::kroneckerProduct(V, V) - Eigen::kroneckerProduct(O, O);
    const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(dV.data(), dV.size());
    return 0.5 * v.dot(K.fullPivLu().solve(v)) + 2 * dd.dot(V.ldlt().solve(dd));
}

/// Symplectic eigenvalues from the spectrum of i Omega V (absolute values,
/// each appearing twice; returned ascending, one per mode).
inline Eigen::VectorXd symplectic_spectrum(const Eigen::MatrixXd &V) {
    const int n = static_cast<int>(V.rows()) / 2;
    Eigen::EigenSolver<Eigen::MatrixXd> es(omega(n) * V);
    Eigen::VectorXd mags = es.eigenvalues().cwiseAbs();
    std::sort(mags.data(), mags.data() + mags.size());
    Eigen::VectorXd out(n);
    for (int k = 0; k < n; ++k) {
        out(k) = mags(2 * k);
    }
    return out;
}

struct GridMin {
    double x = 0;
    double f = 0;
};

/// Dense scan followed by repeated local refinement; no derivatives, no
/// golden section.
inline GridMin brute_force_minimize(const std::function<double(double)> &f, double lo, double hi, int cells = 20000) {
    GridMin best{lo, f(lo)};
    for (int i = 1; i <= cells; ++i) {
        const double x = lo + (hi - lo) * i / cells;
        const double v = f(x);
        if (v < best.f) {
            best = {x, v};
        }
    }
    double width = (hi - lo) / cells;
    for (int round = 0; round < 30; ++round) {
        const double a = std::max(lo, best.x - width);
        const double b = std::min(hi, best.x + width);
        for (int i = 0; i <= 40; ++i) {
            const double x = a + (b - a) * i / 40;
            const double v = f(x);
            if (v < best.f) {
                best = {x, v};
            }
        }
        width /= 10;
    }
    return best;
}

}  // namespace gyronet::oracle

#endif
