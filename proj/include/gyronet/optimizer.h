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

#ifndef GYRONET_OPTIMIZER_H
#define GYRONET_OPTIMIZER_H

#include <functional>

#include "gyronet/sensitivity.h"

namespace gyronet {

/// Optimal probe under the per-sensor photon budget.
struct OptimumPoint {
    double r_opt = 0;
    double amp_opt = 0;
    double delta_phi_sq = 0;
    /// Stationarity residual at the optimum. For the single-seed homodyne
    /// solvers this is the implicit r-N equation divided by the sum of its
    /// term magnitudes; for the other objectives it is d(ln objective)/dr.
    double implicit_residual = 0;
    /// photons_per_sensor(optimum) - N.
    double constraint_residual = 0;
    /// The optimum sits on an end of the admissible squeezing range.
    bool boundary = false;
    /// Three-point check f(r -+ h) >= f(r) passed.
    bool local_min_verified = false;
};

struct RatioPeak {
    double N_peak = 0;
    double R_peak = 0;
    double r_at_peak = 0;
    double enhancement_db_vs_snl = 0;
    double snl_over_entangled = 0;
    /// Maximum found at an end of the search interval (no interior peak).
    bool boundary = false;
};

/// Left-hand side of the stationarity condition linking the optimal squeezing
/// to the photons per amplifier after loss, `budget` (MN for the entangled
/// network, N for one separable amplifier), written in u = e^{2r}.
double stationarity_polynomial(double u, double budget, double eta);

/// stationarity_polynomial divided by the sum of the magnitudes of its terms.
double stationarity_residual(double r, double budget, double eta);

/// Seed amplitude solving the photon constraint at squeezing r, in the closed
/// form sqrt(2u(budget - eta cosh 2r + eta) / (eta (u^2 + 1))).
/// Throws InfeasibleConstraint on a negative radicand.
double stationary_amplitude(double r, double budget, double eta);

OptimumPoint solve_entangled(double N, int M, double eta);
OptimumPoint solve_separable(double N, int M, double eta);
/// Direct minimization for double-seeded amplifiers.
OptimumPoint solve_double_seed(const NetworkConfig &config);
/// Dispatches on topology and seeding.
OptimumPoint solve(const NetworkConfig &config);

/// Minimizes the closed-form QCRB (entangled or separable, single seed) over
/// r with the amplitude eliminated through the photon constraint. The closed
/// forms are derived for M = 2; other M are evaluated but unvalidated.
OptimumPoint optimize_qcrb(const NetworkConfig &config);

/// Optimized separable over optimized entangled sensitivity at budget N.
double optimized_ratio(double N, int M, double eta);

/// Maximizes optimized_ratio over N in [N_lo, N_hi].
RatioPeak find_ratio_peak(int M, double eta, double N_lo = 0.05, double N_hi = 200);

/// Report for the optimum of `config`, with ratio_R filled from both topologies
/// (single or double seeding as configured).
SensitivityReport optimized_report(const NetworkConfig &config);

/// Minimizes a smooth objective of r over [0, r_max] for a given budget.
/// Exposed for the QCRB and double-seed paths and for tests.
OptimumPoint minimize_over_squeezing(
    const NetworkConfig &config, const std::function<double(double r, double amp)> &objective);

}  // namespace gyronet

#endif
