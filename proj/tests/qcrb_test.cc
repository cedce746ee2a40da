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
#include <vector>

#include "gtest/gtest.h"

#include "gyronet/errors.h"
#include "gyronet/network.h"
#include "gyronet/optimizer.h"
#include "gyronet/sensitivity.h"
#include "oracles.h"

using namespace gyronet;

namespace {

// Equal-phase Fisher information of the sum modes of a two-sensor network,
// from central differences of the full simulation and the vectorized formula.
double oracle_equal_phase_qfi(Topology t, double r, double amp, double eta, double eps) {
    const NetworkConfig c{2, eta, 1, t, Seeding::Single};
    const double h = 1e-6;
    auto state = [&](double phi) { return sum_mode_marginal(network_output_state(c, {r, amp}, phi, eps)); };
    const GaussianState s0 = state(0), sp = state(h), sm = state(-h);
    return oracle::kronecker_qfi(s0.cov, (sp.mean - sm.mean) / (2 * h), (sp.cov - sm.cov) / (2 * h));
}

}  // namespace

TEST(qcrb, output_state_examples) {
    const ParamPoint pure{0, 0, 1.1, 2, 1, 0};
    const GaussianState s = build_output_state(pure);
    const Eigen::VectorXd nu = symplectic_eigenvalues(s.cov);
    EXPECT_NEAR(nu(0), 1, 1e-9);
    EXPECT_NEAR(nu(1), 1, 1e-9);
    const double p = 0.5 * (std::exp(2.2) - 1);
    EXPECT_NEAR(s.cov(0, 0), p + 1, 1e-12);
    EXPECT_NEAR(s.cov(0, 2), p, 1e-12);

    const ParamPoint lossy{0, 0, 1, 5, 0.95, 0};
    const GaussianState l = build_output_state(lossy);
    const double x0 = std::sqrt(0.95 / 2) * std::exp(1.0) * 5;
    EXPECT_NEAR(l.mean(0), x0, 1e-12);
    EXPECT_EQ(l.mean(1), 0);
    EXPECT_NEAR(l.mean(2), x0, 1e-12);
    EXPECT_NEAR(symplectic_eigenvalues(l.cov)(1), 1.12357, 1e-5);
}

TEST(qcrb, state_and_derivatives_match_simulation) {
    for (double eta : {1.0, 0.95, 0.9}) {
        for (double r : {0.0, 0.7, 1.5}) {
            const ParamPoint p{0.01, -0.02, r, 3, eta, 1e-6};
            const GaussianState a = build_output_state(p);
            const GaussianState b = pipeline_output_state(p);
            EXPECT_LT((a.mean - b.mean).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_LT((a.cov - b.cov).cwiseAbs().maxCoeff(), 1e-12);
            const StateDerivatives an = output_state_derivatives(p);
            const StateDerivatives fd = output_state_derivatives_fd(p);
            for (int k = 0; k < 2; ++k) {
                EXPECT_LT((an.d_mean[k] - fd.d_mean[k]).cwiseAbs().maxCoeff(), 1e-6);
                EXPECT_LT((an.d_cov[k] - fd.d_cov[k]).cwiseAbs().maxCoeff(), 1e-6);
            }
        }
    }
}

TEST(qcrb, williamson_path_matches_vectorized_formula) {
    for (double eta : {0.99, 0.95, 0.9, 0.6}) {
        for (double r : {0.0, 0.5, 1.0, 1.5}) {
            for (double alpha : {1.0, 4.0}) {
                const ParamPoint p{0, 0, r, alpha, eta, 1e-6};
                const QfiResult q = qfi_matrix(p, Diagonalizer::Williamson);
                const GaussianState s = build_output_state(p);
                const StateDerivatives d = output_state_derivatives(p);
                const double f11 = oracle::kronecker_qfi(s.cov, d.d_mean[0], d.d_cov[0]);
                const double fuu =
                    oracle::kronecker_qfi(s.cov, d.d_mean[0] + d.d_mean[1], d.d_cov[0] + d.d_cov[1]);
                EXPECT_NEAR(q.F(0, 0) / f11, 1, 1e-8);
                EXPECT_NEAR(q.qfi_equal_phase / fuu, 1, 1e-8);
                EXPECT_NEAR(q.qcrb_avg_phase / entangled_qcrb_exact(r, alpha, eta), 1, 1e-5);
            }
        }
    }
}

TEST(qcrb, default_recipe_reproduces_closed_form) {
    for (double eta : {0.9, 0.95, 0.99, 1 - 1e-9}) {
        for (double r : {0.0, 0.5, 1.0, 1.5}) {
            for (double alpha : {1.0, 5.0, 10.0}) {
                const QfiResult q = qfi_matrix({0, 0, r, alpha, eta, 1e-6});
                EXPECT_NEAR(q.qcrb_avg_phase / closed_form_entangled_qcrb(r, alpha, eta), 1, 1e-3)
                    << "r=" << r << " alpha=" << alpha << " eta=" << eta;
            }
        }
    }
    const QfiResult q = qfi_matrix({0, 0, 1, 5, 0.95, 1e-6});
    EXPECT_NEAR(q.qcrb_avg_phase / closed_form_entangled_qcrb(1, 5, 0.95), 1, 1e-3);
}

TEST(qcrb, lossless_limits) {
    for (double r : {0.0, 0.5, 1.0}) {
        const double alpha = 2;
        const QfiResult q = qfi_matrix({0, 0, r, alpha, 1 - 1e-9, 1e-6});
        EXPECT_NEAR(q.qcrb_avg_phase / closed_form_entangled_qcrb_lossless(r, alpha), 1, 1e-4);
    }
    const QfiResult coh = qfi_matrix({0, 0, 0, 3, 1 - 1e-9, 1e-6});
    EXPECT_NEAR(coh.qcrb_avg_phase * 2 * 9, 1, 1e-4);
    EXPECT_NEAR(coh.qcrb_avg_phase / sensitivity_entangled(0, 3, 1), 1, 1e-4);
}

TEST(qcrb, symmetry_and_conventions) {
    const QfiResult q = qfi_matrix({0, 0, 1.2, 3, 0.93, 1e-6});
    EXPECT_NEAR(q.F(0, 1), q.F(1, 0), 1e-10 * q.F.norm());
    EXPECT_NEAR(q.F(0, 0), q.F(1, 1), 1e-10 * q.F.norm());
    EXPECT_NEAR(q.qcrb_avg_phase_matrix / q.qcrb_avg_phase, 1, 1e-10);
    EXPECT_TRUE(q.regularized);
    EXPECT_FALSE(q.small_angle_warning);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q.F);
    EXPECT_GE(es.eigenvalues().minCoeff(), 0);

    const QfiResult wide = qfi_matrix({0.1, 0.1, 1.2, 3, 0.93, 1e-6});
    EXPECT_TRUE(wide.small_angle_warning);
}

TEST(qcrb, regularization_insensitivity) {
    for (double eta : {0.9, 0.99, 1 - 1e-9}) {
        const double ref = qfi_matrix({0, 0, 1, 3, eta, 1e-6}).qcrb_avg_phase;
        for (double eps : {1e-7, 1e-5}) {
            EXPECT_NEAR(qfi_matrix({0, 0, 1, 3, eta, eps}).qcrb_avg_phase / ref, 1, 1e-3);
        }
    }
}

TEST(qcrb, singularity_guard) {
    EXPECT_THROW(qfi_matrix({0, 0, 1, 3, 1, 0}), Error);
    try {
        qfi_matrix({0, 0, 1, 3, 0.9, 0});
        FAIL() << "expected a singularity error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Singularity);
    }
    EXPECT_THROW((ParamPoint{0, 0, 1, 3, 0.9, 1e-3}.validate()), Error);
}

TEST(qcrb, sld_denominator_error_names_indices) {
    const Eigen::MatrixXd V = Eigen::MatrixXd::Identity(2, 2);
    Diagonalization diag{Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Ones(1)};
    Eigen::MatrixXd dV(2, 2);
    dV << 1, 0, 0, 1;
    const std::vector<Eigen::VectorXd> dd{Eigen::VectorXd::Zero(2)};
    const std::vector<Eigen::MatrixXd> dVs{dV};
    try {
        sld_fisher_matrix(V, diag, dd, dVs);
        FAIL() << "expected a singularity error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Singularity);
        EXPECT_NE(std::string(e.what()).find("(0,0,2)"), std::string::npos);
    }
}

TEST(qcrb, closed_form_identities) {
    for (double r = 0; r <= 2.0; r += 0.25) {
        for (double amp : {0.1, 1.0, 10.0, 100.0}) {
            EXPECT_NEAR(closed_form_entangled_qcrb(r, amp, 1) / closed_form_entangled_qcrb_lossless(r, amp), 1, 1e-12);
            EXPECT_NEAR(closed_form_separable_qcrb(r, amp, 1) / closed_form_separable_qcrb_lossless(r, amp), 1, 1e-12);
        }
    }
    EXPECT_DOUBLE_EQ(closed_form_entangled_qcrb(0, 1, 1), 0.5);
    EXPECT_NEAR(
        sensitivity_entangled(1, 100, 1) / closed_form_entangled_qcrb_lossless(1, 100),
        1 + std::pow(std::sinh(2.0), 2) / (std::exp(4.0) * 1e4), 1e-12);
    EXPECT_NEAR(closed_form_separable_qcrb(0, std::sqrt(20.0), 1), 1 / 80.0, 1e-15);
    EXPECT_THROW(closed_form_entangled_qcrb(0, 0, 0.9), Error);
    EXPECT_THROW(closed_form_separable_qcrb(0, 0, 0.9), Error);
    EXPECT_THROW(closed_form_entangled_qcrb(1, 1, 1.2), Error);
}

TEST(qcrb, separable_closed_form_is_exact) {
    for (double eta : {0.95, 0.8}) {
        for (double r : {0.3, 1.0}) {
            const double beta = 2;
            const double qfi = oracle_equal_phase_qfi(Topology::Separable, r, beta, eta, 0);
            EXPECT_NEAR(closed_form_separable_qcrb(r, beta, eta) * qfi, 1, 1e-6);
        }
    }
}

TEST(qcrb, entangled_exact_form_matches_simulation) {
    for (double eta : {0.95, 0.8}) {
        for (double r : {0.3, 1.0}) {
            const double alpha = 2, eps = 1e-6;
            const double qfi = oracle_equal_phase_qfi(Topology::Entangled, r, alpha, eta, eps);
            EXPECT_NEAR(entangled_qcrb_exact(r, alpha, eta) * qfi, 1, 1e-5);
        }
    }
}

TEST(qcrb, homodyne_respects_bound) {
    for (double eta : {1.0, 0.95, 0.9}) {
        for (double r : {0.0, 0.5, 1.0, 1.5}) {
            for (double amp : {1.0, 5.0}) {
                const double homodyne_e = sensitivity_entangled(r, amp, eta);
                EXPECT_GE(homodyne_e, closed_form_entangled_qcrb(r, amp, eta) - 1e-9);
                EXPECT_GE(homodyne_e, entangled_qcrb_exact(r, amp, eta) - 1e-9);
                EXPECT_GE(sensitivity_separable(r, amp, eta, 2), closed_form_separable_qcrb(r, amp, eta) - 1e-9);
                if (eta < 1) {
                    EXPECT_GE(homodyne_e, qfi_matrix({0, 0, r, amp, eta, 1e-6}).qcrb_avg_phase - 1e-9);
                }
            }
        }
    }
}

TEST(qcrb, ordering_sweep) {
    const std::vector<double> grid{1, 5, 20, 50};
    for (double eta : {1.0, 0.95}) {
        for (const OrderingRow &row : qcrb_ordering_sweep(eta, grid)) {
            EXPECT_TRUE(row.holds) << "eta=" << eta << " N=" << row.N;
        }
    }
}

TEST(qcrb, homodyne_over_optimized_bound_tends_to_four_thirds) {
    const double N = 100;
    const double e = solve_entangled(N, 2, 1).delta_phi_sq;
    const double e_cr = optimize_qcrb({2, 1, N, Topology::Entangled, Seeding::Single}).delta_phi_sq;
    EXPECT_NEAR(e / e_cr, 4.0 / 3.0, 2e-3);
}
