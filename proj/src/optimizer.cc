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

#include "gyronet/optimizer.h"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gyronet/errors.h"
#include "gyronet/qcrb.h"

namespace gyronet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kRootScanCells = 512;
constexpr int kMinScanCells = 400;
constexpr double kGolden = 0.6180339887498949;

double budget_after_loss(const NetworkConfig &config) {
    return config.topology == Topology::Entangled ? config.M * config.N : config.N;
}

// Objective with the amplitude eliminated; +inf where the probe degenerates.
double constrained_objective(
    const NetworkConfig &config, const std::function<double(double, double)> &objective, double r) {
    try {
        const double v = objective(r, constrained_amplitude(config, r));
        return std::isfinite(v) ? v : kInf;
    } catch (const Error &) {
        return kInf;
    }
}

// d ln f / dr by a fourth-order central difference.
double log_derivative(const std::function<double(double)> &f, double r, double h) {
    const double f0 = f(r);
    const double d = (-f(r + 2 * h) + 8 * f(r + h) - 8 * f(r - h) + f(r - 2 * h)) / (12 * h);
    return d / f0;
}

template <typename F>
double bisect(F &&g, double lo, double hi, double g_lo) {
    for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double g_mid = g(mid);
        if (g_mid == 0) {
            return mid;
        }
        if ((g_mid < 0) == (g_lo < 0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

bool check_local_min(const std::function<double(double)> &f, double r, double r_hi) {
    const double h = 1e-4 * std::max(r, 1e-2);
    const double f0 = f(r);
    const double tol = 1e-13 * std::abs(f0);
    const bool left_ok = r - h < 0 || f(r - h) >= f0 - tol;
    const bool right_ok = r + h > r_hi || f(r + h) >= f0 - tol;
    return left_ok && right_ok;
}

OptimumPoint finish(const NetworkConfig &config, double r, double amp, double value) {
    OptimumPoint out;
    out.r_opt = r;
    out.amp_opt = amp;
    out.delta_phi_sq = value;
    out.constraint_residual = photons_per_sensor(config, {r, amp}) - config.N;
    return out;
}

OptimumPoint clamp_to_coherent(const NetworkConfig &config, const std::function<double(double, double)> &objective) {
    const double amp = constrained_amplitude(config, 0);
    OptimumPoint out = finish(config, 0, amp, objective(0, amp));
    out.boundary = true;
    return out;
}

OptimumPoint solve_single_seed(const NetworkConfig &config) {
    config.validate();
    const double budget = budget_after_loss(config);
    const double eta = config.eta;
    const double r_hi = max_squeezing(config);
    auto homodyne = [&](double r, double amp) { return sensitivity(config, {r, amp}); };
    if (r_hi < 1e-9) {
        return clamp_to_coherent(config, homodyne);
    }

    auto residual = [&](double r) { return stationarity_residual(r, budget, eta); };
    OptimumPoint best;
    bool found = false;
    double r_prev = 0;
    double g_prev = residual(0);
    for (int i = 1; i <= kRootScanCells; ++i) {
        const double r_cur = r_hi * i / kRootScanCells;
        const double g_cur = residual(r_cur);
        if (g_prev == 0 || (g_prev < 0) != (g_cur < 0)) {
            const double root = g_prev == 0 ? r_prev : bisect(residual, r_prev, r_cur, g_prev);
            double alpha;
            try {
                alpha = stationary_amplitude(root, budget, eta);
            } catch (const Error &) {
                r_prev = r_cur;
                g_prev = g_cur;
                continue;
            }
            if (alpha > 0) {
                const double value = homodyne(root, alpha);
                if (!found || value < best.delta_phi_sq) {
                    best = finish(config, root, alpha, value);
                    best.implicit_residual = residual(root);
                    found = true;
                }
            }
        }
        r_prev = r_cur;
        g_prev = g_cur;
    }
    if (!found) {
        throw Error(
            ErrorCode::NoRoot, "stationarity condition has no admissible root on r in [0, " +
                                   std::to_string(r_hi) + "] (residuals " + std::to_string(residual(0)) + ", " +
                                   std::to_string(residual(r_hi)) + ")");
    }
    auto f = [&](double r) { return constrained_objective(config, homodyne, r); };
    best.local_min_verified = check_local_min(f, best.r_opt, r_hi);
    return best;
}

}  // namespace

double stationarity_polynomial(double u, double budget, double eta) {
    const double X = budget;
    return eta * u * (2 * (X - 1) * (2 * u - u * u) - 6 * X + std::pow(u, 4) + 1) - 4 * X * u * u -
           (u - 1) * (u - 1) * (3 * u + std::pow(u, 3) - 2) * eta * eta;
}

double stationarity_residual(double r, double budget, double eta) {
    const double u = std::exp(2 * r);
    const double X = budget;
    const double scale = eta * u * (std::abs(2 * (X - 1)) * (2 * u + u * u) + 6 * X + std::pow(u, 4) + 1) +
                         4 * X * u * u + (u - 1) * (u - 1) * (3 * u + std::pow(u, 3) + 2) * eta * eta;
    return stationarity_polynomial(u, budget, eta) / scale;
}

double stationary_amplitude(double r, double budget, double eta) {
    const double u = std::exp(2 * r);
    double radicand = 2 * u * (budget - eta * std::cosh(2 * r) + eta) / (eta * (u * u + 1));
    if (radicand < 0) {
        if (radicand < -1e-12 * budget) {
            throw Error(
                ErrorCode::InfeasibleConstraint, "negative amplitude radicand at r=" + std::to_string(r));
        }
        radicand = 0;
    }
    return std::sqrt(radicand);
}

OptimumPoint minimize_over_squeezing(
    const NetworkConfig &config, const std::function<double(double r, double amp)> &objective) {
    config.validate();
    const double r_hi = max_squeezing(config) * (1 - 1e-12);
    if (r_hi < 1e-9) {
        return clamp_to_coherent(config, objective);
    }
    auto f = [&](double r) { return constrained_objective(config, objective, r); };

    int best_i = 0;
    double best_f = kInf;
    for (int i = 0; i <= kMinScanCells; ++i) {
        const double v = f(r_hi * i / kMinScanCells);
        if (v < best_f) {
            best_f = v;
            best_i = i;
        }
    }
    if (!std::isfinite(best_f)) {
        throw Error(ErrorCode::InfeasibleConstraint, "objective is not finite anywhere on the squeezing range");
    }
    double lo = r_hi * std::max(best_i - 1, 0) / kMinScanCells;
    double hi = r_hi * std::min(best_i + 1, kMinScanCells) / kMinScanCells;

    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > 1e-10 * std::max(1.0, hi)) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = f(x2);
        }
    }
    double r = 0.5 * (lo + hi);

    const double h = 1e-3 * std::max(r, 1e-2);
    const bool interior = r - 2 * h > 0 && r + 2 * h < r_hi;
    double residual = std::numeric_limits<double>::quiet_NaN();
    if (interior) {
        // Polish on the stationarity condition itself.
        auto g = [&](double x) { return log_derivative(f, x, h); };
        const double a = std::max(r - 1e-6, 2 * h);
        const double b = std::min(r + 1e-6, r_hi - 2 * h);
        const double ga = g(a);
        const double gb = g(b);
        if ((ga < 0) != (gb < 0)) {
            r = bisect(g, a, b, ga);
        }
        residual = g(r);
    }

    const double amp = constrained_amplitude(config, r);
    OptimumPoint out = finish(config, r, amp, objective(r, amp));
    out.implicit_residual = residual;
    out.boundary = !interior;
    out.local_min_verified = check_local_min(f, r, r_hi);
    return out;
}

OptimumPoint solve_entangled(double N, int M, double eta) {
    return solve_single_seed({M, eta, N, Topology::Entangled, Seeding::Single});
}

OptimumPoint solve_separable(double N, int M, double eta) {
    return solve_single_seed({M, eta, N, Topology::Separable, Seeding::Single});
}

OptimumPoint solve_double_seed(const NetworkConfig &config) {
    if (config.seeding != Seeding::Double) {
        throw Error(ErrorCode::InvalidArgument, "solve_double_seed needs a double-seeded configuration");
    }
    return minimize_over_squeezing(config, [&](double r, double amp) { return sensitivity(config, {r, amp}); });
}

OptimumPoint solve(const NetworkConfig &config) {
    if (config.seeding == Seeding::Double) {
        return solve_double_seed(config);
    }
    return solve_single_seed(config);
}

OptimumPoint optimize_qcrb(const NetworkConfig &config) {
    if (config.seeding != Seeding::Single) {
        throw Error(ErrorCode::InvalidArgument, "QCRB closed forms cover single-seeded amplifiers only");
    }
    const double eta = config.eta;
    if (config.topology == Topology::Entangled) {
        return minimize_over_squeezing(
            config, [eta](double r, double amp) { return closed_form_entangled_qcrb(r, amp, eta); });
    }
    return minimize_over_squeezing(
        config, [eta](double r, double amp) { return closed_form_separable_qcrb(r, amp, eta); });
}

double optimized_ratio(double N, int M, double eta) {
    return sensitivity_ratio(solve_separable(N, M, eta).delta_phi_sq, solve_entangled(N, M, eta).delta_phi_sq);
}

RatioPeak find_ratio_peak(int M, double eta, double N_lo, double N_hi) {
    if (!(N_lo > 0) || !(N_hi > N_lo)) {
        throw Error(ErrorCode::InvalidArgument, "ratio-peak search needs 0 < N_lo < N_hi");
    }
    NetworkConfig{M, eta, N_lo, Topology::Entangled, Seeding::Single}.validate();

    constexpr int kGrid = 96;
    const double log_lo = std::log(N_lo);
    const double log_hi = std::log(N_hi);
    auto R_of_log = [&](double x) { return optimized_ratio(std::exp(x), M, eta); };

    int best_i = 0;
    double best_R = -kInf;
    for (int i = 0; i <= kGrid; ++i) {
        const double v = R_of_log(log_lo + (log_hi - log_lo) * i / kGrid);
        if (v > best_R) {
            best_R = v;
            best_i = i;
        }
    }

    RatioPeak out;
    double x_best = log_lo + (log_hi - log_lo) * best_i / kGrid;
    if (best_i == 0 || best_i == kGrid) {
        out.boundary = true;
    } else {
        double lo = log_lo + (log_hi - log_lo) * (best_i - 1) / kGrid;
        double hi = log_lo + (log_hi - log_lo) * (best_i + 1) / kGrid;
        double x1 = hi - kGolden * (hi - lo);
        double x2 = lo + kGolden * (hi - lo);
        double f1 = R_of_log(x1);
        double f2 = R_of_log(x2);
        while (hi - lo > 1e-9) {
            if (f1 >= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - kGolden * (hi - lo);
                f1 = R_of_log(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + kGolden * (hi - lo);
                f2 = R_of_log(x2);
            }
        }
        x_best = 0.5 * (lo + hi);
    }

    out.N_peak = std::exp(x_best);
    const OptimumPoint ent = solve_entangled(out.N_peak, M, eta);
    const OptimumPoint sep = solve_separable(out.N_peak, M, eta);
    out.R_peak = sensitivity_ratio(sep.delta_phi_sq, ent.delta_phi_sq);
    out.r_at_peak = ent.r_opt;
    out.snl_over_entangled = snl(M, out.N_peak) / ent.delta_phi_sq;
    out.enhancement_db_vs_snl = to_db(out.snl_over_entangled);
    return out;
}

SensitivityReport optimized_report(const NetworkConfig &config) {
    const OptimumPoint opt = solve(config);
    NetworkConfig ent = config;
    ent.topology = Topology::Entangled;
    NetworkConfig sep = config;
    sep.topology = Topology::Separable;
    SensitivityReport rep = make_report(config, {opt.r_opt, opt.amp_opt});
    rep.ratio_R = sensitivity_ratio(solve(sep).delta_phi_sq, solve(ent).delta_phi_sq);
    return rep;
}

}  // namespace gyronet
