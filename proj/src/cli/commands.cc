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

#include "gyronet/cli/commands.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "gyronet/errors.h"
#include "gyronet/mc_oracle.h"
#include "gyronet/optimizer.h"
#include "gyronet/qcrb.h"
#include "gyronet/sensitivity.h"

namespace gyronet::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kZLimit = 4;
constexpr double kLimitEta = 1 - 1e-9;

bool is_numerical(ErrorCode code) {
    return code != ErrorCode::InvalidArgument && code != ErrorCode::Io;
}

// A computed row: its cells and how it ended.
struct Row {
    std::vector<Cell> cells;
    std::string status = "ok";
    bool numerical_failure = false;
};

// Runs `body` and converts library errors into a flagged row whose numeric
// columns are NaN. `keys` are the grid columns, `width` the number of value columns.
Row guarded(std::vector<Cell> keys, size_t width, const std::function<Row()> &body) {
    try {
        Row row = body();
        row.cells.insert(row.cells.begin(), keys.begin(), keys.end());
        return row;
    } catch (const Error &e) {
        Row row;
        row.cells = std::move(keys);
        row.cells.insert(row.cells.end(), width, Cell{kNaN});
        row.status = std::string(error_code_name(e.code()));
        row.numerical_failure = is_numerical(e.code());
        return row;
    } catch (const std::exception &) {
        Row row;
        row.cells = std::move(keys);
        row.cells.insert(row.cells.end(), width, Cell{kNaN});
        row.status = "internal-error";
        row.numerical_failure = true;
        return row;
    }
}

CommandResult collect(std::vector<std::string> columns, std::vector<Row> rows, std::string_view name) {
    CommandResult out;
    columns.emplace_back("status");
    out.table.columns = std::move(columns);
    for (auto &row : rows) {
        row.cells.emplace_back(row.status);
        if (row.status != "ok") {
            ++out.flagged_rows;
        }
        if (row.numerical_failure) {
            ++out.numerical_failures;
        }
        out.table.add_row(std::move(row.cells));
    }
    std::ostringstream s;
    s << name << ": " << out.table.rows.size() << " rows, " << out.flagged_rows << " flagged";
    out.summary = s.str();
    return out;
}

struct GridPoint {
    double eta;
    int M;
    double N;
    Topology topology;
    Seeding seeding;
};

std::vector<GridPoint> network_grid(const RunSpec &spec, bool with_topology) {
    std::vector<GridPoint> grid;
    const std::vector<Topology> topologies = with_topology ? spec.topologies : std::vector{Topology::Entangled};
    for (double eta : spec.eta) {
        for (int M : spec.M) {
            for (double N : spec.N) {
                for (Topology t : topologies) {
                    for (Seeding s : spec.seedings) {
                        grid.push_back({eta, M, N, t, s});
                    }
                }
            }
        }
    }
    return grid;
}

std::vector<Cell> network_keys(const GridPoint &g, bool with_topology) {
    std::vector<Cell> keys{g.eta, int64_t{g.M}, g.N};
    if (with_topology) {
        keys.emplace_back(std::string(to_string(g.topology)));
    }
    keys.emplace_back(std::string(to_string(g.seeding)));
    return keys;
}

}  // namespace

int CommandResult::exit_code() const {
    if (numerical_failures > 0) {
        return kExitNumerical;
    }
    return flagged_rows > 0 ? kExitValidation : kExitOk;
}

CommandResult cmd_sweep(const RunSpec &spec) {
    spec.validate();
    const auto grid = network_grid(spec, true);
    std::vector<std::string> columns{
        "eta", "M", "N", "topology", "seeding", "r_opt", "amp_opt", "delta_phi_sq", "snl", "enhancement_db",
        "squeezing_db", "implicit_residual", "constraint_residual", "boundary"};
    auto rows = parallel_map<Row>(grid.size(), spec.threads, [&](size_t i) {
        const GridPoint &g = grid[i];
        return guarded(network_keys(g, true), columns.size() - 5, [&] {
            const NetworkConfig config{g.M, g.eta, g.N, g.topology, g.seeding};
            const OptimumPoint opt = solve(config);
            const SensitivityReport rep = make_report(config, {opt.r_opt, opt.amp_opt});
            Row row;
            row.cells = {opt.r_opt, opt.amp_opt, opt.delta_phi_sq, rep.snl, rep.enhancement_db, rep.squeezing_db,
                         opt.implicit_residual, opt.constraint_residual, opt.boundary};
            return row;
        });
    });
    return collect(std::move(columns), std::move(rows), "sweep");
}

CommandResult cmd_optimize(const RunSpec &spec) {
    spec.validate();
    const auto grid = network_grid(spec, false);
    std::vector<std::string> columns{
        "eta", "M", "N", "seeding", "r_ent", "amp_ent", "delta_phi_sq_ent", "r_sep", "amp_sep",
        "delta_phi_sq_sep", "snl", "ratio_R", "ratio_db"};
    auto rows = parallel_map<Row>(grid.size(), spec.threads, [&](size_t i) {
        const GridPoint &g = grid[i];
        return guarded(network_keys(g, false), columns.size() - 4, [&] {
            const OptimumPoint e = solve({g.M, g.eta, g.N, Topology::Entangled, g.seeding});
            const OptimumPoint s = solve({g.M, g.eta, g.N, Topology::Separable, g.seeding});
            const double R = sensitivity_ratio(s.delta_phi_sq, e.delta_phi_sq);
            Row row;
            row.cells = {e.r_opt, e.amp_opt, e.delta_phi_sq, s.r_opt, s.amp_opt, s.delta_phi_sq,
                         snl(g.M, g.N), R, to_db(R)};
            return row;
        });
    });
    return collect(std::move(columns), std::move(rows), "optimize");
}

CommandResult cmd_qcrb(const RunSpec &spec) {
    spec.validate();
    struct Point {
        double eta;
        double N;
    };
    std::vector<Point> grid;
    for (double eta : spec.eta) {
        for (double N : spec.N) {
            grid.push_back({eta, N});
        }
    }
    std::vector<std::string> columns{
        "eta", "M", "N", "e_cr", "r_e_cr", "amp_e_cr", "e", "r_e", "amp_e", "s_cr", "r_s_cr", "amp_s_cr", "s",
        "r_s", "amp_s", "numeric_e_cr", "numeric_gap", "ordering_holds", "ordering_strict"};
    auto rows = parallel_map<Row>(grid.size(), spec.threads, [&](size_t i) {
        const Point &g = grid[i];
        return guarded({g.eta, int64_t{2}, g.N}, columns.size() - 3, [&] {
            const OptimumPoint e_cr = optimize_qcrb({2, g.eta, g.N, Topology::Entangled, Seeding::Single});
            const OptimumPoint e = solve_entangled(g.N, 2, g.eta);
            const OptimumPoint s_cr = optimize_qcrb({2, g.eta, g.N, Topology::Separable, Seeding::Single});
            const OptimumPoint s = solve_separable(g.N, 2, g.eta);
            const double a = e_cr.delta_phi_sq, b = e.delta_phi_sq, c = s_cr.delta_phi_sq, d = s.delta_phi_sq;
            const bool holds = a <= b && b <= c && c <= d;
            const bool strict = a < b && b < c && c < d;

            // Numeric QFI at the entangled QCRB optimum; eta = 1 is approached from below.
            const ParamPoint p{0, 0, e_cr.r_opt, e_cr.amp_opt, std::min(g.eta, kLimitEta), 1e-6};
            const double numeric = qfi_matrix(p).qcrb_avg_phase;
            const double gap = std::abs(numeric - a) / a;
            const double gap_tol = g.eta == 1 ? 1e-4 : 1e-3;

            Row row;
            row.cells = {a, e_cr.r_opt, e_cr.amp_opt, b, e.r_opt, e.amp_opt, c, s_cr.r_opt, s_cr.amp_opt, d,
                         s.r_opt, s.amp_opt, numeric, gap, holds, strict};
            if (!holds) {
                row.status = "ordering-violation";
            } else if (!(gap < gap_tol)) {
                row.status = "numeric-mismatch";
            }
            return row;
        });
    });
    return collect(std::move(columns), std::move(rows), "qcrb");
}

CommandResult cmd_mc_verify(const RunSpec &spec) {
    spec.validate();
    std::vector<GridPoint> grid;
    std::vector<double> r_of;
    for (Topology t : spec.topologies) {
        for (Seeding s : spec.seedings) {
            for (int M : spec.M) {
                for (double r : spec.r) {
                    for (double eta : spec.eta) {
                        grid.push_back({eta, M, 0, t, s});
                        r_of.push_back(r);
                    }
                }
            }
        }
    }
    std::vector<std::string> columns{
        "topology", "seeding", "M", "r", "amp", "eta", "samples", "row_seed", "slope_hat", "slope_std_error",
        "variance_hat", "delta_phi_sq_hat", "std_error", "analytic", "z_score", "pass"};
    auto rows = parallel_map<Row>(grid.size(), 1, [&](size_t i) {
        const GridPoint &g = grid[i];
        const uint64_t row_seed = splitmix64(spec.seed ^ static_cast<uint64_t>(i));
        std::vector<Cell> keys{
            std::string(to_string(g.topology)), std::string(to_string(g.seeding)), int64_t{g.M}, r_of[i], spec.amp,
            g.eta, spec.samples, std::to_string(row_seed)};
        return guarded(keys, columns.size() - keys.size(), [&] {
            McRun run;
            run.n_samples = spec.samples;
            run.seed = row_seed;
            const McEstimate est =
                estimate_sensitivity_mc({g.M, g.eta, 1, g.topology, g.seeding}, {r_of[i], spec.amp}, run);
            const bool pass = std::abs(est.z_score) < kZLimit;
            Row row;
            row.cells = {est.slope_hat,        est.slope_std_error, est.variance_hat, est.delta_phi_sq_hat,
                         est.std_error,        est.analytic,        est.z_score,      pass};
            if (!pass) {
                row.status = "z-exceeds-4";
            }
            return row;
        });
    });
    CommandResult out = collect(std::move(columns), std::move(rows), "mc-verify");
    out.summary += out.flagged_rows == 0 ? ", overall PASS" : ", overall FAIL";
    return out;
}

CommandResult cmd_ratio_peak(const RunSpec &spec) {
    spec.validate();
    struct Point {
        double eta;
        int M;
    };
    std::vector<Point> grid;
    for (double eta : spec.eta) {
        for (int M : spec.M) {
            grid.push_back({eta, M});
        }
    }
    std::vector<std::string> columns{
        "eta", "M", "N_peak", "R_peak", "r_at_peak", "squeezing_db_at_peak", "enhancement_db", "snl_over_entangled",
        "boundary"};
    auto rows = parallel_map<Row>(grid.size(), spec.threads, [&](size_t i) {
        const Point &g = grid[i];
        return guarded({g.eta, int64_t{g.M}}, columns.size() - 2, [&] {
            const RatioPeak p = find_ratio_peak(g.M, g.eta);
            Row row;
            row.cells = {p.N_peak, p.R_peak, p.r_at_peak, squeezing_db(p.r_at_peak), p.enhancement_db_vs_snl,
                         p.snl_over_entangled, p.boundary};
            if (p.boundary) {
                row.status = "boundary-peak";
            }
            return row;
        });
    });
    return collect(std::move(columns), std::move(rows), "ratio-peak");
}

CommandResult cmd_report(const RunSpec &spec) {
    spec.validate();
    const auto grid = network_grid(spec, true);
    const GyroGeometry geom{spec.area, spec.wavelength};
    std::vector<std::string> columns{
        "eta", "M", "N", "topology", "seeding", "r_opt", "amp_opt", "delta_phi_sq", "delta_phi", "snl", "ratio_R",
        "enhancement_db", "squeezing_db", "area", "wavelength", "light_speed", "angular_velocity"};
    auto rows = parallel_map<Row>(grid.size(), spec.threads, [&](size_t i) {
        const GridPoint &g = grid[i];
        return guarded(network_keys(g, true), columns.size() - 5, [&] {
            const NetworkConfig config{g.M, g.eta, g.N, g.topology, g.seeding};
            const OptimumPoint opt = solve(config);
            const SensitivityReport rep = optimized_report(config);
            const double dphi = std::sqrt(rep.delta_phi_sq);
            Row row;
            row.cells = {opt.r_opt,        opt.amp_opt,      rep.delta_phi_sq, dphi,
                         rep.snl,          rep.ratio_R,      rep.enhancement_db, rep.squeezing_db,
                         geom.area,        geom.wavelength,  geom.light_speed, angular_velocity(dphi, geom)};
            return row;
        });
    });
    return collect(std::move(columns), std::move(rows), "report");
}

CommandResult run_command(const RunSpec &spec) {
    switch (spec.command) {
        case Command::Sweep:
            return cmd_sweep(spec);
        case Command::Optimize:
            return cmd_optimize(spec);
        case Command::Qcrb:
            return cmd_qcrb(spec);
        case Command::McVerify:
            return cmd_mc_verify(spec);
        case Command::RatioPeak:
            return cmd_ratio_peak(spec);
        case Command::Report:
            return cmd_report(spec);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown command");
}

void write_result(const RunSpec &spec, const CommandResult &result) {
    const std::string path = spec.resolved_output_path();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
    }
    if (spec.format == OutputFormat::Csv) {
        write_csv(out, result.table);
    } else {
        const nlohmann::json metadata{
            {"tool", "gyronet"},
            {"version", std::string(kToolVersion)},
            {"seed", spec.seed},
            {"spec", spec.to_json()},
            {"flagged_rows", result.flagged_rows},
        };
        out << table_to_json(result.table, metadata).dump(2) << '\n';
    }
    out.flush();
    if (!out) {
        throw Error(ErrorCode::Io, "failed writing '" + path + "'");
    }
}

int run_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunSpec spec;
    try {
        ParsedArgs parsed = parse_command_line(args);
        if (!parsed.spec) {
            (parsed.exit_code == 0 ? out : err) << parsed.message;
            return parsed.exit_code;
        }
        spec = std::move(*parsed.spec);
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::Io ? kExitIo : kExitValidation;
    }

    CommandResult result;
    try {
        result = run_command(spec);
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return is_numerical(e.code()) ? kExitNumerical : kExitValidation;
    }
    try {
        write_result(spec, result);
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    out << result.summary << " -> " << spec.resolved_output_path() << '\n';
    for (size_t i = 0; i < result.table.rows.size(); ++i) {
        const auto &status = std::get<std::string>(result.table.rows[i].back());
        if (status != "ok") {
            err << "flagged row " << i << ": " << status << '\n';
        }
    }
    return result.exit_code();
}

}  // namespace gyronet::cli
