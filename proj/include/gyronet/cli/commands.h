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

#ifndef GYRONET_CLI_COMMANDS_H
#define GYRONET_CLI_COMMANDS_H

#include <functional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "gyronet/cli/run_spec.h"
#include "gyronet/cli/table.h"

namespace gyronet::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitIo = 2,
    kExitNumerical = 3,
};

struct CommandResult {
    Table table;
    /// Rows whose status is not "ok".
    int flagged_rows = 0;
    /// Rows that failed with a numerical error.
    int numerical_failures = 0;
    std::string summary;

    /// 3 if any numerical failure, else 1 if any flagged row, else 0.
    int exit_code() const;
};

// Each command emits one row per grid point with a trailing "status" column
// ("ok", an error-code name, or a flag such as "ordering-violation").

/// Rows (eta, M, N, topology, seeding): optimized probe and sensitivity.
CommandResult cmd_sweep(const RunSpec &spec);
/// Rows (eta, M, N, seeding): both topologies and their ratio.
CommandResult cmd_optimize(const RunSpec &spec);
/// Rows (eta, N) for M = 2: optimized QCRBs and homodyne sensitivities, the
/// ordering check and a numeric-QFI cross-check of the entangled QCRB.
CommandResult cmd_qcrb(const RunSpec &spec);
/// Rows (topology, seeding, M, r, eta): Monte Carlo estimate and z-score.
CommandResult cmd_mc_verify(const RunSpec &spec);
/// Rows (eta, M): peak of the separable/entangled ratio over N.
CommandResult cmd_ratio_peak(const RunSpec &spec);
/// Rows (eta, M, N, topology, seeding): optimized report with angular velocity.
CommandResult cmd_report(const RunSpec &spec);

CommandResult run_command(const RunSpec &spec);

/// Writes the table as CSV or JSON (with metadata). Throws Io on failure.
void write_result(const RunSpec &spec, const CommandResult &result);

/// Full program: parse, run, write. Returns the process exit code.
int run_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Evaluates fn(0..n-1) on up to `threads` workers (0 = hardware
/// concurrency) and returns the results in index order.
template <typename T>
std::vector<T> parallel_map(size_t n, int threads, const std::function<T(size_t)> &fn) {
    std::vector<T> results(n);
    size_t workers = threads > 0 ? static_cast<size_t>(threads) : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) {
            results[i] = fn(i);
        }
        return results;
    }
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += workers) {
                results[i] = fn(i);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    return results;
}

}  // namespace gyronet::cli

#endif
