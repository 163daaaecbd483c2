// Copyright 2026 The QLSTM Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Subcommands of the `qlstm` tool. Each returns a process exit code and
 * writes its human-readable report to `log`; library errors propagate as
 * exceptions and are mapped by exit_code_for().
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qlstm/data.hpp"
#include "qlstm/error.hpp"
#include "qlstm/models.hpp"
#include "qlstm/train.hpp"

namespace qlstm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Bad command-line input that the argument parser could not catch.
class UsageError : public Error {
  public:
    using Error::Error;
};

/// Maps a library exception onto the exit-code contract.
[[nodiscard]] int exit_code_for(const std::exception &e) noexcept;

/// Built-in series, or `csv:<path>` for a user file. Throws UsageError.
[[nodiscard]] data::TimeSeries load_experiment(const std::string &name);

/// Names accepted by load_experiment besides `csv:<path>`.
[[nodiscard]] const std::vector<std::string> &builtin_experiments();

/// Resolves a relative output path against $QLSTM_OUT_ROOT when it is set.
[[nodiscard]] std::filesystem::path resolve_output(const std::filesystem::path &path);

struct GenOptions {
    std::string experiment = "sine";
    std::filesystem::path out; ///< empty: <experiment>.csv
};

int cmd_gen(const GenOptions &opts, std::ostream &log);

struct TrainOptions {
    std::string experiment = "sine";
    std::string model = "both"; ///< qlstm, lstm or both
    std::string init = "random"; ///< random or zero
    std::uint64_t init_seed = 0; ///< 0: reuse config.seed
    train::TrainConfig config;
    std::filesystem::path out = "out";
    std::vector<int> checkpoint_epochs{1, 15, 30, 100};
    bool record_time = false;
};

/**
 * Rescales the series to [-1, 1], windows it and trains each requested
 * model. Writes metrics_<model>.csv, ckpt_<model>_epoch<N>.json for every
 * requested epoch that is reached, and ckpt_<model>_final.json.
 */
int cmd_train(const TrainOptions &opts, std::ostream &log);

struct EvalOptions {
    std::filesystem::path checkpoint;
    std::string experiment; ///< empty: the experiment stored in the checkpoint
    std::filesystem::path out; ///< empty: trace_<model>.csv next to the checkpoint
    unsigned threads = 0;
};

/**
 * Writes `t,truth,prediction,is_test`, one row per window, in the original
 * units of the series, then prints the train, test and overall MSE over
 * those rows.
 */
int cmd_eval(const EvalOptions &opts, std::ostream &log);

struct EvalSummary {
    std::size_t rows = 0;
    double train_mse = 0.0;
    double test_mse = 0.0;
    double all_mse = 0.0;
};

/// The computation behind cmd_eval, without printing.
[[nodiscard]] EvalSummary evaluate_to_csv(const EvalOptions &opts);

struct GradcheckOptions {
    std::string model = "both";
    std::uint64_t seed = 1;
    int trials = 3;
    double shift_tol = 1e-8; ///< adjoint vs parameter shift, normwise relative
    double fd_tol = 1e-4;    ///< analytic vs central difference, normwise relative
    double fd_step = 1e-4;
    /// Test hook: perturbs this analytic gradient entry before comparison.
    std::optional<std::size_t> corrupt_index;
};

/// Returns kExitNumeric and names the worst parameter index on any breach.
int cmd_gradcheck(const GradcheckOptions &opts, std::ostream &log);

} // namespace qlstm::cli
