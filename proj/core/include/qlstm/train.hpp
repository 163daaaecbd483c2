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
 * RMSprop optimizer, mini-batch training loop and loss metrics.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "qlstm/data.hpp"
#include "qlstm/models.hpp"
#include "qlstm/vqc.hpp"

namespace qlstm::train {

struct TrainConfig {
    double learning_rate = 0.01;
    double alpha = 0.99; ///< smoothing constant of E[g^2]
    double epsilon = 1e-8;
    int max_epochs = 100;
    std::size_t window = data::kWindow;
    std::size_t batch_size = 16;
    std::uint64_t seed = 1;
    vqc::GradEngine engine = vqc::GradEngine::adjoint;
    /// Worker threads for per-sample gradients; 0 picks hardware concurrency.
    /// Results never depend on this value.
    unsigned threads = 0;

    /// Throws ConfigError on out-of-range hyperparameters.
    void validate() const;
};

struct RmspropState {
    std::vector<double> avg_sq; ///< E[g^2] per parameter
    std::uint64_t step = 0;
};

struct EpochRecord {
    int epoch = 0;
    double train_loss = 0.0;
    double test_loss = 0.0;
    double wall_ms = 0.0;
};

struct MetricsLog {
    std::vector<EpochRecord> epochs;

    /**
     * CSV `epoch,train_loss,test_loss,wall_ms` with shortest round-trip
     * formatting. Wall time is written as 0 unless `include_wall_time`, so
     * that reruns with the same seed produce byte-identical files.
     */
    void write_csv(const std::filesystem::path &path, bool include_wall_time = false) const;
};

/// Mean squared difference. Throws ShapeError on empty or mismatched input.
[[nodiscard]] double mse(std::span<const double> predictions, std::span<const double> targets);

/**
 * E[g^2]_t = alpha E[g^2]_{t-1} + (1 - alpha) g_t^2, with E[g^2]_0 = g_0^2 on
 * the first step, then theta -= eta g / (sqrt(E[g^2]_t) + eps).
 */
void rmsprop_step(std::span<double> params, std::span<const double> grads, RmspropState &state,
                  const TrainConfig &config);

/// One prediction per window, evaluated in dataset order.
[[nodiscard]] std::vector<double> predict(const model::Model &model,
                                          const data::WindowedDataset &dataset,
                                          unsigned threads = 0);

struct TrainResult {
    model::Model model;
    RmspropState optimizer;
    MetricsLog log;
};

/// Called after every epoch with the updated model.
using EpochCallback = std::function<void(const model::Model &, const RmspropState &,
                                         const EpochRecord &)>;

/**
 * Trains on dataset[0, split_index) and evaluates on the rest after every
 * epoch. Each epoch shuffles the training samples with a generator seeded
 * from (config.seed, epoch), averages gradients over each mini-batch and
 * applies one RMSprop step per batch. The logged train loss is the mean
 * per-sample loss seen during the epoch.
 */
[[nodiscard]] TrainResult train(model::Model model, const data::WindowedDataset &dataset,
                                const TrainConfig &config, const EpochCallback &on_epoch = {});

} // namespace qlstm::train
