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
#include "qlstm/train.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "qlstm/error.hpp"
#include "qlstm/rng.hpp"

namespace qlstm::train {

namespace {

constexpr std::uint64_t kShuffleStream = 0x5348554646ULL;

// Runs fn(i) for i in [0, n) on up to `threads` workers; index i always lands
// in the same output slot, so results are independent of scheduling.
template <class Fn> void parallel_for(std::size_t n, unsigned threads, Fn &&fn) {
    unsigned workers = threads ? threads : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers)
                        fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            });
        }
    }
    if (error)
        std::rethrow_exception(error);
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

} // namespace

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0))
        throw ConfigError("learning rate must be positive");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw ConfigError("RMSprop alpha must be in (0, 1)");
    if (!(epsilon > 0.0))
        throw ConfigError("RMSprop epsilon must be positive");
    if (max_epochs < 0)
        throw ConfigError("max_epochs must be non-negative");
    if (window < 1)
        throw ConfigError("window must be positive");
    if (batch_size < 1)
        throw ConfigError("batch size must be positive");
}

void MetricsLog::write_csv(const std::filesystem::path &path, bool include_wall_time) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write metrics to '" + path.string() + "'");
    out << "epoch,train_loss,test_loss,wall_ms\n";
    for (const auto &r : epochs) {
        out << r.epoch << ',' << format_double(r.train_loss) << ',' << format_double(r.test_loss)
            << ',' << (include_wall_time ? format_double(std::round(r.wall_ms * 1000.0) / 1000.0)
                                         : std::string("0"))
            << '\n';
    }
    if (!out)
        throw IoError("write failed for '" + path.string() + "'");
}

double mse(std::span<const double> predictions, std::span<const double> targets) {
    if (predictions.empty() || predictions.size() != targets.size())
        throw ShapeError("mse needs equal, non-empty lengths (got " +
                         std::to_string(predictions.size()) + " and " +
                         std::to_string(targets.size()) + ")");
    double acc = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double d = predictions[i] - targets[i];
        acc += d * d;
    }
    return acc / static_cast<double>(predictions.size());
}

void rmsprop_step(std::span<double> params, std::span<const double> grads, RmspropState &state,
                  const TrainConfig &config) {
    if (params.size() != grads.size())
        throw ShapeError("rmsprop: " + std::to_string(params.size()) + " params but " +
                         std::to_string(grads.size()) + " gradients");
    if (state.step == 0) {
        state.avg_sq.resize(grads.size());
        for (std::size_t i = 0; i < grads.size(); ++i)
            state.avg_sq[i] = grads[i] * grads[i];
    } else {
        if (state.avg_sq.size() != grads.size())
            throw ShapeError("rmsprop state does not match parameter count");
        for (std::size_t i = 0; i < grads.size(); ++i)
            state.avg_sq[i] =
                config.alpha * state.avg_sq[i] + (1.0 - config.alpha) * grads[i] * grads[i];
    }
    for (std::size_t i = 0; i < params.size(); ++i)
        params[i] -= config.learning_rate * grads[i] / (std::sqrt(state.avg_sq[i]) + config.epsilon);
    ++state.step;
}

std::vector<double> predict(const model::Model &model, const data::WindowedDataset &dataset,
                            unsigned threads) {
    std::vector<double> out(dataset.size());
    parallel_for(dataset.size(), threads,
                 [&](std::size_t i) { out[i] = model::forward_window(model, dataset.inputs[i]); });
    return out;
}

TrainResult train(model::Model model, const data::WindowedDataset &dataset,
                  const TrainConfig &config, const EpochCallback &on_epoch) {
    config.validate();
    const data::Split parts = data::split(dataset);
    if (parts.train.size() == 0 || parts.test.size() == 0)
        throw DataError("training needs non-empty train and test splits (got " +
                        std::to_string(parts.train.size()) + "/" +
                        std::to_string(parts.test.size()) + ")");
    for (const auto &w : dataset.inputs)
        if (w.size() != config.window)
            throw ShapeError("dataset window length differs from config.window");

    TrainResult result{std::move(model), {}, {}};
    std::vector<double> flat = model::flatten(result.model);
    const std::size_t n_train = parts.train.size();
    std::vector<std::size_t> order(n_train);

    for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
        const auto started = std::chrono::steady_clock::now();
        std::iota(order.begin(), order.end(), std::size_t{0});
        deterministic_shuffle(std::span<std::size_t>(order),
                              derive_seed(config.seed, kShuffleStream + static_cast<std::uint64_t>(epoch)));

        double loss_sum = 0.0;
        std::vector<model::LossGrad> per_sample;
        std::vector<double> batch_grad(flat.size());
        for (std::size_t begin = 0; begin < n_train; begin += config.batch_size) {
            const std::size_t end = std::min(n_train, begin + config.batch_size);
            per_sample.assign(end - begin, {});
            parallel_for(end - begin, config.threads, [&](std::size_t k) {
                const std::size_t idx = order[begin + k];
                per_sample[k] = model::window_loss_grad(result.model, parts.train.inputs[idx],
                                                        parts.train.targets[idx], config.engine);
            });
            std::fill(batch_grad.begin(), batch_grad.end(), 0.0);
            for (const auto &s : per_sample) {
                loss_sum += s.loss;
                for (std::size_t j = 0; j < batch_grad.size(); ++j)
                    batch_grad[j] += s.grad[j];
            }
            const double inv = 1.0 / static_cast<double>(per_sample.size());
            for (auto &g : batch_grad)
                g *= inv;
            rmsprop_step(flat, batch_grad, result.optimizer, config);
            model::assign(result.model, flat);
        }

        EpochRecord rec;
        rec.epoch = epoch;
        rec.train_loss = loss_sum / static_cast<double>(n_train);
        rec.test_loss = mse(predict(result.model, parts.test, config.threads), parts.test.targets);
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                started)
                          .count();
        result.log.epochs.push_back(rec);
        if (on_epoch)
            on_epoch(result.model, result.optimizer, rec);
    }
    return result;
}

} // namespace qlstm::train
