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
 * Synthetic series generators, CSV ingestion, min-max rescaling and
 * sliding-window datasets.
 *
 * CSV format: header `t,value`, one sample per row in time order.
 */
#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qlstm::data {

/// Default window length (past samples per prediction).
inline constexpr std::size_t kWindow = 4;

struct TimeSeries {
    std::vector<double> t;
    std::vector<double> values;
    std::string label;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

struct SineConfig {
    std::size_t n_points = 200;
    double x_start = 0.0;
    double x_end = 20.0;
};

struct PendulumConfig {
    double g = 9.81;
    double b = 0.15; ///< damping
    double length = 1.0;
    double mass = 1.0;
    double theta0 = 0.0;
    double omega0 = 3.0;
    double t_end = 10.0;
    double dt = 0.05;       ///< sampling interval
    double max_step = 1e-3; ///< RK4 substeps are no longer than this
};

struct BesselConfig {
    int order = 2;
    std::size_t n_points = 300;
    double x_end = 20.0;
};

struct PopInvConfig {
    double coupling = 1.0;
    double mean_photon = 40.0;
    int n_max = 100;
    std::size_t n_points = 500;
    double t_start = 0.0;
    double t_end = 5.0;
};

/// values[k] = sin(x_start + k * dx) on a uniform grid including both ends.
[[nodiscard]] TimeSeries gen_sine(const SineConfig &config = {});

/// Angular velocity of the damped pendulum, RK4 with internal substeps.
[[nodiscard]] TimeSeries gen_pendulum(const PendulumConfig &config = {});

/// Total mechanical energy 1/2 m L^2 w^2 + m g L (1 - cos theta).
[[nodiscard]] double pendulum_energy(const PendulumConfig &config, double theta, double omega);

struct PendulumTrajectory {
    std::vector<double> t, theta, omega;
};

/// Full (theta, omega) trajectory sampled every config.dt.
[[nodiscard]] PendulumTrajectory integrate_pendulum(const PendulumConfig &config);

/// Bessel function of the first kind of integer order 0..10 by power series.
[[nodiscard]] double bessel_j(int order, double x);

[[nodiscard]] TimeSeries gen_bessel(const BesselConfig &config = {});

/// Upper bound on the Poisson mass beyond n_max.
[[nodiscard]] double poisson_tail_bound(double mean, int n_max);

/// D(t) = sum_{n<=n_max} e^{-nbar} nbar^n / n! cos(2 g sqrt(n+1) t).
[[nodiscard]] double population_inversion(const PopInvConfig &config, double t);

[[nodiscard]] TimeSeries gen_population_inversion(const PopInvConfig &config = {});

/// Reads a `t,value` CSV. Throws IoError, ParseError (with line) or DataError.
[[nodiscard]] TimeSeries load_csv(const std::filesystem::path &path);

/// Writes `t,value` rows with round-trip precision.
void write_csv(const TimeSeries &series, const std::filesystem::path &path);

struct Scaler {
    double min = -1.0;
    double max = 1.0;

    [[nodiscard]] double scale(double x) const noexcept {
        return 2.0 * (x - min) / (max - min) - 1.0;
    }
    [[nodiscard]] double unscale(double y) const noexcept {
        return (y + 1.0) * (max - min) / 2.0 + min;
    }
};

/// Maps the series onto [-1, 1]. Throws DataError for a constant series.
[[nodiscard]] std::pair<TimeSeries, Scaler> rescale_minmax(const TimeSeries &series);

struct WindowedDataset {
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    std::size_t split_index = 0;

    [[nodiscard]] std::size_t size() const noexcept { return targets.size(); }
};

/// inputs[k] = values[k, k+N), targets[k] = values[k+N]; split at floor(0.67 * samples).
[[nodiscard]] WindowedDataset make_windows(const TimeSeries &series, std::size_t window = kWindow);

struct Split {
    WindowedDataset train;
    WindowedDataset test;
};

/// Temporal split at dataset.split_index; no shuffling.
[[nodiscard]] Split split(const WindowedDataset &dataset);

} // namespace qlstm::data
