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
#include "qlstm/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "qlstm/error.hpp"

namespace qlstm::data {

namespace {

constexpr double kPoissonTailLimit = 1e-13;
constexpr int kBesselMaxOrder = 10;
constexpr int kBesselMaxTerms = 60;

std::vector<double> uniform_grid(std::size_t n, double a, double b) {
    std::vector<double> t(n);
    const double dx = (b - a) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k)
        t[k] = a + static_cast<double>(k) * dx;
    return t;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double &out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    const auto *end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, out);
    return res.ec == std::errc{} && res.ptr == end && !s.empty();
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

struct PendulumRhs {
    double damping; // b / m
    double stiffness; // g / L
    void operator()(double theta, double omega, double &dtheta, double &domega) const {
        dtheta = omega;
        domega = -damping * omega - stiffness * std::sin(theta);
    }
};

void validate(const PendulumConfig &c) {
    if (!(c.dt > 0.0) || !std::isfinite(c.dt))
        throw ConfigError("pendulum dt must be positive");
    if (!(c.t_end > c.dt))
        throw ConfigError("pendulum t_end must exceed dt");
    if (!(c.max_step > 0.0))
        throw ConfigError("pendulum max_step must be positive");
    if (!(c.length > 0.0) || !(c.mass > 0.0))
        throw ConfigError("pendulum length and mass must be positive");
}

void validate(const PopInvConfig &c) {
    if (c.n_max < 0)
        throw ConfigError("n_max must be non-negative");
    if (!(c.mean_photon >= 0.0) || c.mean_photon > 700.0)
        throw ConfigError("mean photon number must be in [0, 700]");
    const double tail = poisson_tail_bound(c.mean_photon, c.n_max);
    if (!(tail <= kPoissonTailLimit)) {
        std::ostringstream msg;
        msg << "n_max=" << c.n_max << " truncates Poisson(" << c.mean_photon
            << ") with tail mass up to " << tail;
        throw ConfigError(msg.str());
    }
}

} // namespace

TimeSeries gen_sine(const SineConfig &config) {
    if (config.n_points < 2)
        throw ConfigError("sine needs at least 2 points");
    TimeSeries s;
    s.label = "sine";
    s.t = uniform_grid(config.n_points, config.x_start, config.x_end);
    s.values.reserve(s.t.size());
    for (double x : s.t)
        s.values.push_back(std::sin(x));
    return s;
}

double pendulum_energy(const PendulumConfig &c, double theta, double omega) {
    return 0.5 * c.mass * c.length * c.length * omega * omega +
           c.mass * c.g * c.length * (1.0 - std::cos(theta));
}

PendulumTrajectory integrate_pendulum(const PendulumConfig &c) {
    validate(c);
    const auto samples = static_cast<std::size_t>(std::llround(c.t_end / c.dt)) + 1;
    const auto substeps = static_cast<std::size_t>(std::ceil(c.dt / c.max_step - 1e-9));
    const double h = c.dt / static_cast<double>(substeps);
    const PendulumRhs rhs{c.b / c.mass, c.g / c.length};

    PendulumTrajectory out;
    out.t.reserve(samples);
    out.theta.reserve(samples);
    out.omega.reserve(samples);
    double th = c.theta0, om = c.omega0;
    for (std::size_t k = 0; k < samples; ++k) {
        if (k > 0) {
            for (std::size_t s = 0; s < substeps; ++s) {
                double k1t, k1w, k2t, k2w, k3t, k3w, k4t, k4w;
                rhs(th, om, k1t, k1w);
                rhs(th + 0.5 * h * k1t, om + 0.5 * h * k1w, k2t, k2w);
                rhs(th + 0.5 * h * k2t, om + 0.5 * h * k2w, k3t, k3w);
                rhs(th + h * k3t, om + h * k3w, k4t, k4w);
                th += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
                om += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
            }
        }
        out.t.push_back(static_cast<double>(k) * c.dt);
        out.theta.push_back(th);
        out.omega.push_back(om);
    }
    return out;
}

TimeSeries gen_pendulum(const PendulumConfig &config) {
    auto traj = integrate_pendulum(config);
    return {std::move(traj.t), std::move(traj.omega), "pendulum"};
}

double bessel_j(int order, double x) {
    if (order < 0 || order > kBesselMaxOrder)
        throw ConfigError("bessel_j supports orders 0.." + std::to_string(kBesselMaxOrder));
    if (!std::isfinite(x))
        throw NumericError("bessel_j argument must be finite");
    const double half = 0.5 * x;
    double term = 1.0;
    for (int k = 1; k <= order; ++k)
        term *= half / k;
    const double q = -half * half;
    double partial = term;
    for (int m = 0; m < kBesselMaxTerms && term != 0.0; ++m) {
        term *= q / ((m + 1.0) * (m + 1.0 + order));
        partial += term;
        if (std::abs(term) < 1e-16 * std::abs(partial))
            break;
    }
    return partial;
}

TimeSeries gen_bessel(const BesselConfig &config) {
    if (config.n_points < 2)
        throw ConfigError("bessel needs at least 2 points");
    TimeSeries s;
    s.label = "bessel";
    s.t = uniform_grid(config.n_points, 0.0, config.x_end);
    s.values.reserve(s.t.size());
    for (double x : s.t)
        s.values.push_back(bessel_j(config.order, x));
    return s;
}

double poisson_tail_bound(double mean, int n_max) {
    if (mean == 0.0)
        return 0.0;
    const double next = static_cast<double>(n_max) + 1.0;
    // Ratios w_{k+1}/w_k = mean/(k+1) <= mean/(n_max+2) for k > n_max: geometric bound.
    const double ratio = mean / (next + 1.0);
    if (ratio >= 1.0)
        return std::numeric_limits<double>::infinity();
    const double log_w = -mean + next * std::log(mean) - std::lgamma(next + 1.0);
    return std::exp(log_w) / (1.0 - ratio);
}

double population_inversion(const PopInvConfig &config, double t) {
    validate(config);
    double w = std::exp(-config.mean_photon);
    double acc = 0.0;
    for (int n = 0; n <= config.n_max; ++n) {
        acc += w * std::cos(2.0 * config.coupling * std::sqrt(n + 1.0) * t);
        w *= config.mean_photon / (n + 1.0);
    }
    return acc;
}

TimeSeries gen_population_inversion(const PopInvConfig &config) {
    validate(config);
    if (config.n_points < 2)
        throw ConfigError("population inversion needs at least 2 points");
    if (!(config.t_end > config.t_start))
        throw ConfigError("population inversion time grid must be strictly increasing");
    TimeSeries s;
    s.label = "popinv";
    s.t = uniform_grid(config.n_points, config.t_start, config.t_end);
    s.values.reserve(s.t.size());
    for (double t : s.t)
        s.values.push_back(population_inversion(config, t));
    return s;
}

TimeSeries load_csv(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    TimeSeries s;
    s.label = "csv:" + path.string();
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view row = trim(line);
        if (row.empty())
            continue;
        if (!header_seen) {
            if (row != "t,value")
                throw ParseError("expected header 't,value'", lineno);
            header_seen = true;
            continue;
        }
        const auto comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
            throw ParseError("expected two comma-separated fields", lineno);
        double t = 0.0, v = 0.0;
        if (!parse_double(row.substr(0, comma), t) || !parse_double(row.substr(comma + 1), v))
            throw ParseError("malformed number", lineno);
        if (!std::isfinite(t) || !std::isfinite(v))
            throw DataError("non-finite value at line " + std::to_string(lineno));
        s.t.push_back(t);
        s.values.push_back(v);
    }
    if (!header_seen)
        throw ParseError("missing header 't,value'", lineno + 1);
    if (s.values.empty())
        throw DataError("'" + path.string() + "' has no data rows");
    return s;
}

void write_csv(const TimeSeries &series, const std::filesystem::path &path) {
    if (series.t.size() != series.values.size())
        throw ShapeError("series time and value columns differ in length");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write '" + path.string() + "'");
    out << "t,value\n";
    for (std::size_t k = 0; k < series.values.size(); ++k)
        out << format_double(series.t[k]) << ',' << format_double(series.values[k]) << '\n';
    if (!out)
        throw IoError("write failed for '" + path.string() + "'");
}

std::pair<TimeSeries, Scaler> rescale_minmax(const TimeSeries &series) {
    if (series.values.empty())
        throw DataError("cannot rescale an empty series");
    Scaler sc{series.values.front(), series.values.front()};
    for (double v : series.values) {
        if (!std::isfinite(v))
            throw DataError("non-finite value in series");
        sc.min = std::min(sc.min, v);
        sc.max = std::max(sc.max, v);
    }
    if (!(sc.max > sc.min))
        throw DataError("constant series has a degenerate min-max range");
    TimeSeries out = series;
    for (auto &v : out.values)
        v = sc.scale(v);
    return {std::move(out), sc};
}

WindowedDataset make_windows(const TimeSeries &series, std::size_t window) {
    if (window == 0)
        throw SizeError("window length must be positive");
    if (series.size() <= window)
        throw SizeError("series of length " + std::to_string(series.size()) +
                        " is too short for window " + std::to_string(window));
    WindowedDataset ds;
    const std::size_t samples = series.size() - window;
    ds.inputs.reserve(samples);
    ds.targets.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        ds.inputs.emplace_back(series.values.begin() + static_cast<std::ptrdiff_t>(k),
                               series.values.begin() + static_cast<std::ptrdiff_t>(k + window));
        ds.targets.push_back(series.values[k + window]);
    }
    ds.split_index = samples * 67 / 100;
    return ds;
}

Split split(const WindowedDataset &dataset) {
    const std::size_t cut = dataset.split_index;
    if (cut > dataset.size())
        throw DataError("split index beyond dataset");
    Split out;
    auto fill = [&](WindowedDataset &dst, std::size_t a, std::size_t b) {
        dst.inputs.assign(dataset.inputs.begin() + static_cast<std::ptrdiff_t>(a),
                          dataset.inputs.begin() + static_cast<std::ptrdiff_t>(b));
        dst.targets.assign(dataset.targets.begin() + static_cast<std::ptrdiff_t>(a),
                           dataset.targets.begin() + static_cast<std::ptrdiff_t>(b));
        dst.split_index = dst.size();
    };
    fill(out.train, 0, cut);
    fill(out.test, cut, dataset.size());
    return out;
}

} // namespace qlstm::data
