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
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include "commands.hpp"
#include "qlstm/checkpoint.hpp"
#include "qlstm/circuit.hpp"
#include "qlstm/rng.hpp"
#include "qlstm/vqc.hpp"

namespace qlstm::cli {

namespace {

std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, r.ptr};
}

std::vector<model::ModelKind> parse_models(const std::string &name) {
    if (name == "both")
        return {model::ModelKind::qlstm, model::ModelKind::lstm};
    return {model::parse_model_kind(name)};
}

model::Model initial_model(model::ModelKind kind, const std::string &init, std::uint64_t seed) {
    model::Model m = kind == model::ModelKind::qlstm ? model::Model{model::QlstmParams::init(seed)}
                                                     : model::Model{model::LstmParams::init(seed)};
    if (init == "zero") {
        const std::vector<double> zeros(model::param_count(m), 0.0);
        model::assign(m, zeros);
    } else if (init != "random") {
        throw UsageError("unknown --init '" + init + "' (expected random or zero)");
    }
    return m;
}

void ensure_parent(const std::filesystem::path &p) {
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
}

struct Comparison {
    double rel = 0.0;
    std::size_t worst = 0;
};

// max|a-b| / max(|b|_inf, floor), plus the index of the largest difference.
Comparison compare(std::span<const double> a, std::span<const double> b) {
    Comparison c;
    double diff = -1.0, scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (!(d <= diff)) {
            diff = d;
            c.worst = i;
        }
        scale = std::max(scale, std::abs(b[i]));
    }
    c.rel = diff / std::max(scale, 1e-12);
    return c;
}

std::vector<double> central_difference(const model::Model &m, std::span<const double> window,
                                       double target, double h) {
    auto flat = model::flatten(m);
    std::vector<double> g(flat.size());
    model::Model probe = m;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        const double keep = flat[i];
        flat[i] = keep + h;
        model::assign(probe, flat);
        const double up = model::forward_window(probe, window) - target;
        flat[i] = keep - h;
        model::assign(probe, flat);
        const double down = model::forward_window(probe, window) - target;
        flat[i] = keep;
        g[i] = (up * up - down * down) / (2.0 * h);
    }
    return g;
}

struct CheckReport {
    bool ok = true;
    double worst_rel = 0.0;
    std::size_t worst_index = 0;
    std::string worst_check;

    void record(const std::string &name, const Comparison &c, double tol, std::ostream &log) {
        const bool pass = c.rel <= tol;
        log << (pass ? "  ok   " : "  FAIL ") << name << ": rel=" << c.rel << " (tol " << tol
            << ", worst index " << c.worst << ")\n";
        if (!pass && (ok || c.rel > worst_rel)) {
            worst_rel = c.rel;
            worst_index = c.worst;
            worst_check = name;
        }
        ok = ok && pass;
    }
};

} // namespace

int cmd_gen(const GenOptions &opts, std::ostream &log) {
    const auto series = load_experiment(opts.experiment);
    std::filesystem::path out = opts.out;
    if (out.empty())
        out = opts.experiment.rfind("csv:", 0) == 0 ? "series.csv" : opts.experiment + ".csv";
    out = resolve_output(out);
    ensure_parent(out);
    data::write_csv(series, out);
    log << "wrote " << series.size() << " rows to " << out.string() << '\n';
    return kExitOk;
}

int cmd_train(const TrainOptions &opts, std::ostream &log) {
    opts.config.validate();
    const auto kinds = parse_models(opts.model);
    for (int e : opts.checkpoint_epochs)
        if (e < 1)
            throw UsageError("checkpoint epochs must be positive");
    const std::set<int> ckpt_epochs(opts.checkpoint_epochs.begin(), opts.checkpoint_epochs.end());

    const auto series = load_experiment(opts.experiment);
    const auto [scaled, scaler] = data::rescale_minmax(series);
    const auto dataset = data::make_windows(scaled, opts.config.window);
    const auto out_dir = resolve_output(opts.out);
    std::filesystem::create_directories(out_dir);
    const std::uint64_t init_seed = opts.init_seed != 0 ? opts.init_seed : opts.config.seed;

    log << "experiment " << opts.experiment << ": " << dataset.size() << " windows, "
        << dataset.split_index << " train / " << dataset.size() - dataset.split_index
        << " test\n";

    for (const auto kind : kinds) {
        const std::string name(model::to_string(kind));
        auto checkpoint = [&](const model::Model &m, const train::RmspropState &st, int epoch,
                              const std::filesystem::path &path) {
            train::save_checkpoint({m, st, opts.config, scaler, epoch, opts.experiment}, path);
        };
        const auto on_epoch = [&](const model::Model &m, const train::RmspropState &st,
                                  const train::EpochRecord &rec) {
            log << '[' << name << "] epoch " << rec.epoch << " train_loss=" << fmt(rec.train_loss)
                << " test_loss=" << fmt(rec.test_loss) << '\n';
            if (ckpt_epochs.contains(rec.epoch))
                checkpoint(m, st, rec.epoch,
                           out_dir / ("ckpt_" + name + "_epoch" + std::to_string(rec.epoch) +
                                      ".json"));
        };
        const auto result = train::train(initial_model(kind, opts.init, init_seed), dataset,
                                         opts.config, on_epoch);
        const auto metrics = out_dir / ("metrics_" + name + ".csv");
        result.log.write_csv(metrics, opts.record_time);
        checkpoint(result.model, result.optimizer, opts.config.max_epochs,
                   out_dir / ("ckpt_" + name + "_final.json"));
        log << '[' << name << "] wrote " << metrics.string() << '\n';
    }
    return kExitOk;
}

EvalSummary evaluate_to_csv(const EvalOptions &opts) {
    const auto ck = train::load_checkpoint(opts.checkpoint);
    const std::string experiment = opts.experiment.empty() ? ck.experiment : opts.experiment;
    if (experiment.empty())
        throw UsageError("checkpoint names no experiment; pass --experiment");
    const auto series = load_experiment(experiment);
    if (!(ck.scaler.max > ck.scaler.min))
        throw SchemaError("checkpoint scaler has an empty range");

    data::TimeSeries scaled = series;
    for (double &v : scaled.values)
        v = ck.scaler.scale(v);
    const auto dataset = data::make_windows(scaled, ck.config.window);
    const auto predictions = train::predict(ck.model, dataset, opts.threads);

    std::filesystem::path out = opts.out;
    if (out.empty())
        out = opts.checkpoint.parent_path() /
              ("trace_" + std::string(model::to_string(model::kind_of(ck.model))) + ".csv");
    else
        out = resolve_output(out);
    ensure_parent(out);
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file)
        throw IoError("cannot write '" + out.string() + "'");

    std::vector<double> truth, pred;
    file << "t,truth,prediction,is_test\n";
    for (std::size_t k = 0; k < dataset.size(); ++k) {
        const std::size_t idx = k + ck.config.window;
        truth.push_back(series.values[idx]);
        pred.push_back(ck.scaler.unscale(predictions[k]));
        file << fmt(series.t[idx]) << ',' << fmt(truth.back()) << ',' << fmt(pred.back()) << ','
             << (k >= dataset.split_index ? 1 : 0) << '\n';
    }
    if (!file)
        throw IoError("write failed for '" + out.string() + "'");

    EvalSummary s;
    s.rows = dataset.size();
    const std::span<const double> t{truth}, p{pred};
    const std::size_t cut = dataset.split_index;
    s.all_mse = train::mse(p, t);
    if (cut > 0)
        s.train_mse = train::mse(p.first(cut), t.first(cut));
    if (cut < s.rows)
        s.test_mse = train::mse(p.subspan(cut), t.subspan(cut));
    return s;
}

int cmd_eval(const EvalOptions &opts, std::ostream &log) {
    const auto s = evaluate_to_csv(opts);
    log << "rows " << s.rows << '\n'
        << "train_mse " << fmt(s.train_mse) << '\n'
        << "test_mse " << fmt(s.test_mse) << '\n'
        << "mse " << fmt(s.all_mse) << '\n';
    return kExitOk;
}

int cmd_gradcheck(const GradcheckOptions &opts, std::ostream &log) {
    if (opts.trials < 1)
        throw UsageError("--trials must be positive");
    const auto kinds = parse_models(opts.model);
    CheckReport report;

    for (const auto kind : kinds) {
        const std::string name(model::to_string(kind));
        const std::uint64_t circuits_before = vqc::circuit_evaluations();
        log << name << ":\n";

        for (int trial = 0; trial < opts.trials; ++trial) {
            const std::uint64_t seed = derive_seed(opts.seed, static_cast<std::uint64_t>(trial));
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> u(-1.0, 1.0);
            std::vector<double> window(data::kWindow);
            for (double &x : window)
                x = u(rng);
            const double target = u(rng);

            model::Model m = initial_model(kind, "random", seed);
            if (auto *q = std::get_if<model::QlstmParams>(&m)) {
                q->head_scale = u(rng);
                q->head_shift = u(rng);
            }
            if (opts.corrupt_index && *opts.corrupt_index >= model::param_count(m))
                throw UsageError("--corrupt-index beyond the parameter count");

            auto analytic = model::window_loss_grad(m, window, target).grad;
            if (opts.corrupt_index)
                analytic[*opts.corrupt_index] += 1.0;
            const std::string tag = " (trial " + std::to_string(trial) + ")";

            if (kind == model::ModelKind::qlstm) {
                // Block level: every VQC of the cell with a random upstream vector.
                const auto &q = std::get<model::QlstmParams>(m);
                double worst_block = 0.0;
                for (int k = 0; k < model::QlstmDims::n_vqc; ++k) {
                    const auto spec = model::QlstmParams::block_spec(k);
                    std::vector<double> input(static_cast<std::size_t>(spec.n_qubits));
                    std::vector<double> upstream(static_cast<std::size_t>(spec.n_measured));
                    for (double &x : input)
                        x = u(rng);
                    for (double &x : upstream)
                        x = u(rng);
                    const auto &params = q.vqc[static_cast<std::size_t>(k)];
                    const auto a = vqc::vqc_grad_adjoint(spec, params, input, upstream);
                    const auto s = vqc::vqc_grad_shift(spec, params, input, upstream);
                    worst_block = std::max({worst_block, compare(a.params, s.params).rel,
                                            compare(a.input, s.input).rel});
                }
                report.record("vqc blocks adjoint vs shift" + tag, {worst_block, 0},
                              opts.shift_tol, log);

                const auto shifted =
                    model::window_loss_grad(m, window, target, vqc::GradEngine::shift).grad;
                report.record("loss gradient adjoint vs shift" + tag, compare(analytic, shifted),
                              opts.shift_tol, log);
            }
            const auto fd = central_difference(m, window, target, opts.fd_step);
            report.record("loss gradient vs central difference" + tag, compare(analytic, fd),
                          opts.fd_tol, log);
        }

        if (kind == model::ModelKind::lstm) {
            const std::uint64_t used = vqc::circuit_evaluations() - circuits_before;
            log << "  " << (used == 0 ? "ok   " : "FAIL ") << "quantum circuit evaluations: " << used
                << '\n';
            if (used != 0 && report.ok) {
                report.ok = false;
                report.worst_check = "lstm used the quantum simulator";
            }
        }
    }

    if (report.ok) {
        log << "all gradient checks passed\n";
        return kExitOk;
    }
    log << "gradient check failed: " << report.worst_check << ", worst offender index "
        << report.worst_index << '\n';
    return kExitNumeric;
}

} // namespace qlstm::cli
