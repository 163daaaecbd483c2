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
#include "qlstm/models.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qlstm/autodiff.hpp"
#include "qlstm/error.hpp"
#include "qlstm/rng.hpp"

namespace qlstm::model {

namespace {

constexpr std::size_t kLstmCols = LstmDims::hidden_dim + LstmDims::input_dim;
constexpr std::size_t kLstmHidden = LstmDims::hidden_dim;

double logistic(double x) {
    if (x >= 0.0)
        return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

void check_state(const CellState &s, std::size_t h, std::size_t c) {
    if (s.h.size() != h || s.c.size() != c)
        throw ShapeError("cell state dims (" + std::to_string(s.h.size()) + ", " +
                         std::to_string(s.c.size()) + ") != (" + std::to_string(h) + ", " +
                         std::to_string(c) + ")");
}

void check_finite(double x) {
    if (!std::isfinite(x))
        throw NumericError("non-finite model input");
}

std::vector<double> gate_preactivation(const LstmGateParams &g, std::span<const double> v) {
    std::vector<double> out(kLstmHidden);
    for (std::size_t r = 0; r < kLstmHidden; ++r) {
        double acc = g.bias_ih[r] + g.bias_hh[r];
        for (std::size_t c = 0; c < kLstmCols; ++c)
            acc += g.weight[r * kLstmCols + c] * v[c];
        out[r] = acc;
    }
    return out;
}

void check_lstm(const LstmParams &p) {
    for (const auto &g : p.gates)
        if (g.weight.size() != kLstmHidden * kLstmCols || g.bias_ih.size() != kLstmHidden ||
            g.bias_hh.size() != kLstmHidden)
            throw ShapeError("LSTM gate parameters have wrong dimensions");
    if (p.head_weight.size() != kLstmHidden)
        throw ShapeError("LSTM head weight must have " + std::to_string(kLstmHidden) + " entries");
}

void check_qlstm(const QlstmParams &p) {
    for (int k = 0; k < QlstmDims::n_vqc; ++k)
        if (p.vqc[static_cast<std::size_t>(k)].angles.size() !=
            static_cast<std::size_t>(QlstmParams::block_spec(k).param_count()))
            throw ShapeError("QLSTM block " + std::to_string(k + 1) + " has wrong angle count");
}

template <class Fn> void for_each_lstm_block(const LstmParams &p, Fn &&fn) {
    for (const auto &g : p.gates) {
        fn(g.weight);
        fn(g.bias_ih);
        fn(g.bias_hh);
    }
    fn(p.head_weight);
}

LossGrad qlstm_loss_grad(const QlstmParams &p, std::span<const double> window, double target,
                         vqc::GradEngine engine) {
    ad::Tape tape;
    std::array<ad::Var, QlstmDims::n_vqc> blocks;
    for (std::size_t k = 0; k < blocks.size(); ++k)
        blocks[k] = tape.leaf(p.vqc[k].angles);
    const ad::Var scale = tape.leaf({p.head_scale});
    const ad::Var shift = tape.leaf({p.head_shift});

    const auto spec_gate = QlstmParams::block_spec(0);
    const auto spec_hidden = QlstmParams::block_spec(4);
    const auto spec_out = QlstmParams::block_spec(5);

    ad::Var h = tape.leaf(std::vector<double>(QlstmDims::hidden_dim, 0.0));
    ad::Var c = tape.leaf(std::vector<double>(QlstmDims::cell_dim, 0.0));
    ad::Var y{};
    for (std::size_t t = 0; t < window.size(); ++t) {
        check_finite(window[t]);
        const ad::Var v = tape.concat(h, tape.leaf({window[t]}));
        const ad::Var f = tape.sigmoid(tape.quantum(spec_gate, blocks[0], v, engine));
        const ad::Var i = tape.sigmoid(tape.quantum(spec_gate, blocks[1], v, engine));
        const ad::Var g = tape.tanh(tape.quantum(spec_gate, blocks[2], v, engine));
        const ad::Var o = tape.sigmoid(tape.quantum(spec_gate, blocks[3], v, engine));
        c = tape.add(tape.mul(f, c), tape.mul(i, g));
        const ad::Var m = tape.mul(o, tape.tanh(c));
        h = tape.quantum(spec_hidden, blocks[4], m, engine);
        if (t + 1 == window.size())
            y = tape.affine(tape.quantum(spec_out, blocks[5], m, engine), scale, shift);
    }
    const double target_v[1] = {target};
    const ad::Var loss = tape.squared_error(y, target_v);
    tape.backward(loss);

    LossGrad out;
    out.prediction = tape.value(y)[0];
    out.loss = tape.value(loss)[0];
    out.grad.reserve(param_count(p));
    for (const auto &b : blocks) {
        const auto g = tape.grad(b);
        out.grad.insert(out.grad.end(), g.begin(), g.end());
    }
    out.grad.push_back(tape.grad(scale)[0]);
    out.grad.push_back(tape.grad(shift)[0]);
    return out;
}

LossGrad lstm_loss_grad(const LstmParams &p, std::span<const double> window, double target) {
    ad::Tape tape;
    struct GateVars {
        ad::Var w, b_ih, b_hh;
    };
    std::array<GateVars, LstmDims::n_gates> gv;
    for (std::size_t k = 0; k < gv.size(); ++k)
        gv[k] = {tape.leaf(p.gates[k].weight), tape.leaf(p.gates[k].bias_ih),
                 tape.leaf(p.gates[k].bias_hh)};
    const ad::Var head_w = tape.leaf(p.head_weight);
    const ad::Var head_b = tape.leaf({p.head_bias});

    auto pre = [&](std::size_t k, ad::Var v) {
        return tape.add(tape.affine(v, gv[k].w, gv[k].b_ih), gv[k].b_hh);
    };

    ad::Var h = tape.leaf(std::vector<double>(kLstmHidden, 0.0));
    ad::Var c = tape.leaf(std::vector<double>(kLstmHidden, 0.0));
    for (double x : window) {
        check_finite(x);
        const ad::Var v = tape.concat(h, tape.leaf({x}));
        const ad::Var f = tape.sigmoid(pre(0, v));
        const ad::Var i = tape.sigmoid(pre(1, v));
        const ad::Var g = tape.tanh(pre(2, v));
        const ad::Var o = tape.sigmoid(pre(3, v));
        c = tape.add(tape.mul(f, c), tape.mul(i, g));
        h = tape.mul(o, tape.tanh(c));
    }
    const ad::Var y = tape.affine(h, head_w, head_b);
    const double target_v[1] = {target};
    const ad::Var loss = tape.squared_error(y, target_v);
    tape.backward(loss);

    LossGrad out;
    out.prediction = tape.value(y)[0];
    out.loss = tape.value(loss)[0];
    out.grad.reserve(param_count(p));
    auto append = [&](ad::Var v) {
        const auto g = tape.grad(v);
        out.grad.insert(out.grad.end(), g.begin(), g.end());
    };
    for (const auto &g : gv) {
        append(g.w);
        append(g.b_ih);
        append(g.b_hh);
    }
    append(head_w);
    append(head_b);
    return out;
}

} // namespace

std::string_view to_string(ModelKind kind) noexcept {
    return kind == ModelKind::qlstm ? "qlstm" : "lstm";
}

ModelKind parse_model_kind(std::string_view name) {
    if (name == "qlstm")
        return ModelKind::qlstm;
    if (name == "lstm")
        return ModelKind::lstm;
    throw ConfigError("unknown model kind '" + std::string(name) + "'");
}

vqc::VqcSpec QlstmParams::block_spec(int k) {
    if (k < 0 || k >= QlstmDims::n_vqc)
        throw IndexError("QLSTM block index " + std::to_string(k) + " out of range");
    const int measured = k < 4 ? QlstmDims::cell_dim : (k == 4 ? QlstmDims::hidden_dim : 1);
    return {QlstmDims::n_qubits, QlstmDims::depth, measured};
}

QlstmParams QlstmParams::zeros() {
    QlstmParams p;
    for (int k = 0; k < QlstmDims::n_vqc; ++k)
        p.vqc[static_cast<std::size_t>(k)] = vqc::VqcParams::zeros(block_spec(k));
    return p;
}

QlstmParams QlstmParams::init(std::uint64_t seed) {
    QlstmParams p;
    for (int k = 0; k < QlstmDims::n_vqc; ++k)
        p.vqc[static_cast<std::size_t>(k)] =
            vqc::init_params(block_spec(k), derive_seed(seed, static_cast<std::uint64_t>(k)));
    return p;
}

LstmParams LstmParams::zeros() {
    LstmParams p;
    for (auto &g : p.gates) {
        g.weight.assign(kLstmHidden * kLstmCols, 0.0);
        g.bias_ih.assign(kLstmHidden, 0.0);
        g.bias_hh.assign(kLstmHidden, 0.0);
    }
    p.head_weight.assign(kLstmHidden, 0.0);
    return p;
}

LstmParams LstmParams::init(std::uint64_t seed) {
    LstmParams p = zeros();
    std::mt19937_64 rng(derive_seed(seed, 0x4c53544dULL));
    const double bound = 1.0 / std::sqrt(static_cast<double>(kLstmHidden));
    auto draw = [&] {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return -bound + 2.0 * bound * u;
    };
    for (auto &g : p.gates) {
        for (auto &w : g.weight)
            w = draw();
        for (auto &b : g.bias_ih)
            b = draw();
        for (auto &b : g.bias_hh)
            b = draw();
    }
    for (auto &w : p.head_weight)
        w = draw();
    p.head_bias = draw();
    return p;
}

ModelKind kind_of(const Model &model) noexcept {
    return std::holds_alternative<QlstmParams>(model) ? ModelKind::qlstm : ModelKind::lstm;
}

CellState initial_state(ModelKind kind) {
    if (kind == ModelKind::qlstm)
        return {std::vector<double>(QlstmDims::hidden_dim, 0.0),
                std::vector<double>(QlstmDims::cell_dim, 0.0)};
    return {std::vector<double>(kLstmHidden, 0.0), std::vector<double>(kLstmHidden, 0.0)};
}

CellOutput qlstm_cell(const QlstmParams &params, const CellState &state, double x) {
    check_qlstm(params);
    check_state(state, QlstmDims::hidden_dim, QlstmDims::cell_dim);
    check_finite(x);

    std::vector<double> v(state.h);
    v.push_back(x);
    auto block = [&](int k, std::span<const double> in) {
        return vqc::vqc_forward(QlstmParams::block_spec(k), params.vqc[static_cast<std::size_t>(k)],
                                in);
    };
    const auto zf = block(0, v);
    const auto zi = block(1, v);
    const auto zg = block(2, v);
    const auto zo = block(3, v);

    CellOutput out;
    out.state.c.resize(QlstmDims::cell_dim);
    std::vector<double> m(QlstmDims::cell_dim);
    for (std::size_t j = 0; j < m.size(); ++j) {
        const double f = logistic(zf[j]);
        const double i = logistic(zi[j]);
        const double g = std::tanh(zg[j]);
        const double o = logistic(zo[j]);
        out.state.c[j] = f * state.c[j] + i * g;
        m[j] = o * std::tanh(out.state.c[j]);
    }
    out.state.h = block(4, m);
    out.y = params.head_scale * block(5, m)[0] + params.head_shift;
    return out;
}

CellOutput lstm_cell(const LstmParams &params, const CellState &state, double x) {
    check_lstm(params);
    check_state(state, kLstmHidden, kLstmHidden);
    check_finite(x);

    std::vector<double> v(state.h);
    v.push_back(x);
    const auto zf = gate_preactivation(params.gates[0], v);
    const auto zi = gate_preactivation(params.gates[1], v);
    const auto zg = gate_preactivation(params.gates[2], v);
    const auto zo = gate_preactivation(params.gates[3], v);

    CellOutput out;
    out.state.c.resize(kLstmHidden);
    out.state.h.resize(kLstmHidden);
    out.y = params.head_bias;
    for (std::size_t j = 0; j < kLstmHidden; ++j) {
        out.state.c[j] = logistic(zf[j]) * state.c[j] + logistic(zi[j]) * std::tanh(zg[j]);
        out.state.h[j] = logistic(zo[j]) * std::tanh(out.state.c[j]);
        out.y += params.head_weight[j] * out.state.h[j];
    }
    return out;
}

double forward_window(const Model &model, std::span<const double> window) {
    if (window.empty())
        throw ShapeError("forward_window needs at least one element");
    return std::visit(
        [&](const auto &p) {
            using P = std::decay_t<decltype(p)>;
            CellState s = initial_state(std::is_same_v<P, QlstmParams> ? ModelKind::qlstm
                                                                       : ModelKind::lstm);
            double y = 0.0;
            for (double x : window) {
                CellOutput o;
                if constexpr (std::is_same_v<P, QlstmParams>)
                    o = qlstm_cell(p, s, x);
                else
                    o = lstm_cell(p, s, x);
                s = std::move(o.state);
                y = o.y;
            }
            return y;
        },
        model);
}

std::size_t param_count(const QlstmParams &params) noexcept {
    std::size_t n = 2;
    for (const auto &b : params.vqc)
        n += b.angles.size();
    return n;
}

std::size_t param_count(const LstmParams &params) noexcept {
    std::size_t n = 1;
    for_each_lstm_block(params, [&](const std::vector<double> &b) { n += b.size(); });
    return n;
}

std::size_t param_count(const Model &model) noexcept {
    return std::visit([](const auto &p) { return param_count(p); }, model);
}

std::vector<double> flatten(const Model &model) {
    std::vector<double> out;
    out.reserve(param_count(model));
    if (const auto *q = std::get_if<QlstmParams>(&model)) {
        for (const auto &b : q->vqc)
            out.insert(out.end(), b.angles.begin(), b.angles.end());
        out.push_back(q->head_scale);
        out.push_back(q->head_shift);
        return out;
    }
    const auto &l = std::get<LstmParams>(model);
    for_each_lstm_block(l, [&](const std::vector<double> &b) {
        out.insert(out.end(), b.begin(), b.end());
    });
    out.push_back(l.head_bias);
    return out;
}

void assign(Model &model, std::span<const double> flat) {
    if (flat.size() != param_count(model))
        throw ShapeError("parameter vector has " + std::to_string(flat.size()) +
                         " entries, model expects " + std::to_string(param_count(model)));
    std::size_t pos = 0;
    auto take = [&](std::vector<double> &dst) {
        for (auto &d : dst)
            d = flat[pos++];
    };
    if (auto *q = std::get_if<QlstmParams>(&model)) {
        for (auto &b : q->vqc)
            take(b.angles);
        q->head_scale = flat[pos++];
        q->head_shift = flat[pos++];
        return;
    }
    auto &l = std::get<LstmParams>(model);
    for (auto &g : l.gates) {
        take(g.weight);
        take(g.bias_ih);
        take(g.bias_hh);
    }
    take(l.head_weight);
    l.head_bias = flat[pos++];
}

LossGrad window_loss_grad(const Model &model, std::span<const double> window, double target,
                          vqc::GradEngine engine) {
    if (window.empty())
        throw ShapeError("window_loss_grad needs at least one element");
    if (const auto *q = std::get_if<QlstmParams>(&model)) {
        check_qlstm(*q);
        return qlstm_loss_grad(*q, window, target, engine);
    }
    const auto &l = std::get<LstmParams>(model);
    check_lstm(l);
    return lstm_loss_grad(l, window, target);
}

} // namespace qlstm::model
