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
 * QLSTM cell built from six VQC blocks, and the classical LSTM baseline with
 * a matching parameter budget (146 vs 166 trainable scalars).
 *
 * QLSTM step with v = [h_{t-1}, x_t] (4 values, one per qubit):
 *   f = sigma(VQC1(v)), i = sigma(VQC2(v)), g = tanh(VQC3(v)), o = sigma(VQC4(v))
 *   c_t = f * c_{t-1} + i * g
 *   h_t = VQC5(o * tanh(c_t))            (3 measured wires)
 *   y_t = scale * VQC6(o * tanh(c_t)) + shift   (1 measured wire)
 */
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "qlstm/vqc.hpp"

namespace qlstm::model {

struct QlstmDims {
    static constexpr int input_dim = 1;
    static constexpr int hidden_dim = 3;
    static constexpr int cell_dim = 4;
    static constexpr int n_qubits = 4;
    static constexpr int depth = 2;
    static constexpr int n_vqc = 6;
};
static_assert(QlstmDims::input_dim + QlstmDims::hidden_dim == QlstmDims::n_qubits);
static_assert(QlstmDims::cell_dim == QlstmDims::n_qubits);

struct LstmDims {
    static constexpr int input_dim = 1;
    static constexpr int hidden_dim = 5;
    static constexpr int n_gates = 4;
};

enum class ModelKind { qlstm, lstm };

[[nodiscard]] std::string_view to_string(ModelKind kind) noexcept;
/// Accepts "qlstm" or "lstm"; throws ConfigError otherwise.
[[nodiscard]] ModelKind parse_model_kind(std::string_view name);

struct QlstmParams {
    /// VQC1..VQC6: forget, input, update, output, hidden head, output head.
    std::array<vqc::VqcParams, QlstmDims::n_vqc> vqc;
    double head_scale = 1.0;
    double head_shift = 0.0;

    /// Circuit shape of block k (0-based): blocks 0-3 measure 4 wires, 4 measures 3, 5 measures 1.
    [[nodiscard]] static vqc::VqcSpec block_spec(int k);
    /// All angles zero, head (1, 0).
    [[nodiscard]] static QlstmParams zeros();
    /// Angles uniform on (-pi, pi) via vqc::init_params, head (1, 0).
    [[nodiscard]] static QlstmParams init(std::uint64_t seed);
};

/// One LSTM gate: weight is hidden x (hidden + input) row-major over columns [h_{t-1}, x_t].
struct LstmGateParams {
    std::vector<double> weight;
    std::vector<double> bias_ih;
    std::vector<double> bias_hh;
};

struct LstmParams {
    /// forget, input, candidate, output.
    std::array<LstmGateParams, LstmDims::n_gates> gates;
    std::vector<double> head_weight;
    double head_bias = 0.0;

    [[nodiscard]] static LstmParams zeros();
    /// Every scalar uniform on (-1/sqrt(hidden), 1/sqrt(hidden)).
    [[nodiscard]] static LstmParams init(std::uint64_t seed);
};

using Model = std::variant<QlstmParams, LstmParams>;

struct CellState {
    std::vector<double> h;
    std::vector<double> c;
};

struct CellOutput {
    CellState state;
    double y = 0.0;
};

[[nodiscard]] ModelKind kind_of(const Model &model) noexcept;
[[nodiscard]] CellState initial_state(ModelKind kind);

[[nodiscard]] CellOutput qlstm_cell(const QlstmParams &params, const CellState &state, double x);
[[nodiscard]] CellOutput lstm_cell(const LstmParams &params, const CellState &state, double x);

/// Zero state, one cell per window element, returns the final y. Throws ShapeError on empty input.
[[nodiscard]] double forward_window(const Model &model, std::span<const double> window);

[[nodiscard]] std::size_t param_count(const QlstmParams &params) noexcept;
[[nodiscard]] std::size_t param_count(const LstmParams &params) noexcept;
[[nodiscard]] std::size_t param_count(const Model &model) noexcept;

/**
 * Flat parameter vector. QLSTM order: VQC1..VQC6 angles, head_scale,
 * head_shift. LSTM order: per gate (weight, bias_ih, bias_hh), then
 * head_weight, head_bias.
 */
[[nodiscard]] std::vector<double> flatten(const Model &model);
/// Inverse of flatten(); throws ShapeError on length mismatch.
void assign(Model &model, std::span<const double> flat);

struct LossGrad {
    double prediction = 0.0;
    double loss = 0.0;
    std::vector<double> grad; ///< d(loss)/d(flatten(model))
};

/// Squared error of forward_window against `target`, with its gradient by BPTT.
[[nodiscard]] LossGrad window_loss_grad(const Model &model, std::span<const double> window,
                                        double target,
                                        vqc::GradEngine engine = vqc::GradEngine::adjoint);

} // namespace qlstm::model
