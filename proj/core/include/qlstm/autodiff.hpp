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
 * Reverse-mode differentiation tape with whole-vector nodes.
 *
 * Nodes are appended in evaluation order, so creation order is a
 * topological order and backward() simply walks the tape in reverse,
 * visiting only ancestors of the loss. VQC blocks enter the graph through
 * Tape::quantum(), whose backward rule calls a VQC gradient engine.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qlstm/vqc.hpp"

namespace qlstm::ad {

/// Handle to a node on a Tape. Only meaningful for the tape that issued it.
struct Var {
    std::size_t id = 0;
};

class Tape {
  public:
    Tape() = default;
    Tape(const Tape &) = delete;
    Tape &operator=(const Tape &) = delete;
    Tape(Tape &&) = default;
    Tape &operator=(Tape &&) = default;

    /// Input or parameter node. Its gradient is available after backward().
    Var leaf(std::vector<double> value);

    Var add(Var a, Var b);
    Var sub(Var a, Var b);
    Var mul(Var a, Var b);
    Var sigmoid(Var a);
    Var tanh(Var a);

    /// weight * x + bias, with weight stored row-major as bias.size() rows.
    Var affine(Var x, Var weight, Var bias);

    Var concat(Var a, Var b);
    Var slice(Var a, std::size_t begin, std::size_t length);
    Var sum(Var a);

    /// mean((pred - target)^2) as a scalar node; target is a constant.
    Var squared_error(Var pred, std::span<const double> target);

    /// VQC block: forward is vqc_forward(spec, params, input).
    Var quantum(const vqc::VqcSpec &spec, Var params, Var input,
                vqc::GradEngine engine = vqc::GradEngine::adjoint);

    /// Accumulates d(loss)/d(node) into every ancestor of `loss`.
    /// Throws ShapeError for non-scalar loss and StateError when called twice
    /// without zero_grads().
    void backward(Var loss);

    void zero_grads();

    [[nodiscard]] std::span<const double> value(Var v) const;
    [[nodiscard]] std::span<const double> grad(Var v) const;
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }

  private:
    using BackwardFn = std::function<void(Tape &, std::size_t self)>;

    struct Node {
        std::vector<double> value;
        std::vector<double> grad;
        std::vector<std::size_t> parents;
        BackwardFn backward;
    };

    Var push(std::vector<double> value, std::vector<std::size_t> parents, BackwardFn fn);
    const Node &node(Var v) const;
    void check_same_length(Var a, Var b, const char *op) const;

    std::vector<Node> nodes_;
    bool backward_done_ = false;
};

} // namespace qlstm::ad
