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
 * Variational quantum circuit block: arctan encoding, entangle-and-rotate
 * variational layers, and <Z> readout on the leading wires.
 *
 * Circuit for input x (length n):
 *   H on every wire; R_y(arctan x_i) then R_z(arctan x_i^2) on wire i;
 *   then `depth` times: CNOT ring (q -> q+1 mod n), CNOT ring (q -> q+2 mod n),
 *   ROT(alpha, beta, gamma) on every wire.
 * The distance-2 ring is skipped for n < 3 and both rings for n < 2.
 */
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qlstm/circuit.hpp"
#include "qlstm/statevec.hpp"

namespace qlstm::vqc {

struct VqcSpec {
    int n_qubits = 4;
    int depth = 2;
    int n_measured = 4;

    [[nodiscard]] int param_count() const noexcept { return n_qubits * depth * 3; }
    /// Throws ShapeError unless 1 <= n_measured <= n_qubits and depth >= 1.
    void validate() const;

    friend bool operator==(const VqcSpec &, const VqcSpec &) = default;
};

/// Trainable angles, flattened as [layer][qubit][alpha, beta, gamma].
struct VqcParams {
    std::vector<double> angles;

    [[nodiscard]] static VqcParams zeros(const VqcSpec &spec);
    [[nodiscard]] double &at(const VqcSpec &spec, int layer, int qubit, int axis);
    [[nodiscard]] double at(const VqcSpec &spec, int layer, int qubit, int axis) const;
};

struct EncodedAngles {
    std::vector<std::pair<double, double>> pairs; ///< (arctan x_i, arctan x_i^2)
};

enum class GradEngine { adjoint, shift };

struct VqcGradients {
    std::vector<double> params;
    std::vector<double> input;
};

/// Throws ShapeError on length mismatch and NumericError on non-finite entries.
[[nodiscard]] EncodedAngles encode(const VqcSpec &spec, std::span<const double> input);

/// Concrete gate list of the block for one input (used by dense oracles).
[[nodiscard]] std::vector<sim::GateOp> build_gates(const VqcSpec &spec, const VqcParams &params,
                                                   std::span<const double> input);

/**
 * The block as a ParamCircuit. Slots [0, param_count) hold the variational
 * angles; slots param_count + 2i and param_count + 2i + 1 hold the encoding
 * angles of input i.
 */
[[nodiscard]] ParamCircuit build_circuit(const VqcSpec &spec);

[[nodiscard]] std::vector<double> vqc_forward(const VqcSpec &spec, const VqcParams &params,
                                              std::span<const double> input);

[[nodiscard]] VqcGradients vqc_grad_shift(const VqcSpec &spec, const VqcParams &params,
                                          std::span<const double> input,
                                          std::span<const double> upstream);

[[nodiscard]] VqcGradients vqc_grad_adjoint(const VqcSpec &spec, const VqcParams &params,
                                            std::span<const double> input,
                                            std::span<const double> upstream);

[[nodiscard]] VqcGradients vqc_grad(GradEngine engine, const VqcSpec &spec,
                                    const VqcParams &params, std::span<const double> input,
                                    std::span<const double> upstream);

/// I.i.d. uniform angles on the open interval (-pi, pi), deterministic in `seed`.
[[nodiscard]] VqcParams init_params(const VqcSpec &spec, std::uint64_t seed);

} // namespace qlstm::vqc
