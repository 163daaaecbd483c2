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
 * Parameterized circuits over the primitive gate set and their exact
 * gradients. A circuit measures <Z> on its leading wires; gradients are of
 * the scalar sum_j upstream[j] * <Z_j> with respect to every angle slot.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qlstm/statevec.hpp"

namespace qlstm::vqc {

/// A primitive gate whose single angle is either fixed or read from slot `slot`.
struct ParamGate {
    sim::GateOp op;
    int slot = -1;
};

class ParamCircuit {
  public:
    ParamCircuit(int n_qubits, int n_slots);

    /// Appends a fixed gate. ROT is expanded into RX, RY, RZ.
    void add(const sim::GateOp &op);
    /// Appends RX/RY/RZ on `qubit` whose angle is theta[slot].
    void add_param(sim::GateKind axis, int qubit, int slot);

    [[nodiscard]] int num_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] int num_slots() const noexcept { return n_slots_; }
    [[nodiscard]] std::span<const ParamGate> gates() const noexcept { return gates_; }

    /// Concrete gate list with every slot angle substituted.
    [[nodiscard]] std::vector<sim::GateOp> bind(std::span<const double> theta) const;

    /// Runs the bound circuit on |0...0>.
    [[nodiscard]] sim::Statevector run(std::span<const double> theta) const;

  private:
    void check_theta(std::span<const double> theta) const;

    int n_qubits_;
    int n_slots_;
    std::vector<ParamGate> gates_;
};

/// <Z_0>, ..., <Z_{n_measured-1}> of the circuit's output state.
[[nodiscard]] std::vector<double> expectations(const ParamCircuit &circuit,
                                               std::span<const double> theta, int n_measured);

/// Parameter-shift gradient: every parameterized gate evaluated at angle +/- pi/2.
[[nodiscard]] std::vector<double> grad_shift(const ParamCircuit &circuit,
                                             std::span<const double> theta,
                                             std::span<const double> upstream);

/// Adjoint (reverse-sweep) gradient: one forward state and one costate.
[[nodiscard]] std::vector<double> grad_adjoint(const ParamCircuit &circuit,
                                               std::span<const double> theta,
                                               std::span<const double> upstream);

/// Total number of full circuit executions performed by this process.
[[nodiscard]] std::uint64_t circuit_evaluations() noexcept;

} // namespace qlstm::vqc
