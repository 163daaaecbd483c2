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
#include "qlstm/circuit.hpp"

#include <atomic>
#include <numbers>
#include <string>

#include "qlstm/error.hpp"

namespace qlstm::vqc {

namespace {

std::atomic<std::uint64_t> g_evaluations{0};

using sim::GateKind;
using sim::GateOp;

bool is_rotation(GateKind k) {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

void check_measured(const ParamCircuit &c, std::size_t n_measured) {
    if (n_measured < 1 || n_measured > static_cast<std::size_t>(c.num_qubits()))
        throw ShapeError("measured wire count " + std::to_string(n_measured) +
                         " must be in [1, " + std::to_string(c.num_qubits()) + "]");
}

} // namespace

ParamCircuit::ParamCircuit(int n_qubits, int n_slots) : n_qubits_(n_qubits), n_slots_(n_slots) {
    if (n_qubits < 1 || n_qubits > sim::kMaxQubits)
        throw SizeError("circuit qubit count out of range: " + std::to_string(n_qubits));
    if (n_slots < 0)
        throw SizeError("negative slot count");
}

void ParamCircuit::add(const GateOp &op) {
    if (op.kind == GateKind::ROT) {
        gates_.push_back({GateOp::rx(op.target, op.angles[0]), -1});
        gates_.push_back({GateOp::ry(op.target, op.angles[1]), -1});
        gates_.push_back({GateOp::rz(op.target, op.angles[2]), -1});
        return;
    }
    gates_.push_back({op, -1});
}

void ParamCircuit::add_param(GateKind axis, int qubit, int slot) {
    if (!is_rotation(axis))
        throw Error("add_param: only RX, RY and RZ carry a trainable angle");
    if (slot < 0 || slot >= n_slots_)
        throw IndexError("slot " + std::to_string(slot) + " out of range");
    gates_.push_back({GateOp{axis, qubit, -1, {0.0, 0.0, 0.0}}, slot});
}

void ParamCircuit::check_theta(std::span<const double> theta) const {
    if (theta.size() != static_cast<std::size_t>(n_slots_))
        throw ShapeError("expected " + std::to_string(n_slots_) + " angles, got " +
                         std::to_string(theta.size()));
}

std::vector<GateOp> ParamCircuit::bind(std::span<const double> theta) const {
    check_theta(theta);
    std::vector<GateOp> out;
    out.reserve(gates_.size());
    for (const auto &g : gates_) {
        GateOp op = g.op;
        if (g.slot >= 0)
            op.angles[0] = theta[static_cast<std::size_t>(g.slot)];
        out.push_back(op);
    }
    return out;
}

sim::Statevector ParamCircuit::run(std::span<const double> theta) const {
    sim::Statevector psi(n_qubits_);
    for (const auto &op : bind(theta))
        psi.apply(op);
    g_evaluations.fetch_add(1, std::memory_order_relaxed);
    return psi;
}

std::vector<double> expectations(const ParamCircuit &circuit, std::span<const double> theta,
                                 int n_measured) {
    check_measured(circuit, static_cast<std::size_t>(n_measured));
    const sim::Statevector psi = circuit.run(theta);
    std::vector<double> out(static_cast<std::size_t>(n_measured));
    for (int q = 0; q < n_measured; ++q)
        out[static_cast<std::size_t>(q)] = sim::expectation_z(psi, q);
    return out;
}

std::vector<double> grad_shift(const ParamCircuit &circuit, std::span<const double> theta,
                               std::span<const double> upstream) {
    check_measured(circuit, upstream.size());
    std::vector<double> grad(static_cast<std::size_t>(circuit.num_slots()), 0.0);
    const auto base = circuit.bind(theta);
    const int n_measured = static_cast<int>(upstream.size());

    auto weighted = [&](const std::vector<GateOp> &ops) {
        sim::Statevector psi(circuit.num_qubits());
        for (const auto &op : ops)
            psi.apply(op);
        g_evaluations.fetch_add(1, std::memory_order_relaxed);
        double acc = 0.0;
        for (int j = 0; j < n_measured; ++j)
            acc += upstream[static_cast<std::size_t>(j)] * sim::expectation_z(psi, j);
        return acc;
    };

    const auto gates = circuit.gates();
    for (std::size_t k = 0; k < gates.size(); ++k) {
        if (gates[k].slot < 0)
            continue;
        auto shifted = base;
        shifted[k].angles[0] = base[k].angles[0] + std::numbers::pi / 2;
        const double plus = weighted(shifted);
        shifted[k].angles[0] = base[k].angles[0] - std::numbers::pi / 2;
        const double minus = weighted(shifted);
        grad[static_cast<std::size_t>(gates[k].slot)] += 0.5 * (plus - minus);
    }
    return grad;
}

std::vector<double> grad_adjoint(const ParamCircuit &circuit, std::span<const double> theta,
                                 std::span<const double> upstream) {
    check_measured(circuit, upstream.size());
    std::vector<double> grad(static_cast<std::size_t>(circuit.num_slots()), 0.0);
    const auto ops = circuit.bind(theta);
    const int n = circuit.num_qubits();

    sim::Statevector psi = circuit.run(theta);

    // Costate lambda = (sum_j u_j Z_j) |psi>; the observable is diagonal.
    sim::Statevector lambda = psi;
    {
        auto amps = lambda.amplitudes();
        for (std::size_t i = 0; i < amps.size(); ++i) {
            double w = 0.0;
            for (std::size_t j = 0; j < upstream.size(); ++j) {
                const bool one = (i >> (n - 1 - static_cast<int>(j))) & 1U;
                w += one ? -upstream[j] : upstream[j];
            }
            amps[i] *= w;
        }
    }

    const auto gates = circuit.gates();
    for (std::size_t k = gates.size(); k-- > 0;) {
        const GateOp &op = ops[k];
        if (gates[k].slot >= 0) {
            // d<H>/dtheta = Im <lambda| P |psi_k> for U = exp(-i theta P / 2).
            sim::Statevector p_psi = psi;
            p_psi.apply_pauli(op.kind, op.target);
            const auto l = lambda.amplitudes();
            const auto r = p_psi.amplitudes();
            double im = 0.0;
            for (std::size_t i = 0; i < l.size(); ++i)
                im += (std::conj(l[i]) * r[i]).imag();
            grad[static_cast<std::size_t>(gates[k].slot)] += im;
        }
        psi.apply_adjoint(op);
        lambda.apply_adjoint(op);
    }
    return grad;
}

std::uint64_t circuit_evaluations() noexcept {
    return g_evaluations.load(std::memory_order_relaxed);
}

} // namespace qlstm::vqc
