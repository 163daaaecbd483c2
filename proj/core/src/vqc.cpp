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
#include "qlstm/vqc.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qlstm/error.hpp"

namespace qlstm::vqc {

namespace {

using sim::GateKind;
using sim::GateOp;

void check_params(const VqcSpec &spec, const VqcParams &params) {
    if (params.angles.size() != static_cast<std::size_t>(spec.param_count()))
        throw ShapeError("VQC expects " + std::to_string(spec.param_count()) + " angles, got " +
                         std::to_string(params.angles.size()));
}

void check_input(const VqcSpec &spec, std::span<const double> input) {
    if (input.size() != static_cast<std::size_t>(spec.n_qubits))
        throw ShapeError("VQC input length " + std::to_string(input.size()) + " != " +
                         std::to_string(spec.n_qubits) + " qubits");
}

void check_upstream(const VqcSpec &spec, std::span<const double> upstream) {
    if (upstream.size() != static_cast<std::size_t>(spec.n_measured))
        throw ShapeError("upstream length " + std::to_string(upstream.size()) + " != " +
                         std::to_string(spec.n_measured) + " measured wires");
}

template <class Emit> void emit_entanglers(int n, Emit &&emit) {
    if (n >= 2)
        for (int q = 0; q < n; ++q)
            emit(GateOp::cnot(q, (q + 1) % n));
    if (n >= 3)
        for (int q = 0; q < n; ++q)
            emit(GateOp::cnot(q, (q + 2) % n));
}

std::vector<double> slot_vector(const VqcParams &params, const EncodedAngles &enc) {
    std::vector<double> theta(params.angles);
    theta.reserve(theta.size() + 2 * enc.pairs.size());
    for (const auto &[a, b] : enc.pairs) {
        theta.push_back(a);
        theta.push_back(b);
    }
    return theta;
}

VqcGradients split_gradient(const VqcSpec &spec, std::span<const double> input,
                            const std::vector<double> &slot_grad) {
    const auto p = static_cast<std::size_t>(spec.param_count());
    VqcGradients out;
    out.params.assign(slot_grad.begin(), slot_grad.begin() + static_cast<std::ptrdiff_t>(p));
    out.input.resize(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
        const double x = input[i];
        const double d1 = 1.0 / (1.0 + x * x);
        const double d2 = 2.0 * x / (1.0 + x * x * x * x);
        out.input[i] = slot_grad[p + 2 * i] * d1 + slot_grad[p + 2 * i + 1] * d2;
    }
    return out;
}

} // namespace

void VqcSpec::validate() const {
    if (n_qubits < 1 || n_qubits > sim::kMaxQubits)
        throw ShapeError("VQC qubit count out of range: " + std::to_string(n_qubits));
    if (depth < 1)
        throw ShapeError("VQC depth must be >= 1");
    if (n_measured < 1 || n_measured > n_qubits)
        throw ShapeError("VQC measured wires must be in [1, n_qubits], got " +
                         std::to_string(n_measured));
}

VqcParams VqcParams::zeros(const VqcSpec &spec) {
    return {std::vector<double>(static_cast<std::size_t>(spec.param_count()), 0.0)};
}

double &VqcParams::at(const VqcSpec &spec, int layer, int qubit, int axis) {
    return angles[static_cast<std::size_t>((layer * spec.n_qubits + qubit) * 3 + axis)];
}

double VqcParams::at(const VqcSpec &spec, int layer, int qubit, int axis) const {
    return angles[static_cast<std::size_t>((layer * spec.n_qubits + qubit) * 3 + axis)];
}

EncodedAngles encode(const VqcSpec &spec, std::span<const double> input) {
    check_input(spec, input);
    EncodedAngles enc;
    enc.pairs.reserve(input.size());
    for (double x : input) {
        if (!std::isfinite(x))
            throw NumericError("non-finite VQC input");
        enc.pairs.emplace_back(std::atan(x), std::atan(x * x));
    }
    return enc;
}

std::vector<GateOp> build_gates(const VqcSpec &spec, const VqcParams &params,
                                std::span<const double> input) {
    spec.validate();
    check_params(spec, params);
    const EncodedAngles enc = encode(spec, input);
    const int n = spec.n_qubits;
    std::vector<GateOp> gates;
    for (int q = 0; q < n; ++q)
        gates.push_back(GateOp::h(q));
    for (int q = 0; q < n; ++q) {
        gates.push_back(GateOp::ry(q, enc.pairs[static_cast<std::size_t>(q)].first));
        gates.push_back(GateOp::rz(q, enc.pairs[static_cast<std::size_t>(q)].second));
    }
    for (int layer = 0; layer < spec.depth; ++layer) {
        emit_entanglers(n, [&](const GateOp &g) { gates.push_back(g); });
        for (int q = 0; q < n; ++q)
            gates.push_back(GateOp::rot(q, params.at(spec, layer, q, 0),
                                        params.at(spec, layer, q, 1),
                                        params.at(spec, layer, q, 2)));
    }
    return gates;
}

ParamCircuit build_circuit(const VqcSpec &spec) {
    spec.validate();
    const int n = spec.n_qubits;
    const int p = spec.param_count();
    ParamCircuit c(n, p + 2 * n);
    for (int q = 0; q < n; ++q)
        c.add(GateOp::h(q));
    for (int q = 0; q < n; ++q) {
        c.add_param(GateKind::RY, q, p + 2 * q);
        c.add_param(GateKind::RZ, q, p + 2 * q + 1);
    }
    for (int layer = 0; layer < spec.depth; ++layer) {
        emit_entanglers(n, [&](const GateOp &g) { c.add(g); });
        for (int q = 0; q < n; ++q) {
            const int base = (layer * n + q) * 3;
            c.add_param(GateKind::RX, q, base);
            c.add_param(GateKind::RY, q, base + 1);
            c.add_param(GateKind::RZ, q, base + 2);
        }
    }
    return c;
}

std::vector<double> vqc_forward(const VqcSpec &spec, const VqcParams &params,
                                std::span<const double> input) {
    spec.validate();
    check_params(spec, params);
    const EncodedAngles enc = encode(spec, input);
    const ParamCircuit c = build_circuit(spec);
    return expectations(c, slot_vector(params, enc), spec.n_measured);
}

VqcGradients vqc_grad_shift(const VqcSpec &spec, const VqcParams &params,
                            std::span<const double> input, std::span<const double> upstream) {
    spec.validate();
    check_params(spec, params);
    check_upstream(spec, upstream);
    const EncodedAngles enc = encode(spec, input);
    const ParamCircuit c = build_circuit(spec);
    return split_gradient(spec, input, grad_shift(c, slot_vector(params, enc), upstream));
}

VqcGradients vqc_grad_adjoint(const VqcSpec &spec, const VqcParams &params,
                              std::span<const double> input, std::span<const double> upstream) {
    spec.validate();
    check_params(spec, params);
    check_upstream(spec, upstream);
    const EncodedAngles enc = encode(spec, input);
    const ParamCircuit c = build_circuit(spec);
    return split_gradient(spec, input, grad_adjoint(c, slot_vector(params, enc), upstream));
}

VqcGradients vqc_grad(GradEngine engine, const VqcSpec &spec, const VqcParams &params,
                      std::span<const double> input, std::span<const double> upstream) {
    return engine == GradEngine::shift ? vqc_grad_shift(spec, params, input, upstream)
                                       : vqc_grad_adjoint(spec, params, input, upstream);
}

VqcParams init_params(const VqcSpec &spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 rng(seed);
    VqcParams p = VqcParams::zeros(spec);
    for (auto &a : p.angles) {
        std::uint64_t bits;
        do {
            bits = rng() >> 11;
        } while (bits == 0); // keeps the draw off the closed end at -pi
        const double u = static_cast<double>(bits) * 0x1.0p-53;
        a = -std::numbers::pi + 2.0 * std::numbers::pi * u;
    }
    return p;
}

} // namespace qlstm::vqc
