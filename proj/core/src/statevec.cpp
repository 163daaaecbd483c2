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
#include "qlstm/statevec.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "qlstm/error.hpp"

namespace qlstm::sim {

namespace {

using Mat2 = std::array<Complex, 4>;

constexpr Complex kI{0.0, 1.0};

Mat2 mat_mul(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 rx(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {c, -kI * s, -kI * s, c};
}

Mat2 ry(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {c, -s, s, c};
}

Mat2 rz(double theta) {
    return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
}

GateOp inverse(const GateOp &g) {
    switch (g.kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
        return {g.kind, g.target, -1, {-g.angles[0], 0.0, 0.0}};
    default:
        return g;
    }
}

// Kronecker product of square matrices.
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out{a.dim * b.dim, std::vector<Complex>(a.dim * b.dim * a.dim * b.dim)};
    for (std::size_t ar = 0; ar < a.dim; ++ar)
        for (std::size_t ac = 0; ac < a.dim; ++ac)
            for (std::size_t br = 0; br < b.dim; ++br)
                for (std::size_t bc = 0; bc < b.dim; ++bc)
                    out(ar * b.dim + br, ac * b.dim + bc) = a(ar, ac) * b(br, bc);
    return out;
}

ComplexMatrix from2(const Mat2 &m) { return {2, {m[0], m[1], m[2], m[3]}}; }

// I (x) ... (x) factor[q] (x) ... (x) I with qubit 0 as the leftmost factor.
ComplexMatrix embed(const std::vector<ComplexMatrix> &factors) {
    ComplexMatrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k)
        out = kron(out, factors[k]);
    return out;
}

ComplexMatrix embedded_gate(const GateOp &g, int n) {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    if (g.kind != GateKind::CNOT) {
        std::vector<ComplexMatrix> f(static_cast<std::size_t>(n), id);
        f[static_cast<std::size_t>(g.target)] = from2(gate_matrix(g));
        return embed(f);
    }
    // |0><0|_c (x) I + |1><1|_c (x) X_t
    const ComplexMatrix p0{2, {1.0, 0.0, 0.0, 0.0}};
    const ComplexMatrix p1{2, {0.0, 0.0, 0.0, 1.0}};
    const ComplexMatrix x{2, {0.0, 1.0, 1.0, 0.0}};
    std::vector<ComplexMatrix> f0(static_cast<std::size_t>(n), id);
    std::vector<ComplexMatrix> f1(static_cast<std::size_t>(n), id);
    f0[static_cast<std::size_t>(g.control)] = p0;
    f1[static_cast<std::size_t>(g.control)] = p1;
    f1[static_cast<std::size_t>(g.target)] = x;
    ComplexMatrix a = embed(f0);
    const ComplexMatrix b = embed(f1);
    for (std::size_t i = 0; i < a.data.size(); ++i)
        a.data[i] += b.data[i];
    return a;
}

void validate_gate(const GateOp &g, int n) {
    auto bad = [n](int q) { return q < 0 || q >= n; };
    if (bad(g.target))
        throw IndexError("gate target " + std::to_string(g.target) + " out of range for " +
                         std::to_string(n) + " qubits");
    if (g.kind == GateKind::CNOT) {
        if (bad(g.control))
            throw IndexError("CNOT control " + std::to_string(g.control) + " out of range");
        if (g.control == g.target)
            throw IndexError("CNOT control equals target");
    }
}

} // namespace

Statevector::Statevector(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw SizeError("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n_qubits));
    n_qubits_ = n_qubits;
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
    amps_[0] = 1.0;
}

Statevector Statevector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t len = amplitudes.size();
    if (len < 2 || !std::has_single_bit(len) || len > (std::size_t{1} << kMaxQubits))
        throw SizeError("amplitude count must be a power of two in [2, 2^" +
                        std::to_string(kMaxQubits) + "]");
    Statevector s;
    s.n_qubits_ = std::countr_zero(len);
    s.amps_ = std::move(amplitudes);
    return s;
}

double Statevector::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto &a : amps_)
        acc += std::norm(a);
    return acc;
}

void Statevector::check_qubit(int q) const {
    if (q < 0 || q >= n_qubits_)
        throw IndexError("qubit " + std::to_string(q) + " out of range for " +
                         std::to_string(n_qubits_) + " qubits");
}

void Statevector::apply_1q(int qubit, const Mat2 &m) {
    const std::size_t stride = std::size_t{1} << (n_qubits_ - 1 - qubit);
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            const Complex a0 = amps_[k];
            const Complex a1 = amps_[k + stride];
            amps_[k] = m[0] * a0 + m[1] * a1;
            amps_[k + stride] = m[2] * a0 + m[3] * a1;
        }
    }
}

void Statevector::apply_cnot(int control, int target) {
    const std::size_t cmask = std::size_t{1} << (n_qubits_ - 1 - control);
    const std::size_t tmask = std::size_t{1} << (n_qubits_ - 1 - target);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & cmask) && !(i & tmask))
            std::swap(amps_[i], amps_[i | tmask]);
    }
}

void Statevector::apply(const GateOp &gate) {
    validate_gate(gate, n_qubits_);
    if (gate.kind == GateKind::CNOT)
        apply_cnot(gate.control, gate.target);
    else
        apply_1q(gate.target, gate_matrix(gate));
}

void Statevector::apply_adjoint(const GateOp &gate) {
    validate_gate(gate, n_qubits_);
    if (gate.kind == GateKind::ROT) {
        apply(GateOp::rz(gate.target, -gate.angles[2]));
        apply(GateOp::ry(gate.target, -gate.angles[1]));
        apply(GateOp::rx(gate.target, -gate.angles[0]));
        return;
    }
    apply(inverse(gate));
}

void Statevector::apply_pauli(GateKind axis, int qubit) {
    check_qubit(qubit);
    switch (axis) {
    case GateKind::RX:
        apply_1q(qubit, {0.0, 1.0, 1.0, 0.0});
        break;
    case GateKind::RY:
        apply_1q(qubit, {0.0, -kI, kI, 0.0});
        break;
    case GateKind::RZ:
        apply_1q(qubit, {1.0, 0.0, 0.0, -1.0});
        break;
    default:
        throw Error("apply_pauli: axis must be RX, RY or RZ");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m{dim, std::vector<Complex>(dim * dim)};
    for (std::size_t i = 0; i < dim; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim != b.dim)
        throw ShapeError("matrix dimensions differ");
    const std::size_t d = a.dim;
    ComplexMatrix out{d, std::vector<Complex>(d * d)};
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{})
                continue;
            for (std::size_t c = 0; c < d; ++c)
                out(r, c) += ark * b(k, c);
        }
    return out;
}

std::vector<Complex> operator*(const ComplexMatrix &m, std::span<const Complex> v) {
    if (m.dim != v.size())
        throw ShapeError("matrix/vector dimensions differ");
    std::vector<Complex> out(m.dim);
    for (std::size_t r = 0; r < m.dim; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < m.dim; ++c)
            acc += m(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

Statevector zero_state(int n_qubits) { return Statevector(n_qubits); }

Statevector apply_gate(Statevector state, const GateOp &gate) {
    state.apply(gate);
    return state;
}

double expectation_z(const Statevector &state, int qubit) {
    const int n = state.num_qubits();
    if (qubit < 0 || qubit >= n)
        throw IndexError("qubit " + std::to_string(qubit) + " out of range for " +
                         std::to_string(n) + " qubits");
    const std::size_t mask = std::size_t{1} << (n - 1 - qubit);
    double acc = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i)
        acc += (i & mask) ? -std::norm(amps[i]) : std::norm(amps[i]);
    return acc;
}

std::array<Complex, 4> gate_matrix(const GateOp &gate) {
    switch (gate.kind) {
    case GateKind::H: {
        const double r = 1.0 / std::numbers::sqrt2;
        return {r, r, r, -r};
    }
    case GateKind::RX:
        return rx(gate.angles[0]);
    case GateKind::RY:
        return ry(gate.angles[0]);
    case GateKind::RZ:
        return rz(gate.angles[0]);
    case GateKind::ROT:
        return mat_mul(rz(gate.angles[2]), mat_mul(ry(gate.angles[1]), rx(gate.angles[0])));
    case GateKind::CNOT:
        break;
    }
    throw Error("gate_matrix: CNOT is a two-qubit gate");
}

ComplexMatrix dense_unitary(std::span<const GateOp> circuit, int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxDenseQubits)
        throw SizeError("dense_unitary supports 1.." + std::to_string(kMaxDenseQubits) +
                        " qubits, got " + std::to_string(n_qubits));
    ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << n_qubits);
    for (const auto &g : circuit) {
        validate_gate(g, n_qubits);
        u = embedded_gate(g, n_qubits) * u;
    }
    return u;
}

} // namespace qlstm::sim
