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
 * Dense statevector simulator for small qubit registers.
 *
 * Bit ordering: qubit 0 is the most significant bit of the basis index, so
 * for n qubits the amplitude of |q0 q1 ... q(n-1)> lives at index
 * sum_k q_k * 2^(n-1-k). Rotations follow R_a(theta) = exp(-i theta sigma_a / 2)
 * and ROT(alpha, beta, gamma) = R_z(gamma) R_y(beta) R_x(alpha).
 */
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qlstm::sim {

using Complex = std::complex<double>;

/// Upper bound on register size accepted by zero_state().
inline constexpr int kMaxQubits = 12;
/// Upper bound on register size accepted by dense_unitary().
inline constexpr int kMaxDenseQubits = 8;

enum class GateKind { H, RX, RY, RZ, ROT, CNOT };

/// Number of rotation angles carried by a gate of the given kind.
[[nodiscard]] constexpr int angle_count(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
        return 1;
    case GateKind::ROT:
        return 3;
    default:
        return 0;
    }
}

/**
 * One gate of a circuit. Build through the named factories so the angle
 * count always matches the kind; unused angle slots stay zero.
 */
struct GateOp {
    GateKind kind = GateKind::H;
    int target = 0;
    int control = -1; ///< CNOT only; -1 otherwise.
    std::array<double, 3> angles{0.0, 0.0, 0.0};

    static GateOp h(int q) { return {GateKind::H, q, -1, {}}; }
    static GateOp rx(int q, double theta) { return {GateKind::RX, q, -1, {theta, 0.0, 0.0}}; }
    static GateOp ry(int q, double theta) { return {GateKind::RY, q, -1, {theta, 0.0, 0.0}}; }
    static GateOp rz(int q, double theta) { return {GateKind::RZ, q, -1, {theta, 0.0, 0.0}}; }
    static GateOp rot(int q, double alpha, double beta, double gamma) {
        return {GateKind::ROT, q, -1, {alpha, beta, gamma}};
    }
    static GateOp cnot(int control, int target) { return {GateKind::CNOT, target, control, {}}; }
};

class Statevector {
  public:
    /// |0...0> on n_qubits wires. Throws SizeError outside [1, kMaxQubits].
    explicit Statevector(int n_qubits);

    /// Wraps raw amplitudes; length must be a power of two >= 2.
    static Statevector from_amplitudes(std::vector<Complex> amplitudes);

    [[nodiscard]] int num_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] Complex &operator[](std::size_t i) { return amps_[i]; }

    [[nodiscard]] double norm_squared() const noexcept;

    /// Applies `gate` in place. Throws IndexError on invalid wires.
    void apply(const GateOp &gate);

    /// Applies the adjoint of `gate` in place.
    void apply_adjoint(const GateOp &gate);

    /// Multiplies by the Pauli X, Y or Z (selected by RX/RY/RZ kind) on `qubit`.
    void apply_pauli(GateKind axis, int qubit);

  private:
    Statevector() = default;

    void apply_1q(int qubit, const std::array<Complex, 4> &m);
    void apply_cnot(int control, int target);
    void check_qubit(int q) const;

    int n_qubits_ = 0;
    std::vector<Complex> amps_;
};

/// Row-major square complex matrix.
struct ComplexMatrix {
    std::size_t dim = 0;
    std::vector<Complex> data;

    [[nodiscard]] Complex &operator()(std::size_t r, std::size_t c) { return data[r * dim + c]; }
    [[nodiscard]] const Complex &operator()(std::size_t r, std::size_t c) const {
        return data[r * dim + c];
    }
    [[nodiscard]] static ComplexMatrix identity(std::size_t dim);
};

[[nodiscard]] ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
[[nodiscard]] std::vector<Complex> operator*(const ComplexMatrix &m, std::span<const Complex> v);

[[nodiscard]] Statevector zero_state(int n_qubits);

/// Functional form of Statevector::apply.
[[nodiscard]] Statevector apply_gate(Statevector state, const GateOp &gate);

/// <Z> on `qubit`; the state is only read.
[[nodiscard]] double expectation_z(const Statevector &state, int qubit);

/// 2x2 matrix of a single-qubit gate (row-major). Not defined for CNOT.
[[nodiscard]] std::array<Complex, 4> gate_matrix(const GateOp &gate);

/**
 * Full 2^n x 2^n unitary of `circuit`, built from Kronecker-product
 * embeddings of each gate. Intended as a test oracle; throws SizeError for
 * n_qubits > kMaxDenseQubits.
 */
[[nodiscard]] ComplexMatrix dense_unitary(std::span<const GateOp> circuit, int n_qubits);

} // namespace qlstm::sim
