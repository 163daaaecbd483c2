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
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles/oracles.hpp"
#include "qlstm/error.hpp"
#include "qlstm/statevec.hpp"

using namespace qlstm::sim;

namespace {

void expect_amps(const Statevector &s, const std::vector<Complex> &ref, double tol = 1e-12) {
    ASSERT_EQ(s.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        EXPECT_NEAR(s[i].real(), ref[i].real(), tol) << "i=" << i;
        EXPECT_NEAR(s[i].imag(), ref[i].imag(), tol) << "i=" << i;
    }
}

Statevector random_sv(int n, std::mt19937_64 &rng) {
    return Statevector::from_amplitudes(oracle::random_state(n, rng));
}

} // namespace

TEST(ZeroState, Definition) {
    expect_amps(zero_state(1), {1.0, 0.0});
    expect_amps(zero_state(2), {1.0, 0.0, 0.0, 0.0});
    const auto s4 = zero_state(4);
    ASSERT_EQ(s4.size(), 16u);
    EXPECT_EQ(s4[0], Complex(1.0, 0.0));
    for (std::size_t i = 1; i < 16; ++i)
        EXPECT_EQ(s4[i], Complex{});
}

TEST(ZeroState, SizeLimits) {
    EXPECT_THROW((void)zero_state(0), qlstm::SizeError);
    EXPECT_THROW((void)zero_state(kMaxQubits + 1), qlstm::SizeError);
    EXPECT_NO_THROW((void)zero_state(kMaxQubits));
}

TEST(ApplyGate, HadamardMakesUnbiasedState) {
    const double r = 1.0 / std::sqrt(2.0);
    expect_amps(apply_gate(zero_state(1), GateOp::h(0)), {r, r});
}

TEST(ApplyGate, RyPiFlipsToOne) {
    const auto s = apply_gate(zero_state(1), GateOp::ry(0, std::numbers::pi));
    EXPECT_NEAR(std::norm(s[1]), 1.0, 1e-12);
    EXPECT_NEAR(expectation_z(s, 0), -1.0, 1e-12);
}

TEST(ApplyGate, CnotTruthTable) {
    // qubit 0 is the most significant bit: |10> is index 2, |11> index 3.
    auto s = apply_gate(zero_state(2), GateOp::ry(0, std::numbers::pi));
    s = apply_gate(s, GateOp::cnot(0, 1));
    EXPECT_NEAR(std::norm(s[3]), 1.0, 1e-12);
    // control clear: no flip
    const auto t = apply_gate(zero_state(2), GateOp::cnot(0, 1));
    EXPECT_NEAR(std::norm(t[0]), 1.0, 1e-12);
}

TEST(ApplyGate, BitOrderingQubitZeroIsMostSignificant) {
    auto s = apply_gate(zero_state(3), GateOp::ry(0, std::numbers::pi));
    EXPECT_NEAR(std::norm(s[4]), 1.0, 1e-12);
    s = apply_gate(zero_state(3), GateOp::ry(2, std::numbers::pi));
    EXPECT_NEAR(std::norm(s[1]), 1.0, 1e-12);
}

TEST(ApplyGate, RotationConvention) {
    const double th = 0.7;
    const auto s = apply_gate(zero_state(1), GateOp::rx(0, th));
    expect_amps(s, {std::cos(th / 2), Complex(0.0, -std::sin(th / 2))});
    const auto z = apply_gate(zero_state(1), GateOp::rz(0, th));
    expect_amps(z, {std::polar(1.0, -th / 2), 0.0});
}

TEST(ApplyGate, RotAppliesXThenYThenZ) {
    std::mt19937_64 rng(3);
    const auto psi = random_sv(2, rng);
    auto a = psi;
    a.apply(GateOp::rot(1, 0.3, -1.1, 2.0));
    auto b = psi;
    b.apply(GateOp::rx(1, 0.3));
    b.apply(GateOp::ry(1, -1.1));
    b.apply(GateOp::rz(1, 2.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-14);
}

TEST(ApplyGate, InvalidIndices) {
    auto s = zero_state(2);
    EXPECT_THROW(s.apply(GateOp::h(2)), qlstm::IndexError);
    EXPECT_THROW(s.apply(GateOp::rx(-1, 0.1)), qlstm::IndexError);
    EXPECT_THROW(s.apply(GateOp::cnot(1, 1)), qlstm::IndexError);
    EXPECT_THROW(s.apply(GateOp::cnot(3, 0)), qlstm::IndexError);
}

TEST(ExpectationZ, BasisAndSuperposition) {
    EXPECT_DOUBLE_EQ(expectation_z(zero_state(1), 0), 1.0);
    EXPECT_NEAR(expectation_z(apply_gate(zero_state(1), GateOp::ry(0, std::numbers::pi)), 0), -1.0,
                1e-12);
    EXPECT_NEAR(expectation_z(apply_gate(zero_state(1), GateOp::h(0)), 0), 0.0, 1e-12);
    EXPECT_THROW((void)expectation_z(zero_state(2), 2), qlstm::IndexError);
}

TEST(ExpectationZ, ZRotationsCommuteWithZ) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_sv(3, rng);
        for (int q = 0; q < 3; ++q) {
            const auto r = apply_gate(s, GateOp::rz(q, angle(rng)));
            for (int m = 0; m < 3; ++m)
                EXPECT_NEAR(expectation_z(r, m), expectation_z(s, m), 1e-12);
        }
    }
}

TEST(DenseUnitary, EmptyCircuitIsIdentity) {
    const auto u = dense_unitary({}, 2);
    ASSERT_EQ(u.dim, 4u);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            EXPECT_EQ(u(r, c), Complex(r == c ? 1.0 : 0.0, 0.0));
}

TEST(DenseUnitary, Hadamard) {
    const GateOp h = GateOp::h(0);
    const auto u = dense_unitary(std::span(&h, 1), 1);
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(u(0, 0).real(), r, 1e-15);
    EXPECT_NEAR(u(0, 1).real(), r, 1e-15);
    EXPECT_NEAR(u(1, 0).real(), r, 1e-15);
    EXPECT_NEAR(u(1, 1).real(), -r, 1e-15);
}

TEST(DenseUnitary, SizeCeiling) {
    EXPECT_THROW((void)dense_unitary({}, kMaxDenseQubits + 1), qlstm::SizeError);
    // Out-of-range wires are reported the same way as by apply().
    const GateOp bad = GateOp::h(3);
    EXPECT_THROW((void)dense_unitary(std::span(&bad, 1), 2), qlstm::IndexError);
}

TEST(DenseUnitary, MatchesGateByGateOnRandomStates) {
    std::mt19937_64 rng(42);
    const auto circuit = oracle::random_circuit(4, 40, rng);
    const auto u = dense_unitary(circuit, 4);
    for (int k = 0; k < 20; ++k) {
        auto s = random_sv(4, rng);
        const auto expected = u * s.amplitudes();
        for (const auto &g : circuit)
            s.apply(g);
        for (std::size_t i = 0; i < s.size(); ++i)
            EXPECT_NEAR(std::abs(s[i] - expected[i]), 0.0, 1e-10);
    }
}

// Property: 1000 random (circuit, basis state) pairs on up to 4 qubits.
TEST(DenseUnitary, BasisStateOracleProperty) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> nq(1, 4), ng(0, 60);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = nq(rng);
        const auto circuit = oracle::random_circuit(n, ng(rng), rng);
        const auto u = dense_unitary(circuit, n);
        const std::size_t basis = std::uniform_int_distribution<std::size_t>(0, u.dim - 1)(rng);
        std::vector<Complex> amps(u.dim);
        amps[basis] = 1.0;
        auto s = Statevector::from_amplitudes(amps);
        for (const auto &g : circuit)
            s.apply(g);
        for (std::size_t r = 0; r < u.dim; ++r)
            worst = std::max(worst, std::abs(s[r] - u(r, basis)));
    }
    EXPECT_LE(worst, 1e-10);
}

TEST(Statevector, NormPreservationProperty) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> nq(1, 6), ng(1, 200);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = nq(rng);
        auto s = random_sv(n, rng);
        for (const auto &g : oracle::random_circuit(n, ng(rng), rng))
            s.apply(g);
        EXPECT_LE(std::abs(s.norm_squared() - 1.0), 1e-9);
    }
}

TEST(Statevector, Involutions) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    for (int trial = 0; trial < 30; ++trial) {
        const auto psi = random_sv(3, rng);
        const double th = angle(rng);
        const std::vector<std::pair<GateOp, GateOp>> pairs{
            {GateOp::h(1), GateOp::h(1)},
            {GateOp::cnot(0, 2), GateOp::cnot(0, 2)},
            {GateOp::rx(0, th), GateOp::rx(0, -th)},
            {GateOp::ry(2, th), GateOp::ry(2, -th)},
            {GateOp::rz(1, th), GateOp::rz(1, -th)},
        };
        for (const auto &[a, b] : pairs) {
            auto s = psi;
            s.apply(a);
            s.apply(b);
            for (std::size_t i = 0; i < s.size(); ++i)
                EXPECT_NEAR(std::abs(s[i] - psi[i]), 0.0, 1e-10);
        }
    }
}

TEST(Statevector, AdjointUndoesGate) {
    std::mt19937_64 rng(13);
    const auto psi = random_sv(3, rng);
    for (const auto &g : oracle::random_circuit(3, 50, rng)) {
        auto s = psi;
        s.apply(g);
        s.apply_adjoint(g);
        for (std::size_t i = 0; i < s.size(); ++i)
            EXPECT_NEAR(std::abs(s[i] - psi[i]), 0.0, 1e-12);
    }
}

TEST(Statevector, FromAmplitudesRejectsBadLength) {
    EXPECT_THROW((void)Statevector::from_amplitudes({1.0, 0.0, 0.0}), qlstm::SizeError);
    EXPECT_THROW((void)Statevector::from_amplitudes({1.0}), qlstm::SizeError);
    EXPECT_EQ(Statevector::from_amplitudes({1.0, 0.0, 0.0, 0.0}).num_qubits(), 2);
}
