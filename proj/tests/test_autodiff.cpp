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
#include <random>

#include "oracles/oracles.hpp"
#include "qlstm/autodiff.hpp"
#include "qlstm/error.hpp"

using qlstm::ad::Tape;
using qlstm::ad::Var;

namespace {

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

// Builds a scalar graph from one leaf and checks backward against central differences.
void check_fd(const std::function<Var(Tape &, Var)> &build, const std::vector<double> &x0,
              double tol) {
    Tape tape;
    const Var x = tape.leaf(x0);
    tape.backward(tape.sum(build(tape, x)));
    const auto analytic = to_vec(tape.grad(x));
    const auto fd = oracle::central_difference(
        [&](std::span<const double> pt) {
            Tape t;
            const Var v = t.leaf({pt.begin(), pt.end()});
            return t.value(t.sum(build(t, v)))[0];
        },
        x0, 1e-6);
    EXPECT_LE(oracle::normwise_relative(analytic, fd), tol);
}

} // namespace

TEST(Autodiff, ElementwiseAddMul) {
    Tape t;
    const Var a = t.leaf({1, 2});
    const Var b = t.leaf({3, 4});
    EXPECT_EQ(to_vec(t.value(t.add(a, b))), (std::vector<double>{4, 6}));
    const Var p = t.mul(a, b);
    EXPECT_EQ(to_vec(t.value(p)), (std::vector<double>{3, 8}));
    t.backward(t.sum(p));
    EXPECT_EQ(to_vec(t.grad(a)), (std::vector<double>{3, 4}));
    EXPECT_EQ(to_vec(t.grad(b)), (std::vector<double>{1, 2}));
}

TEST(Autodiff, LengthMismatch) {
    Tape t;
    const Var a = t.leaf({1, 2});
    const Var b = t.leaf({1, 2, 3});
    EXPECT_THROW((void)t.add(a, b), qlstm::ShapeError);
    EXPECT_THROW((void)t.mul(a, b), qlstm::ShapeError);
    EXPECT_THROW((void)t.sub(a, b), qlstm::ShapeError);
    EXPECT_THROW((void)t.slice(a, 1, 2), qlstm::ShapeError);
}

TEST(Autodiff, Activations) {
    Tape t;
    const Var z = t.leaf({0.0});
    EXPECT_EQ(t.value(t.sigmoid(z))[0], 0.5);
    EXPECT_EQ(t.value(t.tanh(z))[0], 0.0);

    const Var big = t.leaf({40.0});
    const Var s = t.sigmoid(big);
    EXPECT_NEAR(t.value(s)[0], 1.0, 1e-15);
    t.backward(s);
    EXPECT_NEAR(t.grad(big)[0], 0.0, 1e-15);

    Tape u;
    const Var one = u.leaf({1.0});
    u.backward(u.tanh(one));
    EXPECT_NEAR(u.grad(one)[0], 0.4199743, 1e-7);
    EXPECT_NEAR(u.grad(one)[0], 1.0 - std::tanh(1.0) * std::tanh(1.0), 1e-15);
}

TEST(Autodiff, SigmoidIsStableForLargeNegativeInputs) {
    Tape t;
    const Var x = t.leaf({-800.0});
    const Var s = t.sigmoid(x);
    EXPECT_EQ(t.value(s)[0], 0.0);
    EXPECT_TRUE(std::isfinite(t.value(s)[0]));
}

TEST(Autodiff, Affine) {
    Tape t;
    const Var x = t.leaf({2, 3});
    const Var eye = t.leaf({1, 0, 0, 1});
    const Var zero = t.leaf({0, 0});
    EXPECT_EQ(to_vec(t.value(t.affine(x, eye, zero))), (std::vector<double>{2, 3}));
    const Var w = t.leaf({1, 1});
    const Var b = t.leaf({0});
    EXPECT_EQ(to_vec(t.value(t.affine(x, w, b))), (std::vector<double>{5}));
    const Var bad = t.leaf({1, 1, 1});
    EXPECT_THROW((void)t.affine(x, bad, b), qlstm::ShapeError);
}

TEST(Autodiff, AffineFiniteDifference5x6) {
    std::mt19937_64 rng(3);
    const auto x0 = oracle::random_vector(6, -1, 1, rng);
    const auto w0 = oracle::random_vector(30, -1, 1, rng);
    const auto b0 = oracle::random_vector(5, -1, 1, rng);
    auto loss = [&](Tape &t, Var x, Var w, Var b) { return t.sum(t.tanh(t.affine(x, w, b))); };

    Tape t;
    const Var x = t.leaf(x0), w = t.leaf(w0), b = t.leaf(b0);
    t.backward(loss(t, x, w, b));
    auto fd_of = [&](int which) {
        const auto &base = which == 0 ? x0 : which == 1 ? w0 : b0;
        return oracle::central_difference(
            [&](std::span<const double> p) {
                Tape u;
                std::vector<double> pv(p.begin(), p.end());
                const Var xx = u.leaf(which == 0 ? pv : x0);
                const Var ww = u.leaf(which == 1 ? pv : w0);
                const Var bb = u.leaf(which == 2 ? pv : b0);
                return u.value(loss(u, xx, ww, bb))[0];
            },
            base, 1e-6);
    };
    EXPECT_LE(oracle::max_abs_diff(t.grad(x), fd_of(0)), 1e-6);
    EXPECT_LE(oracle::max_abs_diff(t.grad(w), fd_of(1)), 1e-6);
    EXPECT_LE(oracle::max_abs_diff(t.grad(b), fd_of(2)), 1e-6);
}

TEST(Autodiff, FiniteDifferencePropertyForEveryOp) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const auto x0 = oracle::random_vector(4, -2, 2, rng);
        const auto c0 = oracle::random_vector(4, -2, 2, rng);
        check_fd([](Tape &t, Var x) { return t.sigmoid(x); }, x0, 1e-5);
        check_fd([](Tape &t, Var x) { return t.tanh(x); }, x0, 1e-5);
        check_fd([](Tape &t, Var x) { return t.mul(x, t.tanh(x)); }, x0, 1e-5);
        check_fd([&](Tape &t, Var x) { return t.sub(t.mul(x, x), t.leaf(c0)); }, x0, 1e-5);
        check_fd([&](Tape &t, Var x) { return t.add(t.sigmoid(x), t.leaf(c0)); }, x0, 1e-5);
        check_fd([](Tape &t, Var x) { return t.concat(t.slice(x, 1, 2), t.tanh(x)); }, x0, 1e-5);
        check_fd([&](Tape &t, Var x) { return t.squared_error(t.tanh(x), c0); }, x0, 1e-5);
    }
}

TEST(Autodiff, BackwardBasics) {
    Tape t;
    const Var x = t.leaf({3.0});
    t.backward(x);
    EXPECT_EQ(t.grad(x)[0], 1.0);

    Tape u;
    const Var y = u.leaf({1, 2});
    u.backward(u.sum(u.mul(y, y)));
    EXPECT_EQ(to_vec(u.grad(y)), (std::vector<double>{2, 4}));
}

TEST(Autodiff, FanOutAccumulates) {
    Tape t;
    const Var x = t.leaf({0.5, -1.5});
    const Var a = t.tanh(x);
    // x feeds three consumers.
    t.backward(t.sum(t.add(t.mul(x, x), t.add(a, x))));
    for (std::size_t i = 0; i < 2; ++i) {
        const double v = t.value(x)[i];
        EXPECT_NEAR(t.grad(x)[i], 2 * v + (1 - std::tanh(v) * std::tanh(v)) + 1, 1e-15);
    }
}

TEST(Autodiff, BackwardErrors) {
    Tape t;
    const Var v = t.leaf({1, 2});
    EXPECT_THROW(t.backward(v), qlstm::ShapeError);
    const Var s = t.sum(v);
    t.backward(s);
    EXPECT_THROW(t.backward(s), qlstm::StateError);
    t.zero_grads();
    EXPECT_NO_THROW(t.backward(s));
}

TEST(Autodiff, ZeroGradsThenBackwardIsIdempotent) {
    Tape t;
    const Var x = t.leaf({0.3, 0.7, -0.2});
    const Var loss = t.sum(t.mul(t.sigmoid(x), t.tanh(x)));
    t.backward(loss);
    const auto first = to_vec(t.grad(x));
    t.zero_grads();
    t.backward(loss);
    EXPECT_EQ(first, to_vec(t.grad(x)));
}

TEST(Autodiff, QuantumNodeZeroUpstream) {
    const qlstm::vqc::VqcSpec spec{4, 2, 4};
    Tape t;
    const Var p = t.leaf(qlstm::vqc::init_params(spec, 3).angles);
    const Var in = t.leaf({0.1, 0.2, 0.3, 0.4});
    const Var q = t.quantum(spec, p, in);
    // Consume q with a zero weight so the upstream into the block is exactly zero.
    const Var w = t.leaf({0, 0, 0, 0});
    const Var b = t.leaf({0});
    t.backward(t.affine(q, w, b));
    for (double g : t.grad(p))
        EXPECT_EQ(g, 0.0);
    for (double g : t.grad(in))
        EXPECT_EQ(g, 0.0);
}

TEST(Autodiff, QuantumNodeEngineSwapAndFiniteDifference) {
    const qlstm::vqc::VqcSpec spec{4, 2, 3};
    std::mt19937_64 rng(19);
    const auto p0 = qlstm::vqc::init_params(spec, 5).angles;
    const auto x0 = oracle::random_vector(4, -1, 1, rng);
    auto run = [&](qlstm::vqc::GradEngine e, std::vector<double> &gp, std::vector<double> &gx) {
        Tape t;
        const Var p = t.leaf(p0);
        const Var x = t.leaf(x0);
        const Var q = t.quantum(spec, p, t.tanh(x), e);
        t.backward(t.sum(t.mul(t.sigmoid(q), q)));
        gp = to_vec(t.grad(p));
        gx = to_vec(t.grad(x));
    };
    std::vector<double> ap, ax, sp, sx;
    run(qlstm::vqc::GradEngine::adjoint, ap, ax);
    run(qlstm::vqc::GradEngine::shift, sp, sx);
    EXPECT_LE(oracle::max_abs_diff(ap, sp), 1e-8);
    EXPECT_LE(oracle::max_abs_diff(ax, sx), 1e-8);

    const auto fd = oracle::central_difference(
        [&](std::span<const double> pt) {
            Tape t;
            const Var p = t.leaf({pt.begin(), pt.end()});
            const Var x = t.leaf(x0);
            const Var q = t.quantum(spec, p, t.tanh(x));
            return t.value(t.sum(t.mul(t.sigmoid(q), q)))[0];
        },
        p0, 1e-4);
    EXPECT_LE(oracle::normwise_relative(ap, fd), 1e-4);
}
