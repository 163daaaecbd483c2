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
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qlstm/data.hpp"
#include "qlstm/models.hpp"
#include "qlstm/train.hpp"
#include "qlstm/vqc.hpp"

namespace {

using namespace qlstm;

struct VqcCase {
    vqc::VqcSpec spec;
    vqc::VqcParams params;
    std::vector<double> input;
    std::vector<double> upstream;

    explicit VqcCase(int depth) : spec{4, depth, 4} {
        params = vqc::init_params(spec, 3);
        input = {0.1, -0.4, 0.7, 0.2};
        upstream = {1.0, -0.5, 0.25, 0.75};
    }
};

void BM_VqcForward(benchmark::State &state) {
    const VqcCase c(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(vqc::vqc_forward(c.spec, c.params, c.input));
}
BENCHMARK(BM_VqcForward)->Arg(1)->Arg(2)->Arg(4);

void BM_VqcGradAdjoint(benchmark::State &state) {
    const VqcCase c(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(vqc::vqc_grad_adjoint(c.spec, c.params, c.input, c.upstream));
}
BENCHMARK(BM_VqcGradAdjoint)->Arg(1)->Arg(2)->Arg(4);

void BM_VqcGradShift(benchmark::State &state) {
    const VqcCase c(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(vqc::vqc_grad_shift(c.spec, c.params, c.input, c.upstream));
}
BENCHMARK(BM_VqcGradShift)->Arg(1)->Arg(2)->Arg(4);

void BM_WindowLossGrad(benchmark::State &state) {
    const bool quantum = state.range(0) == 0;
    const model::Model m = quantum ? model::Model{model::QlstmParams::init(1)}
                                   : model::Model{model::LstmParams::init(1)};
    const std::vector<double> window{0.1, 0.3, 0.5, 0.7};
    for (auto _ : state)
        benchmark::DoNotOptimize(model::window_loss_grad(m, window, 0.9));
    state.SetLabel(quantum ? "qlstm" : "lstm");
}
BENCHMARK(BM_WindowLossGrad)->Arg(0)->Arg(1);

void BM_TrainEpochSine(benchmark::State &state) {
    const auto ds = data::make_windows(data::rescale_minmax(data::gen_sine()).first);
    train::TrainConfig cfg;
    cfg.max_epochs = 1;
    cfg.threads = static_cast<unsigned>(state.range(0));
    const model::Model m = model::QlstmParams::init(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(train::train(m, ds, cfg));
}
BENCHMARK(BM_TrainEpochSine)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
