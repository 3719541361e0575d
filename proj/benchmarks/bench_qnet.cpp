// dqpa: multi-cell downlink power allocation with deep Q learning
// Copyright (C) 2026 the dqpa developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include <vector>

#include "dqpa/dql.hpp"
#include "dqpa/qnet.hpp"
#include "dqpa/replay.hpp"
#include "dqpa/rng.hpp"

namespace {

dqpa::QNetwork reference_net(dqpa::Rng& rng) {
    return dqpa::QNetwork::glorot_init(50, 128, 64, 10, rng);
}

void bm_forward(benchmark::State& state) {
    dqpa::Rng rng(1);
    const auto net = reference_net(rng);
    Eigen::VectorXd input(50);
    for (int i = 0; i < 50; ++i)
        input[i] = rng.uniform();
    for (auto _ : state)
        benchmark::DoNotOptimize(net.forward(input));
}
BENCHMARK(bm_forward);

void bm_forward_batch(benchmark::State& state) {
    dqpa::Rng rng(2);
    const auto net = reference_net(rng);
    const int batch = int(state.range(0));
    Eigen::MatrixXd states(50, batch);
    for (int b = 0; b < batch; ++b)
        for (int i = 0; i < 50; ++i)
            states(i, b) = rng.uniform();
    for (auto _ : state)
        benchmark::DoNotOptimize(net.forward_batch(states));
}
BENCHMARK(bm_forward_batch)->Arg(64)->Arg(256);

void bm_train_step(benchmark::State& state) {
    dqpa::Rng rng(3);
    auto net = reference_net(rng);
    dqpa::ReplayMemory memory(50000);
    for (int r = 0; r < 2000; ++r) {
        dqpa::Experience e;
        e.state.resize(50);
        for (double& v : e.state)
            v = rng.uniform();
        e.action = int(rng.uniform_below(10));
        e.reward = rng.uniform();
        memory.push(std::move(e));
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(
            dqpa::train_step(net, memory, 0.0, 1e-3, 256, rng));
}
BENCHMARK(bm_train_step);

} // namespace
