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

#include "dqpa/channel.hpp"
#include "dqpa/rng.hpp"
#include "dqpa/topology.hpp"

namespace {

dqpa::ChannelConfig scenario(int cells, int users) {
    dqpa::ChannelConfig cfg;
    cfg.n_cells = cells;
    cfg.users_per_cell = users;
    return cfg;
}

void bm_jakes_step(benchmark::State& state) {
    const auto cfg = scenario(int(state.range(0)), int(state.range(1)));
    dqpa::Rng fading(1);
    auto ss = dqpa::init_small_scale(cfg, fading);
    for (auto _ : state) {
        dqpa::jakes_step(ss, fading);
        benchmark::DoNotOptimize(ss.h.data());
    }
}
BENCHMARK(bm_jakes_step)->Args({9, 2})->Args({25, 4});

void bm_assemble_gains(benchmark::State& state) {
    const auto cfg = scenario(int(state.range(0)), int(state.range(1)));
    const auto topo = dqpa::build_topology(cfg);
    dqpa::Rng placement(2), shadowing(3), fading(4);
    const auto layout = dqpa::drop_users(topo, cfg, placement, shadowing);
    const auto ss = dqpa::init_small_scale(cfg, fading);
    for (auto _ : state)
        benchmark::DoNotOptimize(dqpa::assemble_gains(layout, ss));
}
BENCHMARK(bm_assemble_gains)->Args({9, 2})->Args({25, 4});

void bm_drop_users(benchmark::State& state) {
    const auto cfg = scenario(int(state.range(0)), int(state.range(1)));
    const auto topo = dqpa::build_topology(cfg);
    dqpa::Rng placement(2), shadowing(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(dqpa::drop_users(topo, cfg, placement, shadowing));
}
BENCHMARK(bm_drop_users)->Args({25, 4});

} // namespace
