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

#include "dqpa/allocators.hpp"
#include "dqpa/experiments.hpp"
#include "dqpa/features.hpp"

namespace {

dqpa::InterferenceInstance fixed_instance(int cells) {
    dqpa::FeatureConfig fc;
    return dqpa::random_instance(42, 0, fc, cells);
}

void bm_fp_allocate(benchmark::State& state) {
    const auto inst = fixed_instance(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(dqpa::fp_allocate(inst));
}
BENCHMARK(bm_fp_allocate)->Arg(3)->Arg(9);

void bm_wmmse_allocate(benchmark::State& state) {
    const auto inst = fixed_instance(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(dqpa::wmmse_allocate(inst));
}
BENCHMARK(bm_wmmse_allocate)->Arg(3)->Arg(9);

void bm_brute_force(benchmark::State& state) {
    const auto inst = fixed_instance(3);
    const int levels = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(dqpa::brute_force(inst, levels));
}
BENCHMARK(bm_brute_force)->Arg(10)->Arg(25)->Arg(50);

} // namespace
