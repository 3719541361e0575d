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

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dqpa/allocators.hpp"
#include "dqpa/experiments.hpp"
#include "dqpa/netsim.hpp"

using namespace dqpa;

namespace {

InterferenceInstance manual(int links, std::vector<double> a, double noise,
                            double p_max) {
    InterferenceInstance inst;
    inst.links = links;
    inst.a = std::move(a);
    inst.noise_w = noise;
    inst.p_max_w = p_max;
    for (int i = 0; i < links; ++i)
        inst.link_ids.push_back({i, 0});
    return inst;
}

InterferenceInstance single_link(double gain = 1.0) {
    return manual(1, {gain}, 0.01, 2.0);
}

} // namespace

TEST_CASE("same-cell links couple through the victim's serving gain") {
    Topology topo;
    topo.rows = 1;
    topo.cols = 1;
    topo.width_km = 2.0;
    topo.height_km = 2.0;
    topo.centers = {{0.0, 0.0}};
    topo.neighbors = {{}};
    GainTensor g;
    g.n_bs = 1;
    g.n_cells = 1;
    g.users_per_cell = 2;
    g.g = {3.0, 5.0};
    const InterferenceInstance inst = build_instance(g, topo, 0.01, 1.0);
    REQUIRE(inst.links == 2);
    CHECK(inst.at(0, 0) == 3.0);
    CHECK(inst.at(0, 1) == 3.0);
    CHECK(inst.at(1, 0) == 5.0);
    CHECK(inst.at(1, 1) == 5.0);
}

TEST_CASE("links beyond the interferer sets do not couple") {
    ChannelConfig cfg;
    cfg.n_cells = 25;
    cfg.users_per_cell = 1;
    cfg.neighbor_cap = 4;
    const Topology topo = build_topology(cfg);
    Env env = make_env(topo, cfg, 41, 0);
    const InterferenceInstance inst =
        build_instance(env.gains(), topo, cfg.noise_w, 1.0);
    for (int i = 0; i < inst.links; ++i) {
        const int cell_i = inst.link_ids[std::size_t(i)][0];
        for (int j = 0; j < inst.links; ++j) {
            if (i == j)
                continue;
            const int cell_j = inst.link_ids[std::size_t(j)][0];
            bool neighbor = cell_i == cell_j;
            for (int nb : topo.neighbors[cell_i])
                neighbor = neighbor || nb == cell_j;
            if (!neighbor)
                CHECK(inst.at(i, j) == 0.0);
            else
                CHECK(inst.at(i, j) > 0.0);
        }
    }
}

TEST_CASE("the flattened objective reproduces the simulator sum rate") {
    ChannelConfig cfg;
    cfg.n_cells = 9;
    cfg.users_per_cell = 2;
    const Topology topo = build_topology(cfg);
    Rng rng(43);
    for (std::uint64_t ep = 0; ep < 5; ++ep) {
        Env env = make_env(topo, cfg, 47, ep);
        const InterferenceInstance inst =
            build_instance(env.gains(), topo, cfg.noise_w, 6.3);
        PowerAllocation p = PowerAllocation::zero(9, 2);
        for (double& v : p.p)
            v = rng.uniform() * 6.3;
        const double from_sim =
            compute_rates(compute_sinr(env.gains(), p, cfg.noise_w, topo)).sum_rate;
        CHECK(objective(inst, p.p) == doctest::Approx(from_sim).epsilon(1e-12));
    }
}

TEST_CASE("an interference-free link transmits at full power") {
    const InterferenceInstance inst = single_link();
    const AllocResult fp = fp_allocate(inst);
    const AllocResult wm = wmmse_allocate(inst);
    CHECK(fp.p[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(wm.p[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fp.converged);
    CHECK(wm.converged);
}

TEST_CASE("solver traces never lose ground") {
    FeatureConfig fc;
    for (int i = 0; i < 200; ++i) {
        const InterferenceInstance inst = random_instance(53, std::uint64_t(i), fc);
        for (const AllocResult& res : {fp_allocate(inst), wmmse_allocate(inst)}) {
            REQUIRE(!res.trace.empty());
            for (std::size_t k = 1; k < res.trace.size(); ++k)
                CHECK(res.trace[k] >= res.trace[k - 1] - 1e-9);
        }
    }
}

TEST_CASE("solvers start from the full-power objective") {
    FeatureConfig fc;
    const InterferenceInstance inst = random_instance(59, 0, fc);
    const double at_max = objective(inst, max_power(inst));
    const AllocResult fp = fp_allocate(inst);
    const AllocResult wm = wmmse_allocate(inst);
    CHECK(fp.trace.front() == doctest::Approx(at_max).epsilon(1e-12));
    CHECK(wm.trace.front() == doctest::Approx(at_max).epsilon(1e-12));
    CHECK(fp.trace.back() >= at_max - 1e-9);
    CHECK(wm.trace.back() >= at_max - 1e-9);
}

TEST_CASE("weak coupling leaves little room under the grid optimum") {
    Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(9, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                a[std::size_t(i) * 3 + j] =
                    i == j ? 0.5 + rng.uniform() : 1e-3 * rng.uniform();
        const InterferenceInstance inst = manual(3, a, 0.01, 1.0);
        const double oracle = brute_force(inst, 50).value;
        CHECK(objective(inst, fp_allocate(inst).p) >= 0.98 * oracle);
        CHECK(objective(inst, wmmse_allocate(inst).p) >= 0.98 * oracle);
    }
}

TEST_CASE("crushing interference shuts one of two links") {
    // Near-symmetric pair with cross gains far above direct gains: the
    // optimum parks one link and the iterations must find it.
    const InterferenceInstance inst =
        manual(2, {1.0, 10.0, 9.7, 0.98}, 0.01, 1.0);
    const BruteForceResult bf = brute_force(inst, 50);
    CHECK((bf.p[0] == 0.0 || bf.p[1] == 0.0));
    CHECK(std::max(bf.p[0], bf.p[1]) == 1.0);
    const AllocResult wm = wmmse_allocate(inst);
    CHECK(std::max(wm.p[0], wm.p[1]) > 0.9);
    CHECK(std::min(wm.p[0], wm.p[1]) < 0.05);
    CHECK(objective(inst, wm.p) >= 0.95 * bf.value);
    const AllocResult fp = fp_allocate(inst);
    CHECK(objective(inst, fp.p) >= 0.95 * bf.value);
}

TEST_CASE("solutions respect the power budget") {
    FeatureConfig fc;
    for (int i = 0; i < 50; ++i) {
        const InterferenceInstance inst = random_instance(67, std::uint64_t(i), fc);
        for (const AllocResult& res : {fp_allocate(inst), wmmse_allocate(inst)}) {
            for (double p : res.p) {
                CHECK(p >= 0.0);
                CHECK(p <= inst.p_max_w + 1e-12);
            }
        }
    }
}

TEST_CASE("solvers are deterministic over reruns") {
    FeatureConfig fc;
    const InterferenceInstance inst = random_instance(71, 3, fc);
    CHECK(fp_allocate(inst).p == fp_allocate(inst).p);
    CHECK(wmmse_allocate(inst).p == wmmse_allocate(inst).p);
}

TEST_CASE("max power fills every link") {
    const InterferenceInstance inst = manual(3, std::vector<double>(9, 1.0), 0.1, 2.5);
    const std::vector<double> p = max_power(inst);
    for (double v : p)
        CHECK(v == 2.5);
}

TEST_CASE("random powers use the whole ladder evenly") {
    const InterferenceInstance inst = single_link();
    std::vector<double> levels;
    for (int i = 0; i < 10; ++i)
        levels.push_back(double(i));
    Rng rng(73);
    std::vector<int> counts(10, 0);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const std::vector<double> p = random_power(inst, levels, rng);
        ++counts[std::size_t(p[0])];
    }
    for (int count : counts)
        CHECK(std::abs(double(count) / draws - 0.1) < 0.02);
}

TEST_CASE("a one-level ladder forces silence") {
    const InterferenceInstance inst = manual(2, {1.0, 0.1, 0.1, 1.0}, 0.01, 1.0);
    Rng rng(79);
    const std::vector<double> p = random_power(inst, {0.0}, rng);
    CHECK(p == std::vector<double>{0.0, 0.0});
    CHECK(objective(inst, p) == 0.0);
}

TEST_CASE("exhaustive search counts its grid exactly") {
    const InterferenceInstance inst = manual(2, {1.0, 0.2, 0.2, 1.0}, 0.01, 1.0);
    const BruteForceResult res = brute_force(inst, 10);
    CHECK(res.evaluations == 100);
}

TEST_CASE("exhaustive search on one link picks the budget") {
    const InterferenceInstance inst = single_link();
    const BruteForceResult res = brute_force(inst, 50);
    CHECK(res.p[0] == 2.0);
    CHECK(res.value == doctest::Approx(std::log2(1.0 + 2.0 / 0.01)).epsilon(1e-12));
}

TEST_CASE("exhaustive search refuses oversized grids") {
    const InterferenceInstance inst =
        manual(3, std::vector<double>(9, 1.0), 0.01, 1.0);
    CHECK_THROWS_AS(brute_force(inst, 216), std::length_error);
    CHECK_THROWS_AS(brute_force(inst, 1), std::invalid_argument);
}

TEST_CASE("ties go to the lexicographically smallest grid point") {
    // Two decoupled identical links with two levels each: (p_max, p_max) is
    // optimal and unique, but an all-zero direct gain makes every allocation
    // worthless and the search must return all zeros.
    const InterferenceInstance decoupled =
        manual(2, {1.0, 0.0, 0.0, 1.0}, 0.01, 1.0);
    const BruteForceResult best = brute_force(decoupled, 2);
    CHECK(best.p == std::vector<double>{1.0, 1.0});

    const InterferenceInstance dead = manual(2, {0.0, 0.0, 0.0, 0.0}, 0.01, 1.0);
    const BruteForceResult tied = brute_force(dead, 3);
    CHECK(tied.p == std::vector<double>{0.0, 0.0});
}

TEST_CASE("the grid optimum cannot trail a solver by much") {
    FeatureConfig fc;
    for (int i = 0; i < 20; ++i) {
        const InterferenceInstance inst =
            random_instance(83, std::uint64_t(i), fc, 2);
        const double oracle = brute_force(inst, 50).value;
        const double fp = objective(inst, fp_allocate(inst).p);
        CHECK(oracle >= fp * 0.98);
    }
}
