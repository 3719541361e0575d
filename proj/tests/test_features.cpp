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

#include "dqpa/features.hpp"

using namespace dqpa;

namespace {

Topology mutual_topology(int cells) {
    Topology topo;
    topo.rows = 1;
    topo.cols = cells;
    topo.width_km = 2.0 * cells;
    topo.height_km = 2.0;
    topo.neighbors.resize(cells);
    for (int n = 0; n < cells; ++n) {
        topo.centers.push_back({2.0 * n, 0.0});
        for (int m = 0; m < cells; ++m)
            if (m != n)
                topo.neighbors[n].push_back(m);
    }
    return topo;
}

GainTensor tensor(int cells, int users, const std::vector<double>& g) {
    GainTensor t;
    t.n_bs = cells;
    t.n_cells = cells;
    t.users_per_cell = users;
    t.g = g;
    return t;
}

} // namespace

TEST_CASE("same-cell companions enter with unit weight") {
    const Topology topo = mutual_topology(2);
    // bs0 -> [u00 u01 u10 u11], bs1 -> same victims.
    const GainTensor g = tensor(2, 2, {1.0, 2.0, 0.25, 0.5, //
                                       3.0, 6.0, 1.0, 1.0});
    const auto set = interferer_set(g, 0, 0, topo);
    REQUIRE(set.size() == 3); // (|D_n| + 1) K - 1 with one neighbor, K = 2
    bool found_intra = false;
    for (const auto& e : set)
        if (e.cell == 0 && e.user == 1) {
            found_intra = true;
            CHECK(e.value == 1.0);
        }
    CHECK(found_intra);
}

TEST_CASE("a threefold interferer scores two bits") {
    const Topology topo = mutual_topology(2);
    const GainTensor g = tensor(2, 1, {1.0, 0.1, 3.0, 1.0});
    const auto set = interferer_set(g, 0, 0, topo);
    REQUIRE(set.size() == 1);
    CHECK(set[0].cell == 1);
    CHECK(set[0].value == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("the reference-scenario interferer set holds seventy-five entries") {
    ChannelConfig cfg;
    cfg.n_cells = 25;
    cfg.users_per_cell = 4;
    const Topology topo = build_topology(cfg);
    Env env = make_env(topo, cfg, 19, 0);
    const auto set = interferer_set(env.gains(), 3, 1, topo);
    CHECK(int(set.size()) == 75);
}

TEST_CASE("interferer entries are sorted strongest first with index ties") {
    const Topology topo = mutual_topology(3);
    // Both neighbors of cell 0 present identical gains, so their entries tie
    // and the lower cell index must come first.
    const GainTensor g = tensor(3, 2,
                                {1.0, 1.0, 0.2, 0.2, 0.2, 0.2, //
                                 0.6, 0.6, 1.0, 1.0, 0.1, 0.1, //
                                 0.6, 0.6, 0.1, 0.1, 1.0, 1.0});
    const auto set = interferer_set(g, 0, 0, topo);
    REQUIRE(set.size() == 5);
    for (std::size_t i = 1; i < set.size(); ++i) {
        CHECK(set[i - 1].value >= set[i].value);
        if (set[i - 1].value == set[i].value) {
            const bool ascending =
                set[i - 1].cell < set[i].cell ||
                (set[i - 1].cell == set[i].cell && set[i - 1].user < set[i].user);
            CHECK(ascending);
        }
    }
    // The intra-cell one outranks the cross entries log2(1 + 0.6) < 1.
    CHECK(set[0].cell == 0);
    CHECK(set[0].user == 1);
    CHECK(set[0].value == 1.0);
    CHECK(set[1].cell == 1);
    CHECK(set[3].cell == 2);
}

TEST_CASE("a dead serving channel is refused") {
    const Topology topo = mutual_topology(2);
    const GainTensor g = tensor(2, 1, {0.0, 1.0, 1.0, 1.0});
    CHECK_THROWS_AS(interferer_set(g, 0, 0, topo), std::domain_error);
}

TEST_CASE("the default observation spans fifty values") {
    FeatureConfig cfg;
    CHECK(cfg.state_length() == 50);
    ChannelConfig cc;
    cc.n_cells = 25;
    cc.users_per_cell = 4;
    const Topology topo = build_topology(cc);
    Env env = make_env(topo, cc, 23, 0);
    const auto set = interferer_set(env.gains(), 0, 0, topo);
    const auto state = build_state(set, env.prev_rates(), env.prev_powers(), 0, 0, cfg);
    CHECK(int(state.size()) == 50);
}

TEST_CASE("missing interferers zero-pad every block") {
    const Topology topo = mutual_topology(2);
    const GainTensor g = tensor(2, 2, {1.0, 1.0, 0.5, 0.5, //
                                       2.0, 2.0, 1.0, 1.0});
    FeatureConfig cfg;
    cfg.top_interferers = 4;
    RateReport prev = RateReport::zero(4);
    prev.rate = {0.9, 0.8, 0.7, 0.6};
    PowerAllocation prev_p{2, 2, {1.0, 2.0, 3.0, 4.0}};
    const auto set = interferer_set(g, 0, 0, topo); // 3 entries, top_c = 4
    REQUIRE(set.size() == 3);
    const auto state = build_state(set, prev, prev_p, 0, 0, cfg);
    REQUIRE(int(state.size()) == 14);
    CHECK(state[3] == 0.0);  // fourth interferer weight
    CHECK(state[7] == 0.0);  // fourth companion rate
    CHECK(state[11] == 0.0); // fourth companion power
}

TEST_CASE("companion features carry the previous slot verbatim") {
    const Topology topo = mutual_topology(2);
    const GainTensor g = tensor(2, 1, {1.0, 0.1, 3.0, 1.0});
    FeatureConfig cfg;
    cfg.top_interferers = 2;
    RateReport prev = RateReport::zero(2);
    prev.rate = {0.25, 1.75};
    PowerAllocation prev_p{2, 1, {cfg.p_max_w, 0.5 * cfg.p_max_w}};
    const auto set = interferer_set(g, 0, 0, topo);
    const auto state = build_state(set, prev, prev_p, 0, 0, cfg);
    REQUIRE(int(state.size()) == 8);
    CHECK(state[0] == doctest::Approx(2.0).epsilon(1e-15)); // log2(1 + 3)
    CHECK(state[1] == 0.0);                                 // padded
    CHECK(state[2] == 1.75);                                // interferer rate, raw
    CHECK(state[4] == 0.5);                                 // interferer power / p_max
    CHECK(state[6] == 0.25);                                // own previous rate
    CHECK(state[7] == 1.0);                                 // own previous power / p_max
}

TEST_CASE("observation length ignores the scenario size") {
    FeatureConfig cfg;
    for (auto [cells, users] : {std::pair{4, 1}, {9, 2}, {25, 4}}) {
        ChannelConfig cc;
        cc.n_cells = cells;
        cc.users_per_cell = users;
        const Topology topo = build_topology(cc);
        Env env = make_env(topo, cc, 29, 0);
        const auto set = interferer_set(env.gains(), 0, 0, topo);
        const auto state =
            build_state(set, env.prev_rates(), env.prev_powers(), 0, 0, cfg);
        CHECK(int(state.size()) == 50);
    }
}

TEST_CASE("the power ladder spans five to thirty-eight dBm") {
    FeatureConfig cfg;
    const ActionSet set = build_action_set(cfg);
    REQUIRE(set.size() == 10);
    CHECK(set.levels[0] == 0.0);
    CHECK(set.levels[1] == doctest::Approx(3.1622776601683794e-3).epsilon(1e-14));
    CHECK(set.levels[9] == doctest::Approx(6.30957344480193).epsilon(1e-14));
    const double expected_dbm[] = {5.0,  9.125, 13.25, 17.375, 21.5,
                                   25.625, 29.75, 33.875, 38.0};
    for (int i = 1; i < 10; ++i) {
        const double dbm = 10.0 * std::log10(set.levels[i] * 1e3);
        CHECK(dbm == doctest::Approx(expected_dbm[i - 1]).epsilon(1e-12));
    }
}

TEST_CASE("three levels collapse to off, floor and ceiling") {
    FeatureConfig cfg;
    cfg.action_count = 3;
    const ActionSet set = build_action_set(cfg);
    REQUIRE(set.size() == 3);
    CHECK(set.levels[0] == 0.0);
    CHECK(set.levels[1] == doctest::Approx(cfg.p_min_w).epsilon(1e-15));
    CHECK(set.levels[2] == doctest::Approx(cfg.p_max_w).epsilon(1e-15));
}

TEST_CASE("fewer than three levels cannot span the ladder") {
    FeatureConfig cfg;
    cfg.action_count = 2;
    CHECK_THROWS_AS(build_action_set(cfg), std::invalid_argument);
    cfg.action_count = 1;
    CHECK_THROWS_AS(build_action_set(cfg), std::invalid_argument);
}

TEST_CASE("nonzero rungs keep a constant ratio") {
    FeatureConfig cfg;
    const ActionSet set = build_action_set(cfg);
    const double ratio = set.levels[2] / set.levels[1];
    for (int i = 2; i + 1 < set.size(); ++i)
        CHECK(set.levels[i + 1] / set.levels[i] ==
              doctest::Approx(ratio).epsilon(1e-12));
    for (int i = 0; i + 1 < set.size(); ++i)
        CHECK(set.levels[i] < set.levels[i + 1]);
}
