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
#include <numeric>
#include <stdexcept>

#include "dqpa/netsim.hpp"
#include "dqpa/units.hpp"

using namespace dqpa;

namespace {

// A hand-built scenario: `cells` mutually interfering cells, K users each,
// all gains supplied by the caller.
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

TEST_CASE("an isolated unit link has unit signal-to-noise ratio") {
    // One cell, one user; the noise floor equals the received power.
    Topology topo = mutual_topology(1);
    topo.neighbors = {{}};
    const GainTensor g = tensor(1, 1, {1.0});
    const PowerAllocation p{1, 1, {1.0}};
    const std::vector<double> sinr = compute_sinr(g, p, 1.0, topo);
    REQUIRE(sinr.size() == 1);
    CHECK(sinr[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("intra-cell interference rides the victim's serving channel") {
    Topology topo = mutual_topology(1);
    topo.neighbors = {{}};
    // Two users in one cell; user 1 sees its own power against the
    // same-channel power sent to user 0.
    const GainTensor g = tensor(1, 2, {2.0, 1.0});
    const PowerAllocation p{1, 2, {1.0, 1.0}};
    const std::vector<double> sinr = compute_sinr(g, p, 0.0, topo);
    CHECK(sinr[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sinr[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cross-cell interference adds the neighbor's full budget") {
    const Topology topo = mutual_topology(2);
    // g[bs][cell * K + user]: direct gains 1, cross gains 0.5.
    const GainTensor g = tensor(2, 1, {1.0, 0.5, 0.5, 1.0});
    const PowerAllocation p{2, 1, {1.0, 1.0}};
    const std::vector<double> sinr = compute_sinr(g, p, 0.5, topo);
    CHECK(sinr[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sinr[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("negative noise and empty denominators are rejected") {
    Topology topo = mutual_topology(1);
    topo.neighbors = {{}};
    const GainTensor g = tensor(1, 1, {1.0});
    const PowerAllocation p{1, 1, {1.0}};
    CHECK_THROWS_AS(compute_sinr(g, p, -1.0, topo), std::domain_error);
    const PowerAllocation zero{1, 1, {0.0}};
    CHECK_THROWS_AS(compute_sinr(g, zero, 0.0, topo), std::domain_error);
}

TEST_CASE("rates follow the Shannon map") {
    const RateReport r = compute_rates({1.0, 0.0, 3.0});
    CHECK(r.rate[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.rate[1] == 0.0);
    CHECK(r.rate[2] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.sum_rate == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("raising one power helps that link and hurts no other") {
    ChannelConfig cfg;
    cfg.n_cells = 9;
    cfg.users_per_cell = 2;
    const Topology topo = build_topology(cfg);
    Env env = make_env(topo, cfg, 31, 0);
    const GainTensor& g = env.gains();

    PowerAllocation p = PowerAllocation::zero(cfg.n_cells, cfg.users_per_cell);
    Rng rng(5);
    for (double& v : p.p)
        v = rng.uniform();
    const std::vector<double> base = compute_sinr(g, p, cfg.noise_w, topo);

    PowerAllocation bumped = p;
    const int target = 7;
    bumped.p[target] += 0.5;
    const std::vector<double> after = compute_sinr(g, bumped, cfg.noise_w, topo);
    CHECK(after[target] > base[target]);
    for (std::size_t l = 0; l < base.size(); ++l)
        if (int(l) != target)
            CHECK(after[l] <= base[l] + 1e-15);
}

TEST_CASE("common scaling of gains and noise cancels") {
    const Topology topo = mutual_topology(3);
    Rng rng(11);
    std::vector<double> g(9);
    for (double& v : g)
        v = 0.1 + rng.uniform();
    const GainTensor base = tensor(3, 1, g);
    for (double& v : g)
        v *= 1e6;
    const GainTensor scaled = tensor(3, 1, g);
    const PowerAllocation p{3, 1, {0.3, 0.7, 1.1}};
    const std::vector<double> a = compute_sinr(base, p, 0.25, topo);
    const std::vector<double> b = compute_sinr(scaled, p, 0.25e6, topo);
    for (std::size_t l = 0; l < a.size(); ++l)
        CHECK(a[l] == doctest::Approx(b[l]).epsilon(1e-12));
}

TEST_CASE("relabeling cells permutes rates without changing their sum") {
    const Topology topo = mutual_topology(3);
    Rng rng(17);
    std::vector<double> g(3 * 6);
    for (double& v : g)
        v = 0.05 + rng.uniform();
    const GainTensor original = tensor(3, 2, g);
    const PowerAllocation p{3, 2, {0.1, 0.9, 0.4, 0.2, 0.7, 0.3}};

    // Swap cells 0 and 2; all cells are mutual neighbors, so the topology
    // is unchanged by the relabeling.
    const auto perm = [](int c) { return c == 0 ? 2 : c == 2 ? 0 : c; };
    std::vector<double> g2(g.size());
    PowerAllocation p2{3, 2, std::vector<double>(6, 0.0)};
    for (int bs = 0; bs < 3; ++bs)
        for (int cell = 0; cell < 3; ++cell)
            for (int user = 0; user < 2; ++user) {
                g2[std::size_t(perm(bs)) * 6 + perm(cell) * 2 + user] =
                    original.at(bs, cell, user);
                p2.at(perm(cell), user) = p.at(cell, user);
            }
    const GainTensor permuted = tensor(3, 2, g2);

    const double sum_a = compute_rates(compute_sinr(original, p, 0.01, topo)).sum_rate;
    const double sum_b = compute_rates(compute_sinr(permuted, p2, 0.01, topo)).sum_rate;
    CHECK(sum_a == doctest::Approx(sum_b).epsilon(1e-12));
}

TEST_CASE("silence earns nothing") {
    ChannelConfig cfg;
    cfg.n_cells = 4;
    cfg.users_per_cell = 2;
    const Topology topo = build_topology(cfg);
    Env env = make_env(topo, cfg, 3, 0);
    const PowerAllocation p = PowerAllocation::zero(4, 2);
    const std::vector<double> sinr =
        compute_sinr(env.gains(), p, cfg.noise_w, topo);
    CHECK(compute_rates(sinr).sum_rate == 0.0);
}

TEST_CASE("suppressed innovations decay the gains geometrically") {
    ChannelConfig cfg;
    cfg.n_cells = 4;
    cfg.users_per_cell = 1;
    const Topology topo = build_topology(cfg);
    Env env = make_env(topo, cfg, 8, 0);
    const double rho2 = std::pow(bessel_j0(2.0 * M_PI * cfg.doppler_hz *
                                           cfg.slot_period_s),
                                 2.0);
    const std::vector<double> before = env.gains().g;
    const std::vector<std::complex<double>> zero(before.size(), {0.0, 0.0});
    const PowerAllocation p{4, 1, std::vector<double>(4, 1.0)};
    env.step(p, std::span<const std::complex<double>>(zero));
    const std::vector<double>& after = env.gains().g;
    for (std::size_t i = 0; i < before.size(); ++i)
        CHECK(after[i] == doctest::Approx(rho2 * before[i]).epsilon(1e-12));
}

TEST_CASE("stepping reports rates for the slot being played") {
    ChannelConfig cfg;
    cfg.n_cells = 4;
    cfg.users_per_cell = 2;
    const Topology topo = build_topology(cfg);
    Env env = make_env(topo, cfg, 12, 0);
    Rng fading = fading_stream(12, 0);

    const GainTensor g_before = env.gains();
    PowerAllocation p = PowerAllocation::zero(4, 2);
    Rng rng(2);
    for (double& v : p.p)
        v = rng.uniform() * 6.3;

    const RateReport direct =
        compute_rates(compute_sinr(g_before, p, cfg.noise_w, topo));
    const RateReport stepped = env.step(p, fading);
    CHECK(stepped.sum_rate == direct.sum_rate);
    CHECK(stepped.rate == direct.rate);

    // The record of the played slot is available to the next one.
    CHECK(env.prev_powers().p == p.p);
    CHECK(env.prev_rates().rate == direct.rate);
    CHECK(env.slot() == 1);
}

TEST_CASE("a seed pins the whole trajectory") {
    ChannelConfig cfg;
    cfg.n_cells = 9;
    cfg.users_per_cell = 2;
    const Topology topo = build_topology(cfg);
    auto run = [&](std::uint64_t seed) {
        Env env = make_env(topo, cfg, seed, 0);
        Rng fading = fading_stream(seed, 0);
        Rng policy = substream(seed, "p");
        std::vector<double> sums;
        for (int t = 0; t < 50; ++t) {
            PowerAllocation p = PowerAllocation::zero(9, 2);
            for (double& v : p.p)
                v = policy.uniform() * 6.3;
            sums.push_back(env.step(p, fading).sum_rate);
        }
        return sums;
    };
    CHECK(run(77) == run(77));
    CHECK(run(77) != run(78));
}

TEST_CASE("environment copies branch independently") {
    ChannelConfig cfg;
    cfg.n_cells = 4;
    cfg.users_per_cell = 1;
    const Topology topo = build_topology(cfg);
    Env env = make_env(topo, cfg, 5, 0);
    Env branch = env;
    Rng fading_a = fading_stream(5, 0);
    Rng fading_b = fading_stream(5, 0);
    const PowerAllocation p{4, 1, std::vector<double>(4, 1.0)};
    const RateReport a = env.step(p, fading_a);
    const RateReport b = branch.step(p, fading_b);
    CHECK(a.rate == b.rate);
    CHECK(env.gains().g == branch.gains().g);
}
