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

#include "dqpa/netsim.hpp"

#include <cmath>
#include <stdexcept>

namespace dqpa {

std::vector<double> compute_sinr(const GainTensor& g, const PowerAllocation& p,
                                 double noise_w, const Topology& topo) {
    if (g.n_cells != p.n_cells || g.users_per_cell != p.users_per_cell)
        throw std::invalid_argument("compute_sinr: gain/power dimension mismatch");
    if (g.n_cells != topo.n_cells())
        throw std::invalid_argument("compute_sinr: gain/topology dimension mismatch");
    if (noise_w < 0.0)
        throw std::domain_error("compute_sinr: noise power must not be negative");

    const int n = g.n_cells;
    const int k = g.users_per_cell;

    // Total power per BS, reused by every victim of that BS.
    std::vector<double> bs_power(n, 0.0);
    for (int cell = 0; cell < n; ++cell)
        for (int user = 0; user < k; ++user)
            bs_power[cell] += p.at(cell, user);

    std::vector<double> sinr(std::size_t(n) * k, 0.0);
    for (int cell = 0; cell < n; ++cell) {
        for (int user = 0; user < k; ++user) {
            const double direct = g.at(cell, cell, user);
            const double signal = direct * p.at(cell, user);
            // Intra-cell streams travel over the victim's own serving channel.
            double denom = direct * (bs_power[cell] - p.at(cell, user));
            for (int nb : topo.neighbors[cell])
                denom += g.at(nb, cell, user) * bs_power[nb];
            denom += noise_w;
            if (!(denom > 0.0))
                throw std::domain_error(
                    "compute_sinr: nonpositive interference-plus-noise denominator");
            sinr[cell * k + user] = signal / denom;
        }
    }
    return sinr;
}

RateReport compute_rates(const std::vector<double>& sinr) {
    RateReport report;
    report.sinr = sinr;
    report.rate.resize(sinr.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < sinr.size(); ++i) {
        report.rate[i] = std::log2(1.0 + sinr[i]);
        sum += report.rate[i];
    }
    report.sum_rate = sum;
    return report;
}

Env::Env(Topology topo, ChannelConfig cfg, UserLayout layout, SmallScaleState ss)
    : topo_(std::move(topo)), cfg_(std::move(cfg)), layout_(std::move(layout)),
      ss_(std::move(ss)), gains_(assemble_gains(layout_, ss_)),
      prev_powers_(PowerAllocation::zero(cfg_.n_cells, cfg_.users_per_cell)),
      prev_rates_(RateReport::zero(cfg_.links())) {}

RateReport Env::finish_step(const PowerAllocation& p) {
    RateReport report = compute_rates(compute_sinr(gains_, p, cfg_.noise_w, topo_));
    gains_ = assemble_gains(layout_, ss_);
    gains_.slot = slot_ + 1;
    prev_powers_ = p;
    prev_rates_ = report;
    ++slot_;
    return report;
}

RateReport Env::step(const PowerAllocation& p, Rng& fading) {
    jakes_step(ss_, fading);
    return finish_step(p);
}

RateReport Env::step(const PowerAllocation& p,
                     std::span<const std::complex<double>> innovations) {
    jakes_step(ss_, innovations);
    return finish_step(p);
}

Env make_env(const Topology& topo, const ChannelConfig& cfg, std::uint64_t seed,
             std::uint64_t episode) {
    Rng placement = substream(seed, "placement", episode);
    Rng shadowing = substream(seed, "shadowing", episode);
    Rng fading = substream(seed, "fading-init", episode);
    UserLayout layout = drop_users(topo, cfg, placement, shadowing);
    SmallScaleState ss = init_small_scale(cfg, fading);
    return Env(topo, cfg, std::move(layout), std::move(ss));
}

Rng fading_stream(std::uint64_t seed, std::uint64_t episode) {
    return substream(seed, "fading-step", episode);
}

} // namespace dqpa
