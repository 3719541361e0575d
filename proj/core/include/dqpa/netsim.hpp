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

#ifndef DQPA_NETSIM_HPP
#define DQPA_NETSIM_HPP

#include <vector>

#include "dqpa/channel.hpp"
#include "dqpa/rng.hpp"
#include "dqpa/topology.hpp"

namespace dqpa {

/// Emitting powers in watts, one per link l = cell * K + user.
struct PowerAllocation {
    int n_cells = 0;
    int users_per_cell = 0;
    std::vector<double> p;

    static PowerAllocation zero(int n_cells, int users_per_cell) {
        return {n_cells, users_per_cell,
                std::vector<double>(std::size_t(n_cells) * users_per_cell, 0.0)};
    }
    int links() const { return n_cells * users_per_cell; }
    double at(int cell, int user) const { return p[cell * users_per_cell + user]; }
    double& at(int cell, int user) { return p[cell * users_per_cell + user]; }
};

/// Per-link SINR and spectral efficiency plus their sum.
struct RateReport {
    std::vector<double> sinr;
    std::vector<double> rate; ///< log2(1 + sinr), bits/s/Hz
    double sum_rate = 0.0;

    static RateReport zero(int links) {
        return {std::vector<double>(links, 0.0), std::vector<double>(links, 0.0), 0.0};
    }
};

/// Per-link SINR with intra-cell interference on the victim's own serving
/// channel and inter-cell interference restricted to the D_n sets.
/// Throws std::domain_error on negative noise or a nonpositive denominator.
std::vector<double> compute_sinr(const GainTensor& g, const PowerAllocation& p,
                                 double noise_w, const Topology& topo);

RateReport compute_rates(const std::vector<double>& sinr);

/// One interfering-multiple-access-channel environment: holds the episode's
/// large-scale layout, the evolving small-scale state, the current gain
/// tensor and the previous slot's powers and rates. Value semantics; copy to
/// branch a trajectory.
class Env {
  public:
    Env(Topology topo, ChannelConfig cfg, UserLayout layout, SmallScaleState ss);

    /// Rates for allocation p on the current gains, then a fading step.
    /// After the call, gains() refers to the next slot and prev_powers() /
    /// prev_rates() to the slot just computed.
    RateReport step(const PowerAllocation& p, Rng& fading);

    /// Test seam: same contract, caller supplies the fading innovations.
    RateReport step(const PowerAllocation& p,
                    std::span<const std::complex<double>> innovations);

    const Topology& topology() const { return topo_; }
    const ChannelConfig& config() const { return cfg_; }
    const UserLayout& layout() const { return layout_; }
    const GainTensor& gains() const { return gains_; }
    const PowerAllocation& prev_powers() const { return prev_powers_; }
    const RateReport& prev_rates() const { return prev_rates_; }
    long slot() const { return slot_; }

  private:
    RateReport finish_step(const PowerAllocation& p);

    Topology topo_;
    ChannelConfig cfg_;
    UserLayout layout_;
    SmallScaleState ss_;
    GainTensor gains_;
    PowerAllocation prev_powers_;
    RateReport prev_rates_;
    long slot_ = 0;
};

/// Convenience: environment with freshly drawn layout and small-scale state
/// from the named substreams of `seed` for episode `episode`.
Env make_env(const Topology& topo, const ChannelConfig& cfg, std::uint64_t seed,
             std::uint64_t episode);

/// The stepping innovation stream matching make_env's episode. Disjoint from
/// the substream that drew the initial small-scale state, so restarting it
/// never replays initialization draws. Schemes compared on one episode must
/// each step with a fresh copy of this stream to see identical channels.
Rng fading_stream(std::uint64_t seed, std::uint64_t episode);

} // namespace dqpa

#endif // DQPA_NETSIM_HPP
