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

#include "dqpa/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqpa {

void FeatureConfig::validate() const {
    if (top_interferers < 1)
        throw std::invalid_argument("FeatureConfig: top_interferers must be at least 1");
    if (action_count < 3)
        throw std::invalid_argument(
            "FeatureConfig: action_count must be at least 3 (zero, p_min, p_max)");
    if (!(p_min_w > 0.0) || !(p_min_w < p_max_w))
        throw std::invalid_argument("FeatureConfig: require 0 < p_min < p_max");
}

ActionSet build_action_set(const FeatureConfig& cfg) {
    cfg.validate();
    ActionSet set;
    set.levels.resize(cfg.action_count);
    set.levels[0] = 0.0;
    const int steps = cfg.action_count - 2;
    const double ratio = cfg.p_max_w / cfg.p_min_w;
    for (int i = 0; i <= steps; ++i)
        set.levels[i + 1] = cfg.p_min_w * std::pow(ratio, double(i) / steps);
    return set;
}

std::vector<InterfererEntry> interferer_set(const GainTensor& g, int cell, int user,
                                            const Topology& topo) {
    const int k = g.users_per_cell;
    const double direct = g.at(cell, cell, user);
    if (!(direct > 0.0))
        throw std::domain_error("interferer_set: direct gain is zero");

    std::vector<InterfererEntry> entries;
    entries.reserve(std::size_t(topo.neighbors[cell].size() + 1) * k);
    for (int other = 0; other < k; ++other) {
        if (other != user)
            entries.push_back({cell, other, 1.0});
    }
    for (int nb : topo.neighbors[cell]) {
        const double cross = g.at(nb, cell, user);
        const double value = std::log2(1.0 + cross / direct);
        for (int j = 0; j < k; ++j)
            entries.push_back({nb, j, value});
    }
    std::sort(entries.begin(), entries.end(),
              [](const InterfererEntry& a, const InterfererEntry& b) {
                  if (a.value != b.value)
                      return a.value > b.value;
                  if (a.cell != b.cell)
                      return a.cell < b.cell;
                  return a.user < b.user;
              });
    return entries;
}

std::vector<double> build_state(const std::vector<InterfererEntry>& sorted_interferers,
                                const RateReport& prev_rates,
                                const PowerAllocation& prev_powers, int cell, int user,
                                const FeatureConfig& cfg) {
    const int c = cfg.top_interferers;
    const int k = prev_powers.users_per_cell;
    std::vector<double> state(std::size_t(cfg.state_length()), 0.0);
    const int kept = std::min<int>(c, int(sorted_interferers.size()));
    for (int i = 0; i < kept; ++i) {
        const InterfererEntry& e = sorted_interferers[i];
        const int link = e.cell * k + e.user;
        state[i] = e.value;
        state[c + i] = prev_rates.rate[link];
        state[2 * c + i] = prev_powers.p[link] / cfg.p_max_w;
    }
    const int own = cell * k + user;
    state[3 * c] = prev_rates.rate[own];
    state[3 * c + 1] = prev_powers.p[own] / cfg.p_max_w;
    return state;
}

} // namespace dqpa
