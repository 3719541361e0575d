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

#ifndef DQPA_FEATURES_HPP
#define DQPA_FEATURES_HPP

#include <vector>

#include "dqpa/netsim.hpp"

namespace dqpa {

/// Agent observation and action-quantization constants.
struct FeatureConfig {
    int top_interferers = 16; ///< retained entries of the sorted interferer set
    int action_count = 10;
    double p_min_w = 3.1622776601683794e-3; ///< 5 dBm
    double p_max_w = 6.30957344480193;      ///< 38 dBm

    int state_length() const { return 3 * top_interferers + 2; }

    /// Throws std::invalid_argument on any violated constraint.
    void validate() const;

    bool operator==(const FeatureConfig&) const = default;
};

/// Discrete transmit powers: zero plus a geometric ladder from p_min to
/// p_max, action_count levels in total.
struct ActionSet {
    std::vector<double> levels; ///< ascending, levels[0] == 0

    int size() const { return int(levels.size()); }
};

ActionSet build_action_set(const FeatureConfig& cfg);

/// One candidate interferer of an agent: the link identity and its
/// log-normalized strength relative to the agent's serving channel.
struct InterfererEntry {
    int cell = 0;
    int user = 0;
    double value = 0.0;
};

/// The agent's normalized interferer set: K-1 intra-cell entries of exactly 1
/// and one entry log2(1 + g_cross / g_direct) per interfering link (n', j)
/// with n' in D_n, sorted descending with ties broken by ascending
/// (cell, user). Throws std::domain_error when the direct gain is zero.
std::vector<InterfererEntry> interferer_set(const GainTensor& g, int cell, int user,
                                            const Topology& topo);

/// Fixed-length DQN input: the strongest top_c interferer values, those
/// links' previous-slot rates and normalized powers, then the agent's own
/// previous rate and normalized power. Missing entries are zero-padded.
std::vector<double> build_state(const std::vector<InterfererEntry>& sorted_interferers,
                                const RateReport& prev_rates,
                                const PowerAllocation& prev_powers, int cell, int user,
                                const FeatureConfig& cfg);

} // namespace dqpa

#endif // DQPA_FEATURES_HPP
