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

#ifndef DQPA_TOPOLOGY_HPP
#define DQPA_TOPOLOGY_HPP

#include <array>
#include <vector>

namespace dqpa {

/// Scenario and propagation constants for the multi-cell downlink.
/// Power and noise values are stored in watts; config files carry dBm and
/// convert once at load.
struct ChannelConfig {
    int n_cells = 25;
    int users_per_cell = 4;
    double r_min_km = 0.01;
    double r_max_km = 1.0; ///< half cell-to-cell distance
    double doppler_hz = 10.0;
    double slot_period_s = 0.02;
    double shadow_std_db = 8.0;
    double pathloss_fixed_db = 120.9;
    double pathloss_slope_db = 37.6;
    double noise_w = 3.9810717055349695e-15; ///< -114 dBm
    int neighbor_cap = 18;                   ///< |D_n| before the N-1 cap
    int grid_rows = 0;                       ///< 0: derive a square grid from n_cells
    int grid_cols = 0;

    int links() const { return n_cells * users_per_cell; }

    /// Throws std::invalid_argument on any violated constraint.
    void validate() const;
};

/// Hexagonal cell grid on a torus. Cell centers live in
/// [0, width_km) x [0, height_km) and all distances use the wrapped metric.
struct Topology {
    int rows = 0;
    int cols = 0;
    double width_km = 0.0;
    double height_km = 0.0;
    std::vector<std::array<double, 2>> centers;
    /// Interferer sets D_n: for each cell the nearest cells under the wrapped
    /// metric, sorted by distance then cell index, capped at
    /// min(neighbor_cap, n_cells - 1).
    std::vector<std::vector<int>> neighbors;

    int n_cells() const { return int(centers.size()); }
    double wrapped_distance(const std::array<double, 2>& a,
                            const std::array<double, 2>& b) const;
};

Topology build_topology(const ChannelConfig& cfg);

} // namespace dqpa

#endif // DQPA_TOPOLOGY_HPP
