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

#include "dqpa/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dqpa {

void ChannelConfig::validate() const {
    if (n_cells < 2)
        throw std::invalid_argument("ChannelConfig: n_cells must be at least 2");
    if (users_per_cell < 1)
        throw std::invalid_argument("ChannelConfig: users_per_cell must be positive");
    if (!(r_min_km > 0.0) || !(r_min_km < r_max_km))
        throw std::invalid_argument("ChannelConfig: require 0 < r_min < r_max");
    if (doppler_hz < 0.0)
        throw std::invalid_argument("ChannelConfig: doppler_hz must be nonnegative");
    if (!(slot_period_s > 0.0))
        throw std::invalid_argument("ChannelConfig: slot_period_s must be positive");
    if (shadow_std_db < 0.0)
        throw std::invalid_argument("ChannelConfig: shadow_std_db must be nonnegative");
    if (!(noise_w > 0.0))
        throw std::invalid_argument("ChannelConfig: noise power must be positive");
    if (neighbor_cap < 0)
        throw std::invalid_argument("ChannelConfig: neighbor_cap must be nonnegative");
    if ((grid_rows == 0) != (grid_cols == 0))
        throw std::invalid_argument("ChannelConfig: give both grid dims or neither");
    if (grid_rows > 0 && grid_rows * grid_cols != n_cells)
        throw std::invalid_argument("ChannelConfig: grid_rows * grid_cols != n_cells");
    if (grid_rows == 0) {
        const int m = int(std::lround(std::sqrt(double(n_cells))));
        if (m * m != n_cells)
            throw std::invalid_argument(
                "ChannelConfig: n_cells = " + std::to_string(n_cells) +
                " is not a perfect square; set grid_rows/grid_cols explicitly");
    }
}

double Topology::wrapped_distance(const std::array<double, 2>& a,
                                  const std::array<double, 2>& b) const {
    double dx = std::abs(a[0] - b[0]);
    double dy = std::abs(a[1] - b[1]);
    dx = std::min(dx, width_km - dx);
    dy = std::min(dy, height_km - dy);
    return std::hypot(dx, dy);
}

Topology build_topology(const ChannelConfig& cfg) {
    cfg.validate();

    int rows = cfg.grid_rows;
    int cols = cfg.grid_cols;
    if (rows == 0) {
        rows = int(std::lround(std::sqrt(double(cfg.n_cells))));
        cols = rows;
    }

    // Hexagonal packing: odd rows shifted by half the cell pitch, row spacing
    // sqrt(3)/2 times the pitch. The pitch (cell-to-cell distance) is 2 r_max.
    const double pitch = 2.0 * cfg.r_max_km;
    const double row_step = std::sqrt(3.0) * cfg.r_max_km;

    Topology topo;
    topo.rows = rows;
    topo.cols = cols;
    topo.width_km = pitch * cols;
    topo.height_km = row_step * rows;
    topo.centers.reserve(cfg.n_cells);
    for (int i = 0; i < rows; ++i) {
        const double x_off = (i % 2 == 1) ? cfg.r_max_km : 0.0;
        for (int j = 0; j < cols; ++j)
            topo.centers.push_back({j * pitch + x_off, i * row_step});
    }

    const int n = cfg.n_cells;
    const int cap = std::min(cfg.neighbor_cap, n - 1);
    topo.neighbors.resize(n);
    std::vector<std::pair<double, int>> order;
    for (int c = 0; c < n; ++c) {
        order.clear();
        for (int o = 0; o < n; ++o) {
            if (o == c)
                continue;
            order.emplace_back(topo.wrapped_distance(topo.centers[c], topo.centers[o]), o);
        }
        std::sort(order.begin(), order.end());
        topo.neighbors[c].reserve(cap);
        for (int i = 0; i < cap; ++i)
            topo.neighbors[c].push_back(order[i].second);
    }
    return topo;
}

} // namespace dqpa
