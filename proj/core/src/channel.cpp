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

#include "dqpa/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "dqpa/units.hpp"

namespace dqpa {

double pathloss_linear(double d_km, double z, double fixed_db, double slope_db) {
    if (!(d_km > 0.0))
        throw std::domain_error("pathloss: distance must be positive");
    if (!(z > 0.0))
        throw std::domain_error("pathloss: shadowing draw must be positive");
    const double loss_db = fixed_db + slope_db * std::log10(d_km) + 10.0 * std::log10(z);
    return std::pow(10.0, -loss_db / 10.0);
}

UserLayout drop_users(const Topology& topo, const ChannelConfig& cfg, Rng& placement,
                      Rng& shadowing) {
    const int n = cfg.n_cells;
    const int k = cfg.users_per_cell;
    const int links = n * k;

    UserLayout layout;
    layout.n_cells = n;
    layout.users_per_cell = k;
    layout.positions.resize(links);
    layout.distance_km.resize(std::size_t(n) * links);
    layout.shadow.resize(std::size_t(n) * links);
    layout.large_scale.resize(std::size_t(n) * links);

    // Area-uniform draw in the annulus: r = sqrt(u (r_max^2 - r_min^2) + r_min^2).
    const double r2_min = cfg.r_min_km * cfg.r_min_km;
    const double r2_max = cfg.r_max_km * cfg.r_max_km;
    for (int cell = 0; cell < n; ++cell) {
        for (int user = 0; user < k; ++user) {
            const double u = placement.uniform();
            const double r = std::sqrt(u * (r2_max - r2_min) + r2_min);
            const double phi = 2.0 * M_PI * placement.uniform();
            double x = topo.centers[cell][0] + r * std::cos(phi);
            double y = topo.centers[cell][1] + r * std::sin(phi);
            x -= topo.width_km * std::floor(x / topo.width_km);
            y -= topo.height_km * std::floor(y / topo.height_km);
            layout.positions[cell * k + user] = {x, y};
        }
    }

    for (int bs = 0; bs < n; ++bs) {
        for (int link = 0; link < links; ++link) {
            const std::size_t idx = std::size_t(bs) * links + link;
            const double z = (cfg.shadow_std_db == 0.0)
                                 ? 1.0
                                 : std::pow(10.0, cfg.shadow_std_db * shadowing.normal() / 10.0);
            const double d = topo.wrapped_distance(topo.centers[bs], layout.positions[link]);
            layout.distance_km[idx] = d;
            layout.shadow[idx] = z;
            layout.large_scale[idx] =
                pathloss_linear(d, z, cfg.pathloss_fixed_db, cfg.pathloss_slope_db);
        }
    }
    return layout;
}

SmallScaleState init_small_scale(const ChannelConfig& cfg, Rng& fading) {
    SmallScaleState state;
    state.n_bs = cfg.n_cells;
    state.n_links = cfg.links();
    state.rho = bessel_j0(2.0 * M_PI * cfg.doppler_hz * cfg.slot_period_s);
    if (!(state.rho >= 0.0 && state.rho < 1.0))
        throw std::invalid_argument(
            "small-scale fading: lag-1 correlation J0(2 pi f_d T) must lie in [0, 1); "
            "got rho = " + std::to_string(state.rho));
    state.h.resize(std::size_t(state.n_bs) * state.n_links);
    for (auto& c : state.h)
        c = fading.complex_normal();
    return state;
}

void jakes_step(SmallScaleState& state, Rng& fading) {
    const double rho = state.rho;
    const double innov = std::sqrt(1.0 - rho * rho);
    for (auto& c : state.h)
        c = rho * c + innov * fading.complex_normal();
}

void jakes_step(SmallScaleState& state, std::span<const std::complex<double>> innovations) {
    if (innovations.size() != state.h.size())
        throw std::invalid_argument("jakes_step: innovation count mismatch");
    const double rho = state.rho;
    const double innov = std::sqrt(1.0 - rho * rho);
    for (std::size_t i = 0; i < state.h.size(); ++i)
        state.h[i] = rho * state.h[i] + innov * innovations[i];
}

GainTensor assemble_gains(const UserLayout& layout, const SmallScaleState& ss) {
    if (ss.n_bs != layout.n_cells || ss.n_links != layout.links())
        throw std::invalid_argument("assemble_gains: dimension mismatch");
    GainTensor g;
    g.n_bs = layout.n_cells;
    g.n_cells = layout.n_cells;
    g.users_per_cell = layout.users_per_cell;
    g.g.resize(ss.h.size());
    for (std::size_t i = 0; i < ss.h.size(); ++i)
        g.g[i] = std::norm(ss.h[i]) * layout.large_scale[i];
    return g;
}

} // namespace dqpa
