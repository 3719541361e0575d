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

#ifndef DQPA_CHANNEL_HPP
#define DQPA_CHANNEL_HPP

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "dqpa/rng.hpp"
#include "dqpa/topology.hpp"

namespace dqpa {

/// Large-scale snapshot for one episode: user positions, BS-to-user wrapped
/// distances, log-normal shadowing draws and the resulting linear attenuation.
/// Links are indexed l = cell * K + user throughout.
struct UserLayout {
    int n_cells = 0;
    int users_per_cell = 0;
    std::vector<std::array<double, 2>> positions; ///< per link
    std::vector<double> distance_km;              ///< [bs][link], row-major
    std::vector<double> shadow;                   ///< linear z, [bs][link]
    std::vector<double> large_scale;              ///< beta, [bs][link]

    int links() const { return n_cells * users_per_cell; }
    double d(int bs, int link) const { return distance_km[bs * links() + link]; }
    double z(int bs, int link) const { return shadow[bs * links() + link]; }
    double beta(int bs, int link) const { return large_scale[bs * links() + link]; }
};

/// Time-correlated Rayleigh coefficients, one per (BS, link) pair.
/// First-order Gauss-Markov evolution with lag-1 correlation
/// rho = J0(2 pi f_d T); the marginal stays CN(0, 1).
struct SmallScaleState {
    int n_bs = 0;
    int n_links = 0;
    std::vector<std::complex<double>> h; ///< [bs][link]
    double rho = 0.0;
};

/// Per-slot channel gains g[bs][cell][user] = |h|^2 * beta.
struct GainTensor {
    int n_bs = 0;
    int n_cells = 0;
    int users_per_cell = 0;
    long slot = 0;
    std::vector<double> g; ///< [bs][cell * K + user], row-major

    int links() const { return n_cells * users_per_cell; }
    double at(int bs, int cell, int user) const {
        return g[bs * links() + cell * users_per_cell + user];
    }
    double at_link(int bs, int link) const { return g[bs * links() + link]; }
};

/// Linear attenuation for distance d (km) and shadowing draw z:
/// beta = 10^-(fixed + slope log10 d + 10 log10 z)/10. Throws
/// std::domain_error for d <= 0 or z <= 0.
double pathloss_linear(double d_km, double z, double fixed_db = 120.9,
                       double slope_db = 37.6);

/// Places every user area-uniformly in the [r_min, r_max] annulus of its
/// serving BS and draws shadowing; fills distances and large-scale gains for
/// all (BS, user) pairs under the wrapped metric.
UserLayout drop_users(const Topology& topo, const ChannelConfig& cfg, Rng& placement,
                      Rng& shadowing);

/// Fresh i.i.d. CN(0,1) small-scale state with rho = J0(2 pi f_d T).
/// Throws std::invalid_argument unless 0 <= rho < 1.
SmallScaleState init_small_scale(const ChannelConfig& cfg, Rng& fading);

/// One Gauss-Markov step: h' = rho h + sqrt(1 - rho^2) e, e ~ CN(0,1) i.i.d.
void jakes_step(SmallScaleState& state, Rng& fading);

/// Same update with caller-supplied innovations (size n_bs * n_links).
void jakes_step(SmallScaleState& state, std::span<const std::complex<double>> innovations);

GainTensor assemble_gains(const UserLayout& layout, const SmallScaleState& ss);

} // namespace dqpa

#endif // DQPA_CHANNEL_HPP
