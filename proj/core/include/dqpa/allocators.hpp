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

#ifndef DQPA_ALLOCATORS_HPP
#define DQPA_ALLOCATORS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "dqpa/channel.hpp"
#include "dqpa/rng.hpp"
#include "dqpa/topology.hpp"

namespace dqpa {

/// Flattened per-link view of the interference coupling. Entry a(i, j) is
/// the gain from the transmitter serving link j to the receiver of link i;
/// a(i, i) is the direct gain. Two links served by one BS couple into a
/// fixed receiver with the same gain.
struct InterferenceInstance {
    int links = 0;
    std::vector<double> a; ///< row-major [links][links]
    double noise_w = 0.0;
    double p_max_w = 0.0;
    std::vector<std::array<int, 2>> link_ids; ///< flattened index -> {cell, user}

    double at(int i, int j) const { return a[std::size_t(i) * links + j]; }
};

/// Flattens a gain tensor into per-link coupling coefficients. Cross terms
/// exist only between links of the same cell (through the victim's serving
/// gain) and links of neighboring cells; all other pairs are zero.
InterferenceInstance build_instance(const GainTensor& g, const Topology& topo,
                                    double noise_w, double p_max_w);

/// Sum rate of allocation p on the instance, bits/s/Hz. Matches the
/// simulator's sum rate for the tensor the instance was built from.
double objective(const InterferenceInstance& inst, const std::vector<double>& p);

struct AllocResult {
    std::vector<double> p;
    std::vector<double> trace; ///< objective at start, then after each iteration
    bool converged = false;
    bool guarded = false; ///< a numerical floor was applied during iteration
};

/// Closed-form fractional-programming iteration for sum-rate power control.
/// Initializes at full power; stops when the objective improves by less
/// than tol or after max_iter iterations.
AllocResult fp_allocate(const InterferenceInstance& inst, double tol = 1e-6,
                        int max_iter = 200);

/// Scalar weighted-MMSE iteration on amplitudes v = sqrt(p), same
/// initialization and stopping rule as fp_allocate.
AllocResult wmmse_allocate(const InterferenceInstance& inst, double tol = 1e-6,
                           int max_iter = 200);

/// Every link at p_max.
std::vector<double> max_power(const InterferenceInstance& inst);

/// Each link draws one level uniformly from the quantized set.
std::vector<double> random_power(const InterferenceInstance& inst,
                                 const std::vector<double>& levels, Rng& rng);

struct BruteForceResult {
    std::vector<double> p;
    double value = 0.0;
    long evaluations = 0;
};

/// Exhaustive search over a uniform grid of `levels_per_link` points spanning
/// [0, p_max] per link, lexicographically smallest allocation on ties.
/// Refuses searches above 1e7 grid points.
BruteForceResult brute_force(const InterferenceInstance& inst, int levels_per_link);

} // namespace dqpa

#endif // DQPA_ALLOCATORS_HPP
