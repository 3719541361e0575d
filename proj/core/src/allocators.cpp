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

#include "dqpa/allocators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqpa {

InterferenceInstance build_instance(const GainTensor& g, const Topology& topo,
                                    double noise_w, double p_max_w) {
    if (g.n_cells != topo.n_cells())
        throw std::invalid_argument("build_instance: gain/topology dimension mismatch");
    if (noise_w <= 0.0 || p_max_w <= 0.0)
        throw std::invalid_argument("build_instance: noise and p_max must be positive");

    const int n = g.n_cells;
    const int k = g.users_per_cell;
    InterferenceInstance inst;
    inst.links = n * k;
    inst.noise_w = noise_w;
    inst.p_max_w = p_max_w;
    inst.a.assign(std::size_t(inst.links) * inst.links, 0.0);
    inst.link_ids.reserve(std::size_t(inst.links));
    for (int cell = 0; cell < n; ++cell)
        for (int user = 0; user < k; ++user)
            inst.link_ids.push_back({cell, user});

    for (int i = 0; i < inst.links; ++i) {
        const int cell = inst.link_ids[std::size_t(i)][0];
        const int user = inst.link_ids[std::size_t(i)][1];
        const double serving = g.at(cell, cell, user);
        // Every stream of the serving BS reaches this receiver over the
        // serving channel, the direct link included.
        for (int j = cell * k; j < (cell + 1) * k; ++j)
            inst.a[std::size_t(i) * inst.links + j] = serving;
        for (int nb : topo.neighbors[cell]) {
            const double cross = g.at(nb, cell, user);
            for (int j = nb * k; j < (nb + 1) * k; ++j)
                inst.a[std::size_t(i) * inst.links + j] = cross;
        }
    }
    return inst;
}

double objective(const InterferenceInstance& inst, const std::vector<double>& p) {
    if (int(p.size()) != inst.links)
        throw std::invalid_argument("objective: power vector length mismatch");
    double sum = 0.0;
    for (int i = 0; i < inst.links; ++i) {
        double denom = inst.noise_w;
        for (int j = 0; j < inst.links; ++j)
            if (j != i)
                denom += inst.at(i, j) * p[std::size_t(j)];
        if (!(denom > 0.0))
            throw std::domain_error("objective: nonpositive interference-plus-noise");
        sum += std::log2(1.0 + inst.at(i, i) * p[std::size_t(i)] / denom);
    }
    return sum;
}

namespace {

// |improvement| below tol two trace entries in a row would be stricter;
// both solvers stop on the first small step, matching their monotone traces.
bool converged_step(const std::vector<double>& trace, double tol) {
    const std::size_t n = trace.size();
    return n >= 2 && std::abs(trace[n - 1] - trace[n - 2]) < tol;
}

} // namespace

AllocResult fp_allocate(const InterferenceInstance& inst, double tol, int max_iter) {
    const int links = inst.links;
    AllocResult res;
    res.p.assign(std::size_t(links), inst.p_max_w);
    res.trace.push_back(objective(inst, res.p));

    const std::size_t nl = std::size_t(links);
    std::vector<double> gamma_hat(nl), y(nl);
    for (int it = 0; it < max_iter; ++it) {
        // Received power per link, own signal included.
        for (int i = 0; i < links; ++i) {
            double recv = inst.noise_w;
            for (int j = 0; j < links; ++j)
                recv += inst.at(i, j) * res.p[std::size_t(j)];
            const double own = inst.at(i, i) * res.p[std::size_t(i)];
            gamma_hat[std::size_t(i)] = own / (recv - own);
            y[std::size_t(i)] = std::sqrt((1.0 + gamma_hat[std::size_t(i)]) * own) / recv;
        }
        for (int i = 0; i < links; ++i) {
            double leak = 0.0;
            for (int j = 0; j < links; ++j)
                leak += y[std::size_t(j)] * y[std::size_t(j)] * inst.at(j, i);
            const double unconstrained = y[std::size_t(i)] * y[std::size_t(i)] *
                                         (1.0 + gamma_hat[std::size_t(i)]) *
                                         inst.at(i, i) / (leak * leak);
            res.p[std::size_t(i)] = std::min(inst.p_max_w, unconstrained);
        }
        res.trace.push_back(objective(inst, res.p));
        if (converged_step(res.trace, tol)) {
            res.converged = true;
            break;
        }
    }
    return res;
}

AllocResult wmmse_allocate(const InterferenceInstance& inst, double tol, int max_iter) {
    const int links = inst.links;
    const double v_max = std::sqrt(inst.p_max_w);
    AllocResult res;
    const std::size_t nl = std::size_t(links);
    std::vector<double> v(nl, v_max);
    std::vector<double> u(nl), w(nl);
    std::vector<double> root_direct(nl);
    for (int i = 0; i < links; ++i)
        root_direct[std::size_t(i)] = std::sqrt(inst.at(i, i));

    auto powers = [&] {
        std::vector<double> p(nl);
        for (int i = 0; i < links; ++i)
            p[std::size_t(i)] = v[std::size_t(i)] * v[std::size_t(i)];
        return p;
    };
    res.trace.push_back(objective(inst, powers()));

    for (int it = 0; it < max_iter; ++it) {
        for (int i = 0; i < links; ++i) {
            double recv = inst.noise_w;
            for (int j = 0; j < links; ++j)
                recv += inst.at(i, j) * v[std::size_t(j)] * v[std::size_t(j)];
            u[std::size_t(i)] = root_direct[std::size_t(i)] * v[std::size_t(i)] / recv;
        }
        for (int i = 0; i < links; ++i) {
            double mse = 1.0 - u[std::size_t(i)] * root_direct[std::size_t(i)] *
                                   v[std::size_t(i)];
            if (mse < 1e-12) {
                mse = 1e-12;
                res.guarded = true;
            }
            w[std::size_t(i)] = 1.0 / mse;
        }
        for (int i = 0; i < links; ++i) {
            double denom = 0.0;
            for (int j = 0; j < links; ++j)
                denom += w[std::size_t(j)] * u[std::size_t(j)] * u[std::size_t(j)] *
                         inst.at(j, i);
            const double unclamped =
                w[std::size_t(i)] * u[std::size_t(i)] * root_direct[std::size_t(i)] /
                denom;
            v[std::size_t(i)] = std::clamp(unclamped, 0.0, v_max);
        }
        res.trace.push_back(objective(inst, powers()));
        if (converged_step(res.trace, tol)) {
            res.converged = true;
            break;
        }
    }
    res.p = powers();
    return res;
}

std::vector<double> max_power(const InterferenceInstance& inst) {
    return std::vector<double>(std::size_t(inst.links), inst.p_max_w);
}

std::vector<double> random_power(const InterferenceInstance& inst,
                                 const std::vector<double>& levels, Rng& rng) {
    if (levels.empty())
        throw std::invalid_argument("random_power: empty level set");
    std::vector<double> p(std::size_t(inst.links));
    for (int i = 0; i < inst.links; ++i)
        p[std::size_t(i)] = levels[rng.uniform_below(levels.size())];
    return p;
}

BruteForceResult brute_force(const InterferenceInstance& inst, int levels_per_link) {
    if (levels_per_link < 2)
        throw std::invalid_argument("brute_force: need at least 2 levels per link");
    const int links = inst.links;
    double space = 1.0;
    for (int i = 0; i < links; ++i) {
        space *= levels_per_link;
        if (space > 1e7)
            throw std::length_error("brute_force: search space exceeds 1e7 points");
    }

    std::vector<double> grid(std::size_t(levels_per_link), 0.0);
    for (int i = 0; i < levels_per_link; ++i)
        grid[std::size_t(i)] = inst.p_max_w * double(i) / double(levels_per_link - 1);

    BruteForceResult best;
    best.value = -1.0;
    std::vector<int> idx(std::size_t(links), 0);
    std::vector<double> p(std::size_t(links), 0.0);
    // Odometer with link 0 most significant: ascending enumeration is
    // lexicographic, so keeping only strict improvements resolves ties to
    // the smallest allocation.
    while (true) {
        for (int i = 0; i < links; ++i)
            p[std::size_t(i)] = grid[std::size_t(idx[std::size_t(i)])];
        const double value = objective(inst, p);
        ++best.evaluations;
        if (value > best.value) {
            best.value = value;
            best.p = p;
        }
        int pos = links - 1;
        while (pos >= 0 && idx[std::size_t(pos)] == levels_per_link - 1) {
            idx[std::size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0)
            break;
        ++idx[std::size_t(pos)];
    }
    return best;
}

} // namespace dqpa
