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

#ifndef DQPA_EXPERIMENTS_HPP
#define DQPA_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dqpa/allocators.hpp"
#include "dqpa/config.hpp"
#include "dqpa/dql.hpp"

namespace dqpa {

/// Splits a total episode budget into observe/explore phases: up to 100
/// observe episodes but never more than a fifth of the total.
void apply_episode_budget(TrainConfig& cfg, int total_episodes);

/// Mean per-slot sum rate of one scheme over `repeats` fresh episodes.
/// Channel realizations depend only on (seed, repeat), never on the scheme,
/// so different schemes evaluated with one seed see identical channels.
/// Scheme "dqn" requires a network and its feature configuration; "random"
/// draws its levels from `fcfg`'s action set.
double evaluate_scheme(const std::string& scheme, const ChannelConfig& ccfg,
                       const Topology& topo, const FeatureConfig& fcfg,
                       const QNetwork* net, int repeats, int slots,
                       std::uint64_t seed);

/// A channel-derived random test instance: `cells` mutually interfering
/// cells with one user each, drawn from the standard channel model.
InterferenceInstance random_instance(std::uint64_t seed, std::uint64_t index,
                                     const FeatureConfig& fcfg, int cells = 3);

// Experiment commands. Each writes its CSV outputs, a run manifest, and for
// training commands a checkpoint, into out_dir; reruns with identical
// arguments produce byte-identical files. Errors are thrown.

void run_train(const ExperimentConfig& cfg, std::uint64_t seed,
               const std::filesystem::path& out_dir);

void run_sweep_gamma(const ExperimentConfig& cfg, std::uint64_t seed,
                     const std::filesystem::path& out_dir);

void run_eval(const ExperimentConfig& cfg, std::uint64_t seed,
              const std::filesystem::path& out_dir,
              const std::optional<std::filesystem::path>& checkpoint_path);

void run_trace(const ExperimentConfig& cfg, std::uint64_t seed,
               const std::filesystem::path& out_dir,
               const std::optional<std::filesystem::path>& checkpoint_path);

/// Solver cross-check: FP and WMMSE against the brute-force grid optimum on
/// `cfg.repeats` random instances. Writes per-instance ratios; throws if
/// either solver's mean ratio falls below 0.95.
void run_oracle_check(const ExperimentConfig& cfg, std::uint64_t seed,
                      const std::filesystem::path& out_dir);

} // namespace dqpa

#endif // DQPA_EXPERIMENTS_HPP
