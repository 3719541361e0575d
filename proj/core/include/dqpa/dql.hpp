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

#ifndef DQPA_DQL_HPP
#define DQPA_DQL_HPP

#include <cstdint>
#include <vector>

#include "dqpa/features.hpp"
#include "dqpa/netsim.hpp"
#include "dqpa/qnet.hpp"
#include "dqpa/replay.hpp"
#include "dqpa/rng.hpp"
#include "dqpa/topology.hpp"

namespace dqpa {

/// Training hyper-parameters. Defaults reproduce the reference setup;
/// episode counts are scaled down by callers for quick runs.
struct TrainConfig {
    double gamma = 0.0;
    double lr_initial = 1e-3;
    double lr_final = 1e-4;
    double eps_initial = 0.2;
    double eps_final = 1e-4;
    int episodes_observe = 100;
    int episodes_explore = 9900;
    int slots_per_episode = 50;
    int train_interval = 10;
    int batch_size = 256;
    std::size_t replay_capacity = 50000;
    int hidden1 = 128;
    int hidden2 = 64;

    int total_episodes() const { return episodes_observe + episodes_explore; }
    void validate() const;
};

/// Learning rate and exploration probability for a given slot.
/// During the observe phase the policy is fully random (epsilon = 1)
/// and the learning rate stays at its initial value. During the explore
/// phase both decay exponentially in the global explore-slot index.
struct Schedule {
    double lr;
    double epsilon;
};

Schedule schedules(int episode, int slot, const TrainConfig& cfg);

/// Epsilon-greedy action choice. Draws one uniform for the branch and,
/// on the random branch, one more for the action index. Greedy ties
/// resolve to the lowest action index.
int act_eps_greedy(const QNetwork& net, const std::vector<double>& state,
                   double epsilon, Rng& rng);

/// Temporal-difference target. With gamma == 0 (or a terminal record)
/// the target is the reward alone and next_state is never read.
double td_target(const QNetwork& net, const Experience& e, double gamma);

/// One minibatch update: sample, build targets, descend the squared
/// TD error on the taken actions. Returns the minibatch loss.
double train_step(QNetwork& net, const ReplayMemory& memory, double gamma,
                  double lr, int batch_size, Rng& rng);

/// Per-episode training metrics.
struct TrainResult {
    QNetwork net;
    FeatureConfig features;
    ActionSet actions;
    std::vector<double> episode_avg_rate; // mean per-link rate, bit/s/Hz
    std::size_t replay_final_size = 0;    // records held when training ended
};

/// Centralized trainer: one shared network, experiences from every
/// link, reward equal to the network-wide sum rate. Each episode draws
/// a fresh user drop and channel realization from `seed`-derived
/// substreams, so two calls with equal arguments are byte-identical.
TrainResult centralized_train(const Topology& topo, const ChannelConfig& ccfg,
                              const FeatureConfig& fcfg, const TrainConfig& tcfg,
                              std::uint64_t seed);

/// Greedy (argmax-Q) power choice of every agent for the environment's
/// current slot; pure, does not advance the environment.
PowerAllocation greedy_powers(const QNetwork& net, const Env& env,
                              const FeatureConfig& fcfg, const ActionSet& actions);

/// Greedy (epsilon = 0) rollout of a trained network; no learning.
/// Steps `env` with the supplied fading stream and returns the mean
/// per-link rate of each slot.
std::vector<double> distributed_execute(const QNetwork& net, Env& env,
                                        const FeatureConfig& fcfg,
                                        const ActionSet& actions, int slots,
                                        Rng& fading);

} // namespace dqpa

#endif // DQPA_DQL_HPP
