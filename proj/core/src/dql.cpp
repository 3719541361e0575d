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

#include "dqpa/dql.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace dqpa {

void TrainConfig::validate() const {
    if (gamma < 0.0 || gamma >= 1.0)
        throw std::invalid_argument("TrainConfig: gamma must lie in [0, 1)");
    if (lr_initial <= 0.0 || lr_final <= 0.0)
        throw std::invalid_argument("TrainConfig: learning rates must be positive");
    if (eps_initial <= 0.0 || eps_final <= 0.0 || eps_initial > 1.0)
        throw std::invalid_argument("TrainConfig: exploration rates must lie in (0, 1]");
    if (episodes_observe < 0 || episodes_explore < 0 || total_episodes() < 1)
        throw std::invalid_argument("TrainConfig: episode counts must be non-negative "
                                    "and total at least 1");
    if (slots_per_episode < 1)
        throw std::invalid_argument("TrainConfig: slots_per_episode must be positive");
    if (train_interval < 1)
        throw std::invalid_argument("TrainConfig: train_interval must be positive");
    if (batch_size < 1)
        throw std::invalid_argument("TrainConfig: batch_size must be positive");
    if (replay_capacity < std::size_t(batch_size))
        throw std::invalid_argument("TrainConfig: replay_capacity must hold a batch");
    if (hidden1 < 1 || hidden2 < 1)
        throw std::invalid_argument("TrainConfig: hidden layer widths must be positive");
}

Schedule schedules(int episode, int slot, const TrainConfig& cfg) {
    if (episode < 0 || slot < 0 || slot >= cfg.slots_per_episode)
        throw std::invalid_argument("schedules: episode/slot out of range");
    if (episode < cfg.episodes_observe)
        return {cfg.lr_initial, 1.0};

    // Global slot index within the explore phase, clamped so rollouts past
    // the schedule keep the final values.
    const long tau_max = long(cfg.episodes_explore) * cfg.slots_per_episode - 1;
    long tau = long(episode - cfg.episodes_observe) * cfg.slots_per_episode + slot;
    if (tau > tau_max)
        tau = tau_max;
    const double frac = tau_max > 0 ? double(tau) / double(tau_max) : 1.0;
    const double lr = cfg.lr_initial * std::pow(cfg.lr_final / cfg.lr_initial, frac);
    const double eps = cfg.eps_initial * std::pow(cfg.eps_final / cfg.eps_initial, frac);
    return {lr, eps};
}

int act_eps_greedy(const QNetwork& net, const std::vector<double>& state,
                   double epsilon, Rng& rng) {
    if (int(state.size()) != net.input_dim())
        throw std::invalid_argument("act_eps_greedy: state length mismatch");
    if (rng.uniform() < epsilon)
        return int(rng.uniform_below(std::uint64_t(net.output_dim())));
    const Eigen::VectorXd q =
        net.forward(Eigen::Map<const Eigen::VectorXd>(state.data(), state.size()));
    Eigen::Index best = 0;
    q.maxCoeff(&best); // first maximum, so ties pick the lowest index
    return int(best);
}

double td_target(const QNetwork& net, const Experience& e, double gamma) {
    if (gamma == 0.0 || !e.has_next)
        return e.reward;
    const Eigen::VectorXd q = net.forward(
        Eigen::Map<const Eigen::VectorXd>(e.next_state.data(), e.next_state.size()));
    return e.reward + gamma * q.maxCoeff();
}

double train_step(QNetwork& net, const ReplayMemory& memory, double gamma, double lr,
                  int batch_size, Rng& rng) {
    if (batch_size < 1)
        throw std::invalid_argument("train_step: batch_size must be positive");
    const std::vector<const Experience*> batch =
        memory.sample(std::size_t(batch_size), rng);
    const int in = net.input_dim();

    Eigen::MatrixXd states(in, batch_size);
    std::vector<int> actions(std::size_t(batch_size), 0);
    Eigen::VectorXd targets(batch_size);
    for (int b = 0; b < batch_size; ++b) {
        const Experience& e = *batch[std::size_t(b)];
        if (int(e.state.size()) != in)
            throw std::invalid_argument("train_step: replayed state length mismatch");
        states.col(b) = Eigen::Map<const Eigen::VectorXd>(e.state.data(), in);
        actions[std::size_t(b)] = e.action;
        targets[b] = e.reward;
    }

    if (gamma != 0.0) {
        std::vector<int> cols;
        for (int b = 0; b < batch_size; ++b)
            if (batch[std::size_t(b)]->has_next)
                cols.push_back(b);
        if (!cols.empty()) {
            Eigen::MatrixXd next_states(in, Eigen::Index(cols.size()));
            for (std::size_t i = 0; i < cols.size(); ++i) {
                const Experience& e = *batch[std::size_t(cols[i])];
                if (int(e.next_state.size()) != in)
                    throw std::invalid_argument(
                        "train_step: replayed next-state length mismatch");
                next_states.col(Eigen::Index(i)) =
                    Eigen::Map<const Eigen::VectorXd>(e.next_state.data(), in);
            }
            const Eigen::MatrixXd q_next = net.forward_batch(next_states);
            for (std::size_t i = 0; i < cols.size(); ++i)
                targets[cols[i]] += gamma * q_next.col(Eigen::Index(i)).maxCoeff();
        }
    }

    QNetwork::Gradients grads;
    const double loss = net.loss_and_gradients(states, actions, targets, grads);
    if (!std::isfinite(loss))
        throw std::runtime_error("train_step: non-finite minibatch loss");
    net.adam_update(grads, lr);
    return loss;
}

namespace {

// States of every link at the current slot, in link order, as both the
// per-agent vectors (for replay) and one matrix (for batched forwards).
void build_all_states(const Env& env, const FeatureConfig& fcfg,
                      std::vector<std::vector<double>>& states, Eigen::MatrixXd& mat) {
    const Topology& topo = env.topology();
    const int n = env.config().n_cells;
    const int k = env.config().users_per_cell;
    const int len = fcfg.state_length();
    states.resize(std::size_t(n) * k);
    mat.resize(len, std::size_t(n) * k);
    for (int cell = 0; cell < n; ++cell) {
        for (int user = 0; user < k; ++user) {
            const int l = cell * k + user;
            const std::vector<InterfererEntry> sorted =
                interferer_set(env.gains(), cell, user, topo);
            states[std::size_t(l)] = build_state(sorted, env.prev_rates(),
                                                 env.prev_powers(), cell, user, fcfg);
            mat.col(l) =
                Eigen::Map<const Eigen::VectorXd>(states[std::size_t(l)].data(), len);
        }
    }
}

// Epsilon-greedy for all links with one batched forward over the greedy
// subset. Stream discipline: per link, one uniform for the branch and, only
// on the exploring branch, one more for the action index.
std::vector<int> choose_actions(const QNetwork& net, const Eigen::MatrixXd& states,
                                double epsilon, Rng& policy) {
    const int links = int(states.cols());
    std::vector<int> actions(std::size_t(links), -1);
    std::vector<int> greedy_cols;
    for (int l = 0; l < links; ++l) {
        if (policy.uniform() < epsilon)
            actions[std::size_t(l)] =
                int(policy.uniform_below(std::uint64_t(net.output_dim())));
        else
            greedy_cols.push_back(l);
    }
    if (!greedy_cols.empty()) {
        Eigen::MatrixXd sub(states.rows(), Eigen::Index(greedy_cols.size()));
        for (std::size_t i = 0; i < greedy_cols.size(); ++i)
            sub.col(Eigen::Index(i)) = states.col(greedy_cols[i]);
        const Eigen::MatrixXd q = net.forward_batch(sub);
        for (std::size_t i = 0; i < greedy_cols.size(); ++i) {
            Eigen::Index best = 0;
            q.col(Eigen::Index(i)).maxCoeff(&best);
            actions[std::size_t(greedy_cols[i])] = int(best);
        }
    }
    return actions;
}

PowerAllocation actions_to_powers(const std::vector<int>& actions,
                                  const ActionSet& set, int n_cells,
                                  int users_per_cell) {
    PowerAllocation p = PowerAllocation::zero(n_cells, users_per_cell);
    for (std::size_t l = 0; l < actions.size(); ++l)
        p.p[l] = set.levels[std::size_t(actions[l])];
    return p;
}

} // namespace

TrainResult centralized_train(const Topology& topo, const ChannelConfig& ccfg,
                              const FeatureConfig& fcfg, const TrainConfig& tcfg,
                              std::uint64_t seed) {
    ccfg.validate();
    fcfg.validate();
    tcfg.validate();
    if (topo.n_cells() != ccfg.n_cells)
        throw std::invalid_argument("centralized_train: topology/config mismatch");

    Rng net_init = substream(seed, "net-init");
    Rng policy = substream(seed, "policy");

    TrainResult result;
    result.net = QNetwork::glorot_init(fcfg.state_length(), tcfg.hidden1, tcfg.hidden2,
                                       fcfg.action_count, net_init);
    result.features = fcfg;
    result.actions = build_action_set(fcfg);
    result.episode_avg_rate.reserve(std::size_t(tcfg.total_episodes()));

    ReplayMemory memory(tcfg.replay_capacity);
    const int links = ccfg.links();
    const bool defer = tcfg.gamma != 0.0;

    std::vector<std::vector<double>> states;
    Eigen::MatrixXd state_mat;
    std::vector<Experience> pending{std::size_t(links)};

    for (int ep = 0; ep < tcfg.total_episodes(); ++ep) {
        Env env = make_env(topo, ccfg, seed, std::uint64_t(ep));
        Rng fading = fading_stream(seed, std::uint64_t(ep));
        bool have_pending = false;
        double rate_acc = 0.0;

        for (int t = 0; t < tcfg.slots_per_episode; ++t) {
            const Schedule sched = schedules(ep, t, tcfg);
            build_all_states(env, fcfg, states, state_mat);

            // The previous slot's records become complete once its successor
            // states exist.
            if (have_pending) {
                for (int l = 0; l < links; ++l) {
                    pending[std::size_t(l)].has_next = true;
                    pending[std::size_t(l)].next_state = states[std::size_t(l)];
                    memory.push(std::move(pending[std::size_t(l)]));
                }
                have_pending = false;
            }

            const std::vector<int> actions =
                choose_actions(result.net, state_mat, sched.epsilon, policy);
            const PowerAllocation p = actions_to_powers(actions, result.actions,
                                                        ccfg.n_cells,
                                                        ccfg.users_per_cell);
            const RateReport report = env.step(p, fading);
            rate_acc += report.sum_rate;

            // Every agent shares the network-wide reward.
            const bool last_slot = t + 1 == tcfg.slots_per_episode;
            for (int l = 0; l < links; ++l) {
                Experience e;
                e.state = std::move(states[std::size_t(l)]);
                e.action = actions[std::size_t(l)];
                e.reward = report.sum_rate;
                if (defer && !last_slot) {
                    pending[std::size_t(l)] = std::move(e);
                } else {
                    memory.push(std::move(e));
                }
            }
            have_pending = defer && !last_slot;

            if ((t + 1) % tcfg.train_interval == 0 &&
                memory.size() >= std::size_t(tcfg.batch_size))
                train_step(result.net, memory, tcfg.gamma, sched.lr, tcfg.batch_size,
                           policy);
        }
        result.episode_avg_rate.push_back(rate_acc /
                                          (double(tcfg.slots_per_episode) * links));
    }
    result.replay_final_size = memory.size();
    return result;
}

PowerAllocation greedy_powers(const QNetwork& net, const Env& env,
                              const FeatureConfig& fcfg, const ActionSet& actions) {
    if (net.input_dim() != fcfg.state_length() ||
        net.output_dim() != fcfg.action_count)
        throw std::invalid_argument("greedy_powers: network/feature mismatch");
    std::vector<std::vector<double>> states;
    Eigen::MatrixXd state_mat;
    build_all_states(env, fcfg, states, state_mat);
    const Eigen::MatrixXd q = net.forward_batch(state_mat);
    PowerAllocation p = PowerAllocation::zero(env.config().n_cells,
                                              env.config().users_per_cell);
    for (int l = 0; l < env.config().links(); ++l) {
        Eigen::Index best = 0;
        q.col(l).maxCoeff(&best);
        p.p[std::size_t(l)] = actions.levels[std::size_t(best)];
    }
    return p;
}

std::vector<double> distributed_execute(const QNetwork& net, Env& env,
                                        const FeatureConfig& fcfg,
                                        const ActionSet& actions, int slots,
                                        Rng& fading) {
    const int links = env.config().links();
    std::vector<double> avg_rate;
    avg_rate.reserve(std::size_t(slots));
    for (int t = 0; t < slots; ++t) {
        const PowerAllocation p = greedy_powers(net, env, fcfg, actions);
        const RateReport report = env.step(p, fading);
        avg_rate.push_back(report.sum_rate / double(links));
    }
    return avg_rate;
}

} // namespace dqpa
