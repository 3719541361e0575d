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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dqpa/config.hpp"
#include "dqpa/experiments.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    int episodes = -1;
    int cells = -1;
    int users = -1;
    double gamma = -1.0;
    int repeats = -1;
    int slots = -1;
    std::string checkpoint;
    std::vector<std::string> schemes;
};

void add_common_flags(CLI::App* sub, CommonArgs& args, bool with_checkpoint) {
    sub->add_option("--config", args.config_path,
                    "JSON config file; absent keys keep their defaults")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", args.seed, "master RNG seed (required)")->required();
    sub->add_option("--out", args.out_dir, "output directory (created if missing)");
    sub->add_option("--episodes", args.episodes,
                    "total training episodes; observe phase is the smaller of 100 "
                    "and a fifth of the total");
    sub->add_option("--cells", args.cells, "number of cells");
    sub->add_option("--users", args.users, "users per cell");
    sub->add_option("--gamma", args.gamma,
                    "discount factor; for sweep-gamma, restricts the sweep to "
                    "this single value")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--repeats", args.repeats,
                    "evaluation repeats / oracle-check instances");
    sub->add_option("--slots", args.slots,
                    "slots per episode (trace: total traced slots)");
    sub->add_option("--schemes", args.schemes,
                    "subset of dqn,fp,wmmse,max,random (comma separated)")
        ->delimiter(',');
    if (with_checkpoint)
        sub->add_option("--checkpoint", args.checkpoint,
                        "trained network to evaluate (required when schemes "
                        "include dqn)")
            ->check(CLI::ExistingFile);
}

dqpa::ExperimentConfig resolve_config(const CommonArgs& args, bool slots_are_trace) {
    dqpa::ExperimentConfig cfg = args.config_path.empty()
                                     ? dqpa::default_config()
                                     : dqpa::load_config(args.config_path);
    if (args.episodes >= 0)
        dqpa::apply_episode_budget(cfg.train, args.episodes);
    if (args.cells >= 0) {
        cfg.channel.n_cells = args.cells;
        cfg.channel.grid_rows = 0;
        cfg.channel.grid_cols = 0;
    }
    if (args.users >= 0)
        cfg.channel.users_per_cell = args.users;
    if (args.gamma >= 0.0) {
        cfg.train.gamma = args.gamma;
        cfg.gamma_list = {args.gamma};
    }
    if (args.repeats >= 0)
        cfg.repeats = args.repeats;
    if (args.slots >= 0) {
        if (slots_are_trace)
            cfg.trace_slots = args.slots;
        else
            cfg.train.slots_per_episode = args.slots;
    }
    if (!args.schemes.empty())
        cfg.schemes = args.schemes;
    return cfg;
}

std::optional<std::filesystem::path> checkpoint_of(const CommonArgs& args) {
    if (args.checkpoint.empty())
        return std::nullopt;
    return std::filesystem::path(args.checkpoint);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic multi-cell downlink power allocation: deep-Q "
                 "training, classical solvers, and reproducible experiments"};
    app.require_subcommand(1);

    CommonArgs train_args, sweep_args, eval_args, trace_args, oracle_args;
    CLI::App* cmd_train =
        app.add_subcommand("train", "centralized training run; writes checkpoint "
                                    "and per-episode curve");
    add_common_flags(cmd_train, train_args, false);
    CLI::App* cmd_sweep = app.add_subcommand(
        "sweep-gamma", "train one network per discount value, then evaluate each "
                       "across cell counts");
    add_common_flags(cmd_sweep, sweep_args, false);
    CLI::App* cmd_eval = app.add_subcommand(
        "eval", "averaged scheme comparison across user densities");
    add_common_flags(cmd_eval, eval_args, true);
    CLI::App* cmd_trace = app.add_subcommand(
        "trace", "per-slot multi-scheme trace on one shared channel realization");
    add_common_flags(cmd_trace, trace_args, true);
    CLI::App* cmd_oracle = app.add_subcommand(
        "oracle-check", "verify FP and WMMSE against exhaustive search on random "
                        "instances");
    add_common_flags(cmd_oracle, oracle_args, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_train->parsed()) {
            dqpa::run_train(resolve_config(train_args, false), train_args.seed,
                            train_args.out_dir);
        } else if (cmd_sweep->parsed()) {
            dqpa::run_sweep_gamma(resolve_config(sweep_args, false), sweep_args.seed,
                                  sweep_args.out_dir);
        } else if (cmd_eval->parsed()) {
            dqpa::run_eval(resolve_config(eval_args, false), eval_args.seed,
                           eval_args.out_dir, checkpoint_of(eval_args));
        } else if (cmd_trace->parsed()) {
            dqpa::run_trace(resolve_config(trace_args, true), trace_args.seed,
                            trace_args.out_dir, checkpoint_of(trace_args));
        } else if (cmd_oracle->parsed()) {
            dqpa::run_oracle_check(resolve_config(oracle_args, false),
                                   oracle_args.seed, oracle_args.out_dir);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
