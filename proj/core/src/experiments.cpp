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

#include "dqpa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "dqpa/checkpoint.hpp"
#include "dqpa/csv.hpp"
#include "serial_detail.hpp"

namespace dqpa {

namespace {

constexpr const char* kCodeVersion = "0.1.0";

/// Runs fn(0..n-1) on a small thread pool. Job i's effects depend only on i,
/// so results are aggregated afterwards in index order and the overall
/// outcome is schedule-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t n_threads = std::min<std::size_t>(hw ? hw : 1, n);
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t i = 0; i < n_threads; ++i)
        pool.emplace_back(worker);
    for (std::thread& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

std::vector<std::string> metrics_header() {
    return {"experiment", "scheme", "episode", "slot",     "gamma",
            "users",      "cells",  "sum_rate", "avg_rate", "seed"};
}

std::vector<std::string> metrics_cells(const std::string& experiment,
                                       const std::string& scheme, long episode,
                                       long slot, double gamma, int users, int cells,
                                       double sum_rate, std::uint64_t seed) {
    const double links = double(users) * double(cells);
    return {experiment,
            scheme,
            format_i64(episode),
            format_i64(slot),
            format_double(gamma),
            format_i64(users),
            format_i64(cells),
            format_double(sum_rate),
            format_double(sum_rate / links),
            format_u64(seed)};
}

void write_manifest(const std::filesystem::path& out_dir, const std::string& command,
                    const ExperimentConfig& cfg, std::uint64_t seed,
                    const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["command"] = command;
    j["code_version"] = kCodeVersion;
    j["seed"] = seed;
    j["config"] = detail::config_to_json(cfg);
    j["outputs"] = outputs;
    const std::filesystem::path path = out_dir / "run_manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_manifest: cannot open " + path.string());
    out << j.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write_manifest: write failed for " + path.string());
}

double checksum(const GainTensor& g) {
    double sum = 0.0;
    for (double v : g.g)
        sum += v;
    return sum;
}

/// One episode of one scheme; returns the mean per-slot sum rate.
double rollout_scheme(const std::string& scheme, const Topology& topo,
                      const ChannelConfig& ccfg, const FeatureConfig& fcfg,
                      const QNetwork* net, std::uint64_t stream_seed,
                      std::uint64_t episode, int slots) {
    Env env = make_env(topo, ccfg, stream_seed, episode);
    Rng fading = fading_stream(stream_seed, episode);
    const ActionSet actions = build_action_set(fcfg);
    const int links = ccfg.links();

    if (scheme == "dqn") {
        if (net == nullptr)
            throw std::invalid_argument("rollout: scheme \"dqn\" needs a network");
        const std::vector<double> avg =
            distributed_execute(*net, env, fcfg, actions, slots, fading);
        double acc = 0.0;
        for (double r : avg)
            acc += r * links;
        return acc / double(slots);
    }

    Rng policy = substream(stream_seed, "random-policy", episode);
    double acc = 0.0;
    for (int t = 0; t < slots; ++t) {
        PowerAllocation p = PowerAllocation::zero(ccfg.n_cells, ccfg.users_per_cell);
        if (scheme == "max") {
            std::fill(p.p.begin(), p.p.end(), fcfg.p_max_w);
        } else if (scheme == "random") {
            for (double& pw : p.p)
                pw = actions.levels[policy.uniform_below(actions.levels.size())];
        } else if (scheme == "fp" || scheme == "wmmse") {
            const InterferenceInstance inst =
                build_instance(env.gains(), topo, ccfg.noise_w, fcfg.p_max_w);
            const AllocResult res =
                scheme == "fp" ? fp_allocate(inst) : wmmse_allocate(inst);
            p.p = res.p;
        } else {
            throw std::invalid_argument("rollout: unknown scheme \"" + scheme + "\"");
        }
        acc += env.step(p, fading).sum_rate;
    }
    return acc / double(slots);
}

} // namespace

void apply_episode_budget(TrainConfig& cfg, int total_episodes) {
    if (total_episodes < 1)
        throw std::invalid_argument("apply_episode_budget: need at least 1 episode");
    cfg.episodes_observe = std::min(100, total_episodes / 5);
    cfg.episodes_explore = total_episodes - cfg.episodes_observe;
}

double evaluate_scheme(const std::string& scheme, const ChannelConfig& ccfg,
                       const Topology& topo, const FeatureConfig& fcfg,
                       const QNetwork* net, int repeats, int slots,
                       std::uint64_t seed) {
    if (repeats < 1 || slots < 1)
        throw std::invalid_argument("evaluate_scheme: repeats and slots must be positive");
    std::vector<double> per_repeat(std::size_t(repeats), 0.0);
    parallel_for(std::size_t(repeats), [&](std::size_t i) {
        per_repeat[i] = rollout_scheme(scheme, topo, ccfg, fcfg, net, seed, i, slots);
    });
    double acc = 0.0;
    for (double v : per_repeat)
        acc += v;
    return acc / double(repeats);
}

InterferenceInstance random_instance(std::uint64_t seed, std::uint64_t index,
                                     const FeatureConfig& fcfg, int cells) {
    ChannelConfig cc;
    cc.n_cells = cells;
    cc.users_per_cell = 1;
    cc.neighbor_cap = cells - 1;
    cc.grid_rows = 1;
    cc.grid_cols = cells;
    cc.validate();
    const Topology topo = build_topology(cc);
    const Env env = make_env(topo, cc, derive_seed(seed, "instance"), index);
    return build_instance(env.gains(), topo, cc.noise_w, fcfg.p_max_w);
}

void run_train(const ExperimentConfig& cfg, std::uint64_t seed,
               const std::filesystem::path& out_dir) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    const Topology topo = build_topology(cfg.channel);
    const TrainResult res =
        centralized_train(topo, cfg.channel, cfg.features, cfg.train, seed);

    save_checkpoint(res.net, cfg.features, out_dir / "checkpoint.json");

    std::vector<std::string> header = metrics_header();
    header.push_back("avg_rate_smoothed");
    CsvWriter csv(out_dir / "train_curve.csv", header);
    const int links = cfg.channel.links();
    double window_sum = 0.0;
    for (std::size_t e = 0; e < res.episode_avg_rate.size(); ++e) {
        window_sum += res.episode_avg_rate[e];
        std::size_t window = std::size_t(cfg.smoothing_window);
        if (e >= window)
            window_sum -= res.episode_avg_rate[e - window];
        else
            window = e + 1;
        std::vector<std::string> row = metrics_cells(
            "train", "dqn", long(e), -1, cfg.train.gamma, cfg.channel.users_per_cell,
            cfg.channel.n_cells, res.episode_avg_rate[e] * links, seed);
        row.push_back(format_double(window_sum / double(window)));
        csv.row(row);
    }
    write_manifest(out_dir, "train", cfg, seed,
                   {"checkpoint.json", "train_curve.csv"});
}

void run_sweep_gamma(const ExperimentConfig& cfg, std::uint64_t seed,
                     const std::filesystem::path& out_dir) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    const Topology topo = build_topology(cfg.channel);
    const int links = cfg.channel.links();

    // One training per discount value, all from the same seed so the only
    // difference between runs is gamma itself.
    std::vector<TrainResult> trained(cfg.gamma_list.size());
    parallel_for(cfg.gamma_list.size(), [&](std::size_t i) {
        TrainConfig tc = cfg.train;
        tc.gamma = cfg.gamma_list[i];
        trained[i] = centralized_train(topo, cfg.channel, cfg.features, tc, seed);
    });

    CsvWriter curves(out_dir / "sweep_gamma_curves.csv", metrics_header());
    for (std::size_t i = 0; i < cfg.gamma_list.size(); ++i)
        for (std::size_t e = 0; e < trained[i].episode_avg_rate.size(); ++e)
            curves.row(metrics_cells("sweep-gamma", "dqn", long(e), -1,
                                     cfg.gamma_list[i], cfg.channel.users_per_cell,
                                     cfg.channel.n_cells,
                                     trained[i].episode_avg_rate[e] * links, seed));

    // Cross-scenario evaluation: every trained network on every cell count,
    // channels shared across gammas.
    CsvWriter eval_csv(out_dir / "sweep_gamma_eval.csv", metrics_header());
    const std::uint64_t eval_seed = derive_seed(seed, "sweep-eval");
    for (int n_eval : cfg.cells_list) {
        ChannelConfig cc = cfg.channel;
        cc.n_cells = n_eval;
        cc.grid_rows = 0;
        cc.grid_cols = 0;
        const Topology t2 = build_topology(cc);
        const std::uint64_t seed_n = derive_seed(eval_seed, "cells",
                                                 std::uint64_t(n_eval));
        for (std::size_t i = 0; i < cfg.gamma_list.size(); ++i) {
            const double mean_sum_rate = evaluate_scheme(
                "dqn", cc, t2, cfg.features, &trained[i].net, cfg.repeats,
                cfg.train.slots_per_episode, seed_n);
            eval_csv.row(metrics_cells("sweep-eval", "dqn", -1, -1,
                                       cfg.gamma_list[i], cc.users_per_cell, n_eval,
                                       mean_sum_rate, seed));
        }
    }
    write_manifest(out_dir, "sweep-gamma", cfg, seed,
                   {"sweep_gamma_curves.csv", "sweep_gamma_eval.csv"});
}

namespace {

const QNetwork* load_net_if_needed(const ExperimentConfig& cfg,
                                   const std::optional<std::filesystem::path>& path,
                                   std::optional<Checkpoint>& storage,
                                   const char* command) {
    const bool needed = std::find(cfg.schemes.begin(), cfg.schemes.end(), "dqn") !=
                        cfg.schemes.end();
    if (!needed)
        return nullptr;
    if (!path)
        throw std::invalid_argument(std::string(command) +
                                    ": scheme \"dqn\" requires --checkpoint");
    storage = load_checkpoint(*path);
    if (!(storage->features == cfg.features))
        throw std::invalid_argument(
            std::string(command) +
            ": checkpoint was trained with a different feature configuration "
            "(state length or action set differs); adjust the config or retrain");
    return &storage->net;
}

} // namespace

void run_eval(const ExperimentConfig& cfg, std::uint64_t seed,
              const std::filesystem::path& out_dir,
              const std::optional<std::filesystem::path>& checkpoint_path) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    std::optional<Checkpoint> ck;
    const QNetwork* net = load_net_if_needed(cfg, checkpoint_path, ck, "eval");

    CsvWriter csv(out_dir / "eval.csv", metrics_header());
    const std::uint64_t eval_seed = derive_seed(seed, "eval");
    for (int users : cfg.users_list) {
        ChannelConfig cc = cfg.channel;
        cc.users_per_cell = users;
        const Topology topo = build_topology(cc);
        const std::uint64_t seed_k = derive_seed(eval_seed, "users",
                                                 std::uint64_t(users));
        for (const std::string& scheme : cfg.schemes) {
            const double mean_sum_rate =
                evaluate_scheme(scheme, cc, topo, cfg.features, net, cfg.repeats,
                                cfg.train.slots_per_episode, seed_k);
            const double gamma = scheme == "dqn" ? cfg.train.gamma : -1.0;
            csv.row(metrics_cells("eval", scheme, -1, -1, gamma, users,
                                  cc.n_cells, mean_sum_rate, seed));
        }
    }
    write_manifest(out_dir, "eval", cfg, seed, {"eval.csv"});
}

void run_trace(const ExperimentConfig& cfg, std::uint64_t seed,
               const std::filesystem::path& out_dir,
               const std::optional<std::filesystem::path>& checkpoint_path) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    std::optional<Checkpoint> ck;
    const QNetwork* net = load_net_if_needed(cfg, checkpoint_path, ck, "trace");

    const Topology topo = build_topology(cfg.channel);
    const std::uint64_t trace_seed = derive_seed(seed, "trace");
    const ActionSet actions = build_action_set(cfg.features);

    // Every scheme walks its own copy of one environment, stepped with an
    // identical innovation stream: the channel sample path is shared and
    // only the power decisions differ.
    struct SchemeRun {
        std::string name;
        Env env;
        Rng fading;
        Rng policy;
    };
    const Env base = make_env(topo, cfg.channel, trace_seed, 0);
    std::vector<SchemeRun> runs;
    runs.reserve(cfg.schemes.size());
    for (const std::string& scheme : cfg.schemes)
        runs.push_back({scheme, base, fading_stream(trace_seed, 0),
                        substream(trace_seed, "random-policy")});

    std::vector<std::string> header = metrics_header();
    header.push_back("gain_checksum");
    CsvWriter csv(out_dir / "trace.csv", header);

    for (int t = 0; t < cfg.trace_slots; ++t) {
        for (SchemeRun& run : runs) {
            const double sum = checksum(run.env.gains());
            PowerAllocation p =
                PowerAllocation::zero(cfg.channel.n_cells, cfg.channel.users_per_cell);
            if (run.name == "dqn") {
                p = greedy_powers(*net, run.env, cfg.features, actions);
            } else if (run.name == "max") {
                std::fill(p.p.begin(), p.p.end(), cfg.features.p_max_w);
            } else if (run.name == "random") {
                for (double& pw : p.p)
                    pw = actions.levels[run.policy.uniform_below(
                        actions.levels.size())];
            } else {
                const InterferenceInstance inst = build_instance(
                    run.env.gains(), topo, cfg.channel.noise_w, cfg.features.p_max_w);
                const AllocResult res = run.name == "fp" ? fp_allocate(inst)
                                                         : wmmse_allocate(inst);
                p.p = res.p;
            }
            const RateReport report = run.env.step(p, run.fading);
            const double gamma = run.name == "dqn" ? cfg.train.gamma : -1.0;
            std::vector<std::string> row = metrics_cells(
                "trace", run.name, -1, t, gamma, cfg.channel.users_per_cell,
                cfg.channel.n_cells, report.sum_rate, seed);
            row.push_back(format_double(sum));
            csv.row(row);
        }
    }
    write_manifest(out_dir, "trace", cfg, seed, {"trace.csv"});
}

void run_oracle_check(const ExperimentConfig& cfg, std::uint64_t seed,
                      const std::filesystem::path& out_dir) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    const int n = cfg.repeats;
    CsvWriter csv(out_dir / "oracle_check.csv",
                  {"instance", "scheme", "objective", "oracle_value", "ratio",
                   "iterations", "converged"});

    struct Row {
        double fp_obj, wm_obj, oracle;
        int fp_iters, wm_iters;
        bool fp_conv, wm_conv;
    };
    std::vector<Row> rows(n);
    parallel_for(std::size_t(n), [&](std::size_t i) {
        const InterferenceInstance inst = random_instance(seed, i, cfg.features, 3);
        const BruteForceResult bf = brute_force(inst, 50);
        const AllocResult fp = fp_allocate(inst);
        const AllocResult wm = wmmse_allocate(inst);
        rows[i] = {fp.trace.back(), wm.trace.back(), bf.value,
                   int(fp.trace.size()) - 1, int(wm.trace.size()) - 1,
                   fp.converged, wm.converged};
    });

    double fp_ratio_sum = 0.0, wm_ratio_sum = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        if (!(r.oracle > 0.0))
            throw std::runtime_error("oracle check: degenerate instance objective");
        const double fr = r.fp_obj / r.oracle;
        const double wr = r.wm_obj / r.oracle;
        fp_ratio_sum += fr;
        wm_ratio_sum += wr;
        csv.row({format_i64(long(i)), "fp", format_double(r.fp_obj),
                 format_double(r.oracle), format_double(fr), format_i64(r.fp_iters),
                 r.fp_conv ? "1" : "0"});
        csv.row({format_i64(long(i)), "wmmse", format_double(r.wm_obj),
                 format_double(r.oracle), format_double(wr), format_i64(r.wm_iters),
                 r.wm_conv ? "1" : "0"});
    }
    const double fp_mean = fp_ratio_sum / n;
    const double wm_mean = wm_ratio_sum / n;
    write_manifest(out_dir, "oracle-check", cfg, seed, {"oracle_check.csv"});
    std::cout << "oracle check: mean objective ratio fp " << fp_mean << ", wmmse "
              << wm_mean << " over " << n << " instances\n";
    if (fp_mean < 0.95 || wm_mean < 0.95)
        throw std::runtime_error("oracle check failed: a solver fell below 95% of "
                                 "the exhaustive-search objective on average");
}

} // namespace dqpa
