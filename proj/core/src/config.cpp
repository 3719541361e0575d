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

#include "dqpa/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>

#include "dqpa/units.hpp"
#include "serial_detail.hpp"

namespace dqpa {

namespace {

const std::set<std::string> kSchemes = {"dqn", "fp", "wmmse", "max", "random"};

void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (const auto& item : obj.items())
        if (!known.count(item.key()))
            throw std::invalid_argument("config: unknown key \"" + item.key() +
                                        "\" in " + where);
}

template <typename T>
void get_if_present(const nlohmann::json& obj, const char* key, T& out,
                    const std::string& where) {
    if (!obj.contains(key))
        return;
    try {
        out = obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument("config: malformed value for \"" +
                                    std::string(key) + "\" in " + where);
    }
}

} // namespace

namespace detail {

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["channel"] = {{"n_cells", cfg.channel.n_cells},
                    {"users_per_cell", cfg.channel.users_per_cell},
                    {"r_min_km", cfg.channel.r_min_km},
                    {"r_max_km", cfg.channel.r_max_km},
                    {"doppler_hz", cfg.channel.doppler_hz},
                    {"slot_period_s", cfg.channel.slot_period_s},
                    {"shadow_std_db", cfg.channel.shadow_std_db},
                    {"pathloss_fixed_db", cfg.channel.pathloss_fixed_db},
                    {"pathloss_slope_db", cfg.channel.pathloss_slope_db},
                    {"noise_dbm", watt_to_dbm(cfg.channel.noise_w)},
                    {"neighbor_cap", cfg.channel.neighbor_cap},
                    {"grid_rows", cfg.channel.grid_rows},
                    {"grid_cols", cfg.channel.grid_cols}};
    j["features"] = {{"top_interferers", cfg.features.top_interferers},
                     {"action_count", cfg.features.action_count},
                     {"p_min_dbm", watt_to_dbm(cfg.features.p_min_w)},
                     {"p_max_dbm", watt_to_dbm(cfg.features.p_max_w)}};
    j["train"] = {{"gamma", cfg.train.gamma},
                  {"lr_initial", cfg.train.lr_initial},
                  {"lr_final", cfg.train.lr_final},
                  {"eps_initial", cfg.train.eps_initial},
                  {"eps_final", cfg.train.eps_final},
                  {"episodes_observe", cfg.train.episodes_observe},
                  {"episodes_explore", cfg.train.episodes_explore},
                  {"slots_per_episode", cfg.train.slots_per_episode},
                  {"train_interval", cfg.train.train_interval},
                  {"batch_size", cfg.train.batch_size},
                  {"replay_capacity", cfg.train.replay_capacity},
                  {"hidden1", cfg.train.hidden1},
                  {"hidden2", cfg.train.hidden2}};
    j["schemes"] = cfg.schemes;
    j["repeats"] = cfg.repeats;
    j["gamma_list"] = cfg.gamma_list;
    j["cells_list"] = cfg.cells_list;
    j["users_list"] = cfg.users_list;
    j["trace_slots"] = cfg.trace_slots;
    j["smoothing_window"] = cfg.smoothing_window;
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    reject_unknown_keys(j,
                        {"channel", "features", "train", "schemes", "repeats",
                         "gamma_list", "cells_list", "users_list", "trace_slots",
                         "smoothing_window"},
                        "top level");

    if (j.contains("channel")) {
        const nlohmann::json& c = j.at("channel");
        reject_unknown_keys(c,
                            {"n_cells", "users_per_cell", "r_min_km", "r_max_km",
                             "doppler_hz", "slot_period_s", "shadow_std_db",
                             "pathloss_fixed_db", "pathloss_slope_db", "noise_dbm",
                             "neighbor_cap", "grid_rows", "grid_cols"},
                            "channel");
        get_if_present(c, "n_cells", cfg.channel.n_cells, "channel");
        get_if_present(c, "users_per_cell", cfg.channel.users_per_cell, "channel");
        get_if_present(c, "r_min_km", cfg.channel.r_min_km, "channel");
        get_if_present(c, "r_max_km", cfg.channel.r_max_km, "channel");
        get_if_present(c, "doppler_hz", cfg.channel.doppler_hz, "channel");
        get_if_present(c, "slot_period_s", cfg.channel.slot_period_s, "channel");
        get_if_present(c, "shadow_std_db", cfg.channel.shadow_std_db, "channel");
        get_if_present(c, "pathloss_fixed_db", cfg.channel.pathloss_fixed_db,
                       "channel");
        get_if_present(c, "pathloss_slope_db", cfg.channel.pathloss_slope_db,
                       "channel");
        if (c.contains("noise_dbm")) {
            double dbm = 0.0;
            get_if_present(c, "noise_dbm", dbm, "channel");
            cfg.channel.noise_w = dbm_to_watt(dbm);
        }
        get_if_present(c, "neighbor_cap", cfg.channel.neighbor_cap, "channel");
        get_if_present(c, "grid_rows", cfg.channel.grid_rows, "channel");
        get_if_present(c, "grid_cols", cfg.channel.grid_cols, "channel");
    }

    if (j.contains("features")) {
        const nlohmann::json& f = j.at("features");
        reject_unknown_keys(
            f, {"top_interferers", "action_count", "p_min_dbm", "p_max_dbm"},
            "features");
        get_if_present(f, "top_interferers", cfg.features.top_interferers, "features");
        get_if_present(f, "action_count", cfg.features.action_count, "features");
        if (f.contains("p_min_dbm")) {
            double dbm = 0.0;
            get_if_present(f, "p_min_dbm", dbm, "features");
            cfg.features.p_min_w = dbm_to_watt(dbm);
        }
        if (f.contains("p_max_dbm")) {
            double dbm = 0.0;
            get_if_present(f, "p_max_dbm", dbm, "features");
            cfg.features.p_max_w = dbm_to_watt(dbm);
        }
    }

    if (j.contains("train")) {
        const nlohmann::json& t = j.at("train");
        reject_unknown_keys(t,
                            {"gamma", "lr_initial", "lr_final", "eps_initial",
                             "eps_final", "episodes_observe", "episodes_explore",
                             "slots_per_episode", "train_interval", "batch_size",
                             "replay_capacity", "hidden1", "hidden2"},
                            "train");
        get_if_present(t, "gamma", cfg.train.gamma, "train");
        get_if_present(t, "lr_initial", cfg.train.lr_initial, "train");
        get_if_present(t, "lr_final", cfg.train.lr_final, "train");
        get_if_present(t, "eps_initial", cfg.train.eps_initial, "train");
        get_if_present(t, "eps_final", cfg.train.eps_final, "train");
        get_if_present(t, "episodes_observe", cfg.train.episodes_observe, "train");
        get_if_present(t, "episodes_explore", cfg.train.episodes_explore, "train");
        get_if_present(t, "slots_per_episode", cfg.train.slots_per_episode, "train");
        get_if_present(t, "train_interval", cfg.train.train_interval, "train");
        get_if_present(t, "batch_size", cfg.train.batch_size, "train");
        get_if_present(t, "replay_capacity", cfg.train.replay_capacity, "train");
        get_if_present(t, "hidden1", cfg.train.hidden1, "train");
        get_if_present(t, "hidden2", cfg.train.hidden2, "train");
    }

    get_if_present(j, "schemes", cfg.schemes, "top level");
    get_if_present(j, "repeats", cfg.repeats, "top level");
    get_if_present(j, "gamma_list", cfg.gamma_list, "top level");
    get_if_present(j, "cells_list", cfg.cells_list, "top level");
    get_if_present(j, "users_list", cfg.users_list, "top level");
    get_if_present(j, "trace_slots", cfg.trace_slots, "top level");
    get_if_present(j, "smoothing_window", cfg.smoothing_window, "top level");
    return cfg;
}

} // namespace detail

void ExperimentConfig::validate() const {
    channel.validate();
    features.validate();
    train.validate();
    if (schemes.empty())
        throw std::invalid_argument("config: scheme list must not be empty");
    for (const std::string& s : schemes)
        if (!kSchemes.count(s))
            throw std::invalid_argument("config: unknown scheme \"" + s + "\"");
    if (repeats < 1)
        throw std::invalid_argument("config: repeats must be at least 1");
    for (double g : gamma_list)
        if (g < 0.0 || g >= 1.0)
            throw std::invalid_argument("config: gamma_list values must lie in [0, 1)");
    if (gamma_list.empty() || cells_list.empty() || users_list.empty())
        throw std::invalid_argument("config: sweep lists must not be empty");
    for (int n : cells_list)
        if (n < 2)
            throw std::invalid_argument("config: cells_list values must be at least 2");
    for (int k : users_list)
        if (k < 1)
            throw std::invalid_argument("config: users_list values must be at least 1");
    if (trace_slots < 1)
        throw std::invalid_argument("config: trace_slots must be positive");
    if (smoothing_window < 1)
        throw std::invalid_argument("config: smoothing_window must be positive");
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("load_config: cannot open " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("load_config: " + path.string() + ": " + e.what());
    }
    return detail::config_from_json(j);
}

std::string config_to_text(const ExperimentConfig& cfg) {
    return detail::config_to_json(cfg).dump(2) + "\n";
}

void save_config(const ExperimentConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("save_config: cannot open " + path.string());
    out << config_to_text(cfg);
    if (!out)
        throw std::runtime_error("save_config: write failed for " + path.string());
}

} // namespace dqpa
