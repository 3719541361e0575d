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

#ifndef DQPA_CONFIG_HPP
#define DQPA_CONFIG_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "dqpa/dql.hpp"
#include "dqpa/features.hpp"
#include "dqpa/topology.hpp"

namespace dqpa {

/// Everything an experiment command needs besides the seed and output
/// directory. Defaults reproduce the reference scenario; config files may
/// override any subset of keys. Powers and noise are read as dBm from files
/// and held in watts here.
struct ExperimentConfig {
    ChannelConfig channel;
    FeatureConfig features;
    TrainConfig train;
    std::vector<std::string> schemes = {"dqn", "fp", "wmmse", "max", "random"};
    int repeats = 50;
    std::vector<double> gamma_list = {0.0, 0.1, 0.3, 0.7, 0.9};
    std::vector<int> cells_list = {9, 25, 49};
    std::vector<int> users_list = {1, 2, 4, 6};
    int trace_slots = 1000;
    int smoothing_window = 50;

    void validate() const;
};

ExperimentConfig default_config();

/// Parses a JSON config file. Absent keys keep their defaults; unknown keys
/// and malformed values raise std::invalid_argument naming the offender.
ExperimentConfig load_config(const std::filesystem::path& path);

void save_config(const ExperimentConfig& cfg, const std::filesystem::path& path);

/// The config as pretty-printed JSON, exactly as save_config writes it.
std::string config_to_text(const ExperimentConfig& cfg);

} // namespace dqpa

#endif // DQPA_CONFIG_HPP
