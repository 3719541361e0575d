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

#include "dqpa/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace dqpa {

namespace {

constexpr const char* kFormat = "dqpa-checkpoint";
constexpr int kVersion = 1;

template <typename T>
T require(const nlohmann::json& j, const char* key) {
    if (!j.contains(key))
        throw std::invalid_argument("checkpoint: missing field \"" +
                                    std::string(key) + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument("checkpoint: malformed field \"" +
                                    std::string(key) + "\"");
    }
}

} // namespace

void save_checkpoint(const QNetwork& net, const FeatureConfig& features,
                     const std::filesystem::path& path) {
    const std::array<int, 4> dims = net.layer_dims();
    nlohmann::json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["layer_dims"] = dims;
    j["parameters"] = net.flatten_parameters();
    j["adam"] = {{"step", net.adam_step_count()},
                 {"m", net.flatten_adam_m()},
                 {"v", net.flatten_adam_v()}};
    j["features"] = {{"top_interferers", features.top_interferers},
                     {"action_count", features.action_count},
                     {"p_min_w", features.p_min_w},
                     {"p_max_w", features.p_max_w}};

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("save_checkpoint: cannot open " + path.string());
    out << j.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("save_checkpoint: write failed for " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("load_checkpoint: cannot open " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("load_checkpoint: " + path.string() + ": " +
                                    e.what());
    }

    if (require<std::string>(j, "format") != kFormat)
        throw std::invalid_argument("checkpoint: unrecognized format marker");
    if (require<int>(j, "version") != kVersion)
        throw std::invalid_argument("checkpoint: unsupported version");

    const auto dims = require<std::array<int, 4>>(j, "layer_dims");
    const auto params = require<std::vector<double>>(j, "parameters");
    const nlohmann::json adam = require<nlohmann::json>(j, "adam");
    const auto step = require<std::uint64_t>(adam, "step");
    const auto m = require<std::vector<double>>(adam, "m");
    const auto v = require<std::vector<double>>(adam, "v");

    const nlohmann::json f = require<nlohmann::json>(j, "features");
    Checkpoint ck;
    ck.features.top_interferers = require<int>(f, "top_interferers");
    ck.features.action_count = require<int>(f, "action_count");
    ck.features.p_min_w = require<double>(f, "p_min_w");
    ck.features.p_max_w = require<double>(f, "p_max_w");
    ck.features.validate();

    if (dims[0] != ck.features.state_length() || dims[3] != ck.features.action_count)
        throw std::invalid_argument(
            "checkpoint: layer dims disagree with the stored feature configuration");

    // QNetwork::load validates array lengths against dims.
    ck.net.load(dims, params, m, v, step);
    return ck;
}

} // namespace dqpa
