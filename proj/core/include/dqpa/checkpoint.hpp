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

#ifndef DQPA_CHECKPOINT_HPP
#define DQPA_CHECKPOINT_HPP

#include <filesystem>

#include "dqpa/features.hpp"
#include "dqpa/qnet.hpp"

namespace dqpa {

struct Checkpoint {
    QNetwork net;
    FeatureConfig features;
};

/// Writes a self-describing JSON checkpoint: layer dims, flat parameter and
/// Adam arrays, and the feature configuration the network was trained with.
/// Output bytes depend only on the arguments.
void save_checkpoint(const QNetwork& net, const FeatureConfig& features,
                     const std::filesystem::path& path);

/// Loads and validates a checkpoint. Any missing field, wrong array length,
/// or dims/feature inconsistency raises std::invalid_argument.
Checkpoint load_checkpoint(const std::filesystem::path& path);

} // namespace dqpa

#endif // DQPA_CHECKPOINT_HPP
