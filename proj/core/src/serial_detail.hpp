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

// Library-private JSON bridges; not installed.

#ifndef DQPA_SERIAL_DETAIL_HPP
#define DQPA_SERIAL_DETAIL_HPP

#include <json.hpp>

#include "dqpa/config.hpp"

namespace dqpa::detail {

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

} // namespace dqpa::detail

#endif // DQPA_SERIAL_DETAIL_HPP
