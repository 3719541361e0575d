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

#ifndef DQPA_CSV_HPP
#define DQPA_CSV_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace dqpa {

/// Shortest decimal representation that round-trips to the same double.
/// Stable across platforms, so output files are byte-reproducible.
std::string format_double(double v);
std::string format_i64(long long v);
std::string format_u64(std::uint64_t v);

/// Minimal CSV emitter: header row at construction, then fixed-width rows,
/// "\n" line endings, no quoting (cell values must not contain commas).
class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);

  private:
    std::ofstream out_;
    std::size_t columns_;
    void write_line(const std::vector<std::string>& cells);
};

} // namespace dqpa

#endif // DQPA_CSV_HPP
