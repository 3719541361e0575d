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

#ifndef DQPA_REPLAY_HPP
#define DQPA_REPLAY_HPP

#include <cstddef>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "dqpa/rng.hpp"

namespace dqpa {

/// One replay record. next_state is present only when training with a
/// nonzero discount and the slot is not the last of its episode.
struct Experience {
    std::vector<double> state;
    int action = 0;
    double reward = 0.0;
    bool has_next = false;
    std::vector<double> next_state;
};

/// Bounded FIFO of experiences; eviction strictly in insertion order.
class ReplayMemory {
  public:
    explicit ReplayMemory(std::size_t capacity) : capacity_(capacity) {
        if (capacity == 0)
            throw std::invalid_argument("ReplayMemory: capacity must be positive");
    }

    void push(Experience e) {
        if (buffer_.size() < capacity_) {
            buffer_.push_back(std::move(e));
        } else {
            buffer_[head_] = std::move(e);
            head_ = (head_ + 1) % capacity_;
        }
    }

    std::size_t size() const { return buffer_.size(); }
    std::size_t capacity() const { return capacity_; }

    /// i-th oldest record, i in [0, size).
    const Experience& at(std::size_t i) const {
        return buffer_[(head_ + i) % buffer_.size()];
    }

    /// Uniform sample of `count` distinct records (Floyd's algorithm).
    std::vector<const Experience*> sample(std::size_t count, Rng& rng) const {
        const std::size_t n = buffer_.size();
        if (count > n)
            throw std::invalid_argument("ReplayMemory: sample larger than population");
        std::unordered_set<std::size_t> chosen;
        std::vector<const Experience*> out;
        out.reserve(count);
        for (std::size_t j = n - count; j < n; ++j) {
            const std::size_t t = rng.uniform_below(j + 1);
            const std::size_t pick = chosen.count(t) ? j : t;
            chosen.insert(pick);
            out.push_back(&buffer_[(head_ + pick) % n]);
        }
        return out;
    }

  private:
    std::size_t capacity_;
    std::size_t head_ = 0;
    std::vector<Experience> buffer_;
};

} // namespace dqpa

#endif // DQPA_REPLAY_HPP
