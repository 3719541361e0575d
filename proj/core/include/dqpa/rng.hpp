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

#ifndef DQPA_RNG_HPP
#define DQPA_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace dqpa {

/// Seeded random stream. All distributions are generated from the raw
/// 64-bit engine output with fixed algorithms, so a given seed produces
/// the same sequence on every standard library implementation.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n >= 1. Rejection sampling, no modulo bias.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    /// Standard normal via Box-Muller (cosine branch).
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    /// Circularly symmetric complex Gaussian with unit total variance,
    /// i.e. E|h|^2 = 1 (each component N(0, 1/2)).
    std::complex<double> complex_normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-std::log1p(-u1));
        const double phi = 6.283185307179586476925287 * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

  private:
    std::mt19937_64 eng_;
};

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace detail

/// Mixes a master seed with a tag and index into a derived seed. Distinct
/// (tag, a) pairs give decorrelated values.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag,
                                 std::uint64_t a = 0) {
    const std::uint64_t s = detail::splitmix64(seed ^ detail::fnv1a(tag));
    return detail::splitmix64(s ^ detail::splitmix64(a));
}

/// Derives an independent named substream from a master seed. Streams for
/// distinct (tag, a, b) triples are decorrelated by seed mixing.
inline Rng substream(std::uint64_t seed, std::string_view tag, std::uint64_t a = 0,
                     std::uint64_t b = 0) {
    const std::uint64_t s = derive_seed(seed, tag, a);
    return Rng(detail::splitmix64(s ^ detail::splitmix64(b ^ 0x5bf03635d1a5e3dcULL)));
}

} // namespace dqpa

#endif // DQPA_RNG_HPP
