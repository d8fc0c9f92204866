// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The rfsurf Authors
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

#ifndef RFSURF_RNG_HPP
#define RFSURF_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace rfsurf {

// Version tag of the random stream algorithm. Bump whenever any sampling
// routine below changes output for a given seed; manifests record it.
inline constexpr int kRngAlgorithmVersion = 1;
inline constexpr const char* kRngAlgorithmName = "splitmix64/box-muller-v1";

// SplitMix64 (Steele, Lea, Flood 2014). Satisfies UniformRandomBitGenerator.
// Distribution transforms are implemented here rather than taken from
// <random> because the standard leaves those implementation-defined, and
// every output artifact must be reproducible from (spec, seed) alone.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    // Uniform phase on [-pi, pi).
    double phase() noexcept { return uniform(-std::numbers::pi, std::numbers::pi); }

    bool coin() noexcept { return ((*this)() >> 63) != 0; }

    // Uniform integer in [0, n). Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t n) noexcept {
        if (n == 0) return 0;
        for (;;) {
            const Uint128 m = static_cast<Uint128>((*this)()) * n;
            const auto low = static_cast<std::uint64_t>(m);
            if (low >= n || low >= (-n) % n) return static_cast<std::uint64_t>(m >> 64);
        }
    }

    // Standard normal via Box-Muller; the second variate is discarded so the
    // stream position after a call does not depend on call history.
    double normal() noexcept {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double sigma) noexcept { return mean + sigma * normal(); }

private:
    __extension__ using Uint128 = unsigned __int128;
    std::uint64_t state_;
};

// Stateless mixing of a base seed with a stream index (trial, sequence
// number, purpose tag). Distinct indices give decorrelated streams.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    SplitMix64 a(base ^ 0x6a09e667f3bcc909ULL);
    const std::uint64_t h = a();
    SplitMix64 b(h + index * 0xd1b54a32d192ed03ULL);
    return b();
}

// Purpose tags so that independent consumers of one seed never share a stream.
namespace stream {
inline constexpr std::uint64_t kEnvironment = 0x454e56;   // "ENV"
inline constexpr std::uint64_t kConfigs = 0x434647;       // "CFG"
inline constexpr std::uint64_t kNoise = 0x4e4f49;         // "NOI"
inline constexpr std::uint64_t kInteractions = 0x494e54;  // "INT"
inline constexpr std::uint64_t kSubsets = 0x535542;       // "SUB"
inline constexpr std::uint64_t kTrials = 0x54524c;        // "TRL"
} // namespace stream

} // namespace rfsurf

#endif
