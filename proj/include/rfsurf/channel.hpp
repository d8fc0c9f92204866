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

#ifndef RFSURF_CHANNEL_HPP
#define RFSURF_CHANNEL_HPP

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rfsurf {

// Narrow-band effect of one path (or a sum of paths) on the carrier.
using ChannelCoefficient = std::complex<double>;

bool is_finite(ChannelCoefficient c) noexcept;

// On/off state of every element. Element 0 is the most significant bit of
// the hex encoding and the first key of the lexicographic order.
class SurfaceConfig {
public:
    SurfaceConfig() = default;
    explicit SurfaceConfig(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}
    explicit SurfaceConfig(std::vector<std::uint8_t> bits);
    SurfaceConfig(std::initializer_list<int> bits);

    static SurfaceConfig all_zeros(std::size_t n) { return SurfaceConfig(n, false); }
    static SurfaceConfig all_ones(std::size_t n) { return SurfaceConfig(n, true); }

    std::size_t size() const noexcept { return bits_.size(); }
    bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
    void set(std::size_t i, bool on) noexcept { bits_[i] = on ? 1 : 0; }
    void flip(std::size_t i) noexcept { bits_[i] ^= 1; }

    std::size_t count_on() const noexcept;
    bool is_all_zeros() const noexcept { return count_on() == 0; }

    SurfaceConfig operator~() const;
    SurfaceConfig operator&(const SurfaceConfig& other) const;
    SurfaceConfig operator|(const SurfaceConfig& other) const;

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    friend bool operator==(const SurfaceConfig&, const SurfaceConfig&) = default;
    friend std::strong_ordering operator<=>(const SurfaceConfig& a, const SurfaceConfig& b) {
        return a.bits_ <=> b.bits_;
    }

private:
    std::vector<std::uint8_t> bits_;
};

// Bilinear term g added when both elements i and j are on (i < j).
struct Interaction {
    std::size_t i = 0;
    std::size_t j = 0;
    ChannelCoefficient g{};

    friend bool operator==(const Interaction&, const Interaction&) = default;
};

// Baseline channel plus per-element contributions:
//   h(b) = h_Z + sum_i b_i h_i + sum_(i,j) b_i b_j g_ij
// Immutable after construction; the constructor validates every invariant.
class Environment {
public:
    Environment(ChannelCoefficient h_z, std::vector<ChannelCoefficient> h,
                std::vector<Interaction> interactions = {}, double noise_floor_power = 1.0);

    ChannelCoefficient h_z() const noexcept { return h_z_; }
    std::span<const ChannelCoefficient> h() const noexcept { return h_; }
    ChannelCoefficient h(std::size_t i) const noexcept { return h_[i]; }
    std::span<const Interaction> interactions() const noexcept { return interactions_; }
    double noise_floor_power() const noexcept { return noise_floor_power_; }
    std::size_t size() const noexcept { return h_.size(); }
    bool is_linear() const noexcept { return interactions_.empty(); }

    Environment with_baseline(ChannelCoefficient h_z) const;
    Environment without_interactions() const;
    Environment with_interactions(std::vector<Interaction> interactions) const;
    // Keeps only the listed elements (in the given order); interactions
    // between two kept elements survive with re-mapped indices.
    Environment subset(std::span<const std::size_t> keep) const;

    friend bool operator==(const Environment&, const Environment&) = default;

private:
    ChannelCoefficient h_z_;
    std::vector<ChannelCoefficient> h_;
    std::vector<Interaction> interactions_;
    double noise_floor_power_;
};

ChannelCoefficient evaluate_channel(const Environment& env, const SurfaceConfig& config);

// Noise-free received power relative to the all-off state, |h|^2 / |h_Z|^2.
double rssi_ratio_exact(const Environment& env, const SurfaceConfig& config);

// Ratio of unit-bandwidth Shannon capacities log2(1 + SNR_opt) / log2(1 + SNR_base).
// Returns +infinity when the base capacity is zero.
double capacity_improvement(const Environment& env, const SurfaceConfig& base,
                            const SurfaceConfig& opt);
double shannon_capacity(double snr_linear);

// |h_Z| + sum |h_i|: the magnitude reachable with full complex control per element.
double ideal_upper_bound(const Environment& env);

double to_db(double power_ratio);
double from_db(double db);

} // namespace rfsurf

#endif
