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

#include "rfsurf/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "rfsurf/error.hpp"

namespace rfsurf {

bool is_finite(ChannelCoefficient c) noexcept { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

SurfaceConfig::SurfaceConfig(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

SurfaceConfig::SurfaceConfig(std::initializer_list<int> bits) {
    bits_.reserve(bits.size());
    for (int b : bits) bits_.push_back(b != 0 ? 1 : 0);
}

std::size_t SurfaceConfig::count_on() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

SurfaceConfig SurfaceConfig::operator~() const {
    SurfaceConfig out = *this;
    for (auto& b : out.bits_) b ^= 1;
    return out;
}

SurfaceConfig SurfaceConfig::operator&(const SurfaceConfig& other) const {
    if (other.size() != size()) throw DimensionError("config size mismatch in bitwise and");
    SurfaceConfig out = *this;
    for (std::size_t i = 0; i < size(); ++i) out.bits_[i] &= other.bits_[i];
    return out;
}

SurfaceConfig SurfaceConfig::operator|(const SurfaceConfig& other) const {
    if (other.size() != size()) throw DimensionError("config size mismatch in bitwise or");
    SurfaceConfig out = *this;
    for (std::size_t i = 0; i < size(); ++i) out.bits_[i] |= other.bits_[i];
    return out;
}

Environment::Environment(ChannelCoefficient h_z, std::vector<ChannelCoefficient> h,
                         std::vector<Interaction> interactions, double noise_floor_power)
    : h_z_(h_z), h_(std::move(h)), interactions_(std::move(interactions)),
      noise_floor_power_(noise_floor_power) {
    if (h_.empty()) throw ArgumentError("environment needs at least one element");
    if (!is_finite(h_z_)) throw ArgumentError("baseline channel is not finite");
    for (std::size_t i = 0; i < h_.size(); ++i)
        if (!is_finite(h_[i])) throw ArgumentError("element " + std::to_string(i) + " channel is not finite");
    if (!(noise_floor_power_ > 0.0) || !std::isfinite(noise_floor_power_))
        throw ArgumentError("noise_floor_power must be positive and finite");
    for (const auto& t : interactions_) {
        if (!(t.i < t.j) || t.j >= h_.size())
            throw ArgumentError("interaction key (" + std::to_string(t.i) + ", " + std::to_string(t.j) +
                                ") must satisfy i < j < N");
        if (!is_finite(t.g)) throw ArgumentError("interaction coefficient is not finite");
    }
    std::sort(interactions_.begin(), interactions_.end(),
              [](const Interaction& a, const Interaction& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
    for (std::size_t k = 1; k < interactions_.size(); ++k)
        if (interactions_[k].i == interactions_[k - 1].i && interactions_[k].j == interactions_[k - 1].j)
            throw ArgumentError("duplicate interaction key");
}

Environment Environment::with_baseline(ChannelCoefficient h_z) const {
    return Environment(h_z, h_, interactions_, noise_floor_power_);
}

Environment Environment::without_interactions() const {
    return Environment(h_z_, h_, {}, noise_floor_power_);
}

Environment Environment::with_interactions(std::vector<Interaction> interactions) const {
    return Environment(h_z_, h_, std::move(interactions), noise_floor_power_);
}

Environment Environment::subset(std::span<const std::size_t> keep) const {
    std::vector<ChannelCoefficient> h;
    h.reserve(keep.size());
    constexpr auto kDropped = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> remap(h_.size(), kDropped);
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] >= h_.size()) throw DimensionError("subset index out of range");
        remap[keep[k]] = k;
        h.push_back(h_[keep[k]]);
    }
    std::vector<Interaction> inter;
    for (const auto& t : interactions_) {
        if (remap[t.i] == kDropped || remap[t.j] == kDropped) continue;
        auto a = remap[t.i], b = remap[t.j];
        if (a > b) std::swap(a, b);
        inter.push_back({a, b, t.g});
    }
    return Environment(h_z_, std::move(h), std::move(inter), noise_floor_power_);
}

ChannelCoefficient evaluate_channel(const Environment& env, const SurfaceConfig& config) {
    if (config.size() != env.size())
        throw DimensionError("config has " + std::to_string(config.size()) + " bits, environment has " +
                             std::to_string(env.size()) + " elements");
    ChannelCoefficient sum = env.h_z();
    const auto h = env.h();
    for (std::size_t i = 0; i < h.size(); ++i)
        if (config[i]) sum += h[i];
    for (const auto& t : env.interactions())
        if (config[t.i] && config[t.j]) sum += t.g;
    return sum;
}

double rssi_ratio_exact(const Environment& env, const SurfaceConfig& config) {
    const double base = std::norm(env.h_z());
    if (base == 0.0) throw DegenerateBaselineError("baseline channel |h_Z| is zero; RSSI-ratio undefined");
    return std::norm(evaluate_channel(env, config)) / base;
}

double shannon_capacity(double snr_linear) { return std::log2(1.0 + snr_linear); }

double capacity_improvement(const Environment& env, const SurfaceConfig& base, const SurfaceConfig& opt) {
    const double noise = env.noise_floor_power();
    const double c_base = shannon_capacity(std::norm(evaluate_channel(env, base)) / noise);
    const double c_opt = shannon_capacity(std::norm(evaluate_channel(env, opt)) / noise);
    if (c_base == 0.0) return std::numeric_limits<double>::infinity();
    return c_opt / c_base;
}

double ideal_upper_bound(const Environment& env) {
    const auto h = env.h();
    return std::accumulate(h.begin(), h.end(), std::abs(env.h_z()),
                           [](double acc, ChannelCoefficient c) { return acc + std::abs(c); });
}

double to_db(double power_ratio) { return 10.0 * std::log10(power_ratio); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

} // namespace rfsurf
