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

#include "rfsurf/env_synth.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rfsurf/error.hpp"
#include "rfsurf/rng.hpp"

namespace rfsurf {

namespace {

ChannelCoefficient spherical_path(double gain, double length, double wavelength) {
    const double phase = -2.0 * std::numbers::pi * length / wavelength;
    return std::polar(gain, phase);
}

} // namespace

double distance(const Point3& a, const Point3& b) noexcept {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Environment gen_iid(const IidEnvSpec& spec) {
    if (spec.n_elements < 1) throw ArgumentError("n_elements must be >= 1");
    if (spec.element_sigma < 0.0 || spec.baseline_magnitude < 0.0)
        throw ArgumentError("element_sigma and baseline_magnitude must be non-negative");
    SplitMix64 rng(derive_seed(spec.seed, stream::kEnvironment));
    const ChannelCoefficient h_z = std::polar(spec.baseline_magnitude, rng.phase());
    std::vector<ChannelCoefficient> h(spec.n_elements);
    for (auto& c : h) {
        const double mag = std::abs(rng.normal(0.0, spec.element_sigma));
        c = std::polar(mag, rng.phase());
    }
    return Environment(h_z, std::move(h), {}, spec.noise_floor_power);
}

double GeometricScene::surface_area() const noexcept {
    return (static_cast<double>(grid.rows) * grid.row_spacing) * (static_cast<double>(grid.cols) * grid.col_spacing);
}

std::vector<Point3> planar_grid(const Point3& center, const GridLayout& grid) {
    std::vector<Point3> pts;
    pts.reserve(grid.rows * grid.cols);
    const double z0 = center[2] - 0.5 * static_cast<double>(grid.rows - 1) * grid.row_spacing;
    const double y0 = center[1] - 0.5 * static_cast<double>(grid.cols - 1) * grid.col_spacing;
    for (std::size_t r = 0; r < grid.rows; ++r)
        for (std::size_t c = 0; c < grid.cols; ++c)
            pts.push_back({center[0], y0 + static_cast<double>(c) * grid.col_spacing,
                           z0 + static_cast<double>(r) * grid.row_spacing});
    return pts;
}

void validate_scene(const GeometricScene& scene) {
    if (!(scene.wavelength > 0.0)) throw GeometryError("wavelength must be positive");
    if (scene.element_positions.empty()) throw GeometryError("scene has no elements");
    if (scene.grid.rows * scene.grid.cols != scene.element_positions.size())
        throw GeometryError("element count " + std::to_string(scene.element_positions.size()) +
                            " != rows * cols");
    if (!(scene.grid.row_spacing > 0.0) || !(scene.grid.col_spacing > 0.0))
        throw GeometryError("grid spacing must be positive");
    if (!(scene.element_reflectivity > 0.0) || scene.element_reflectivity > 1.0)
        throw GeometryError("element_reflectivity must lie in (0, 1]");
    if (scene.direct_path_gain < 0.0) throw GeometryError("direct_path_gain must be >= 0");
    if (distance(scene.tx, scene.rx) == 0.0) throw GeometryError("tx and rx coincide");
    for (std::size_t i = 0; i < scene.element_positions.size(); ++i) {
        const auto& p = scene.element_positions[i];
        if (distance(p, scene.tx) == 0.0 || distance(p, scene.rx) == 0.0)
            throw GeometryError("element " + std::to_string(i) + " coincides with an endpoint");
    }
    for (const auto& ray : scene.extra_paths)
        if (!(ray.length > 0.0)) throw GeometryError("extra path length must be positive");
}

bool spacing_exceeds_half_wavelength(const GeometricScene& scene, double frequency) {
    const double half = 0.5 * wavelength_at(frequency);
    return scene.grid.row_spacing > half || scene.grid.col_spacing > half;
}

double wavelength_at(double frequency) {
    if (!(frequency > 0.0)) throw ArgumentError("frequency must be positive");
    return kSpeedOfLight / frequency;
}

Environment gen_geometric(const GeometricScene& scene, double frequency) {
    validate_scene(scene);
    const double lambda = wavelength_at(frequency);

    ChannelCoefficient h_z{};
    if (scene.direct_path_gain > 0.0) {
        const double d = distance(scene.tx, scene.rx);
        h_z += spherical_path(scene.direct_path_gain / d, d, lambda);
    }
    for (const auto& ray : scene.extra_paths) h_z += spherical_path(ray.gain / ray.length, ray.length, lambda);

    std::vector<ChannelCoefficient> h;
    h.reserve(scene.size());
    for (const auto& p : scene.element_positions) {
        const double d1 = distance(scene.tx, p);
        const double d2 = distance(p, scene.rx);
        h.push_back(spherical_path(scene.element_reflectivity / (d1 * d2), d1 + d2, lambda));
    }
    return Environment(h_z, std::move(h), {}, scene.noise_floor_power);
}

std::vector<Environment> scene_at_frequencies(const GeometricScene& scene, std::span<const double> freqs) {
    for (double f : freqs)
        if (!(f > 0.0)) throw ArgumentError("frequency must be positive");
    std::vector<Environment> out;
    out.reserve(freqs.size());
    for (double f : freqs) out.push_back(gen_geometric(scene, f));
    return out;
}

std::vector<double> element_path_lengths(const GeometricScene& scene) {
    std::vector<double> out;
    out.reserve(scene.size());
    for (const auto& p : scene.element_positions) out.push_back(distance(scene.tx, p) + distance(p, scene.rx));
    return out;
}

Environment add_neighbor_interactions(const Environment& env, const GridLayout& grid, double strength,
                                      std::uint64_t seed) {
    if (strength < 0.0) throw ArgumentError("interaction strength must be >= 0");
    const std::size_t n = env.size();
    const bool has_grid = grid.rows * grid.cols == n && grid.rows > 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (has_grid) {
        for (std::size_t r = 0; r < grid.rows; ++r)
            for (std::size_t c = 0; c < grid.cols; ++c) {
                const std::size_t i = r * grid.cols + c;
                if (c + 1 < grid.cols) pairs.emplace_back(i, i + 1);
                if (r + 1 < grid.rows) pairs.emplace_back(i, i + grid.cols);
            }
    } else {
        for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
    }
    SplitMix64 rng(derive_seed(seed, stream::kInteractions));
    std::vector<Interaction> inter;
    inter.reserve(pairs.size());
    for (auto [i, j] : pairs) {
        const double mag = strength * std::sqrt(std::abs(env.h(i)) * std::abs(env.h(j)));
        inter.push_back({i, j, std::polar(mag, rng.phase())});
    }
    return env.with_interactions(std::move(inter));
}

} // namespace rfsurf
