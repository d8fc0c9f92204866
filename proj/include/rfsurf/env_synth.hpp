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

#ifndef RFSURF_ENV_SYNTH_HPP
#define RFSURF_ENV_SYNTH_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rfsurf/channel.hpp"

namespace rfsurf {

inline constexpr double kSpeedOfLight = 299'792'458.0; // m/s

using Point3 = std::array<double, 3>;

double distance(const Point3& a, const Point3& b) noexcept;

// Statistical ensemble: uniform phases everywhere, folded-normal magnitudes
// with scale element_sigma for the elements, fixed magnitude for h_Z.
struct IidEnvSpec {
    std::size_t n_elements = 1;
    double element_sigma = 1.0;
    double baseline_magnitude = 1.0;
    std::uint64_t seed = 0;
    double noise_floor_power = 1.0;
};

Environment gen_iid(const IidEnvSpec& spec);

// A static ray not touching the surface; folded into h_Z.
struct ExtraPath {
    double length = 0.0; // m
    double gain = 0.0;
};

struct GridLayout {
    std::size_t rows = 0;
    std::size_t cols = 0;
    double row_spacing = 0.0; // m
    double col_spacing = 0.0; // m
};

struct GeometricScene {
    double wavelength = 0.0; // design wavelength, m
    GridLayout grid;
    std::vector<Point3> element_positions;
    Point3 tx{};
    Point3 rx{};
    double element_reflectivity = 1.0;
    double direct_path_gain = 1.0; // 0 models a fully occluded direct path
    std::vector<ExtraPath> extra_paths;
    double noise_floor_power = 1.0;

    std::size_t size() const noexcept { return element_positions.size(); }
    // (rows * row_spacing) * (cols * col_spacing)
    double surface_area() const noexcept;
};

// rows x cols grid in the x = 0 plane, centred on `center`; rows advance
// along z, columns along y. Element index = row * cols + col.
std::vector<Point3> planar_grid(const Point3& center, const GridLayout& grid);

// Throws GeometryError on any invariant violation of the scene.
void validate_scene(const GeometricScene& scene);

// True when the grid pitch exceeds half a wavelength at `frequency`
// (grating-lobe regime).
bool spacing_exceeds_half_wavelength(const GeometricScene& scene, double frequency);

double wavelength_at(double frequency);

Environment gen_geometric(const GeometricScene& scene, double frequency);

std::vector<Environment> scene_at_frequencies(const GeometricScene& scene, std::span<const double> freqs);

// Total tx -> element -> rx path length of every element.
std::vector<double> element_path_lengths(const GeometricScene& scene);

// Adds a bilinear term between every pair of grid neighbours (row-major
// index adjacency when no grid is given). Each term has magnitude
// strength * sqrt(|h_i| |h_j|) and uniform random phase.
Environment add_neighbor_interactions(const Environment& env, const GridLayout& grid, double strength,
                                      std::uint64_t seed);

} // namespace rfsurf

#endif
