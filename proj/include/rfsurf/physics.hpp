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

#ifndef RFSURF_PHYSICS_HPP
#define RFSURF_PHYSICS_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace rfsurf::physics {

using Point2 = std::array<double, 2>;

// Samples (c, r) sit at origin + (c * extent_x / (cols - 1), r * extent_y / (rows - 1)).
struct GridSpec {
    Point2 origin{};
    Point2 extent{};
    std::size_t cols = 0;
    std::size_t rows = 0;

    double step_x() const noexcept { return extent[0] / static_cast<double>(cols - 1); }
    double step_y() const noexcept { return extent[1] / static_cast<double>(rows - 1); }
    Point2 point(std::size_t c, std::size_t r) const noexcept {
        return {origin[0] + static_cast<double>(c) * step_x(), origin[1] + static_cast<double>(r) * step_y()};
    }
};

struct ArraySceneGrid {
    std::vector<Point2> emitters;
    Point2 target{};
    double wavelength = 0.0;
    GridSpec grid;

    // >= 1 emitter, >= 4 samples per wavelength on both axes, target inside the grid.
    void validate() const;
};

struct FieldMap {
    GridSpec grid;
    std::vector<double> power; // row-major, rows x cols
    std::size_t clamped_points = 0; // samples closer than lambda/10 to an emitter

    double at(std::size_t c, std::size_t r) const noexcept { return power[r * grid.cols + c]; }
};

// Emitters transmit with amplitude 1/sqrt(M) and phase conjugate to their
// path to the target; each sample holds |sum a_m / r_m exp(-j 2 pi r_m / lambda)|^2.
FieldMap focus_field_map(const ArraySceneGrid& scene);

// Same field sum evaluated at one point (the target, typically).
double field_power_at(const ArraySceneGrid& scene, const Point2& p);

// Line of `count` emitters centred on `center` along x with the given pitch.
std::vector<Point2> line_array(const Point2& center, std::size_t count, double pitch);

struct SpotMeasure {
    double target_power = 0.0;
    double region_area = 0.0;      // 4-connected half-max region around the target, m^2
    std::size_t region_cells = 0;
    bool touches_boundary = false; // region clipped by the sampled grid
    double transverse_width = 0.0; // half-max width along x through the target row, m
};

// Half-max spot: connected region containing the target sample where
// power >= 0.5 x target power. The transverse width is interpolated
// linearly between samples on the target row.
SpotMeasure measure_spot(const FieldMap& map, const ArraySceneGrid& scene);

struct AbbeParams {
    double surface_area = 0.0; // A, m^2
    double distance = 0.0;     // d, m
    double wavelength = 0.0;   // m
    double k = 0.5;
    double solid_angle = 1.0;  // Omega, in (0, 2 pi]

    void validate() const;
};

// a = k lambda^2 (1 + 4 d^2 / A)
double abbe_spot_area(const AbbeParams& p);

// Energy-ratio lower bound for pixels of largest dimension a at frequency nu,
// in units where c = 1 (so nu * a = a / lambda):
//   (1 / (sqrt(2) pi)) sin(pi nu a) / (a nu)  for a < 1/nu, else 0.
double pixelation_bound(double a, double frequency_nu);

// CSV "x,y,power" and the binary grid: six little-endian doubles
// (origin_x, origin_y, extent_x, extent_y, cols, rows) followed by
// rows * cols row-major doubles.
void write_field_csv(std::ostream& os, const FieldMap& map);
void write_field_binary(std::ostream& os, const FieldMap& map);
FieldMap read_field_binary(std::istream& is);

} // namespace rfsurf::physics

#endif
