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

#include "rfsurf/physics.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>

#include "rfsurf/error.hpp"
#include "rfsurf/parallel.hpp"
#include "rfsurf/serialize.hpp"

namespace rfsurf::physics {

namespace {

double dist(const Point2& a, const Point2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

struct Weights {
    std::vector<std::complex<double>> w;
    double k = 0.0; // wavenumber
};

Weights conjugate_weights(const ArraySceneGrid& scene) {
    Weights out;
    out.k = 2.0 * std::numbers::pi / scene.wavelength;
    const double amp = 1.0 / std::sqrt(static_cast<double>(scene.emitters.size()));
    out.w.reserve(scene.emitters.size());
    for (const auto& e : scene.emitters) out.w.push_back(std::polar(amp, out.k * dist(e, scene.target)));
    return out;
}

// Returns the field power and whether any emitter distance was clamped.
std::pair<double, bool> power_with(const ArraySceneGrid& scene, const Weights& wts, const Point2& p) {
    const double r_min = scene.wavelength / 10.0;
    std::complex<double> sum{};
    bool clamped = false;
    for (std::size_t m = 0; m < scene.emitters.size(); ++m) {
        double r = dist(scene.emitters[m], p);
        if (r < r_min) {
            r = r_min;
            clamped = true;
        }
        sum += wts.w[m] * std::polar(1.0 / r, -wts.k * r);
    }
    return {std::norm(sum), clamped};
}

void put_double(std::ostream& os, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xffU);
    os.write(reinterpret_cast<const char*>(buf), 8);
}

double get_double(std::istream& is) {
    unsigned char buf[8];
    if (!is.read(reinterpret_cast<char*>(buf), 8)) throw FormatError("truncated binary grid");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

} // namespace

void ArraySceneGrid::validate() const {
    if (emitters.empty()) throw ArgumentError("field map needs at least one emitter");
    if (!(wavelength > 0.0)) throw ArgumentError("wavelength must be positive");
    if (grid.cols < 2 || grid.rows < 2) throw ArgumentError("grid needs at least 2 x 2 samples");
    if (!(grid.extent[0] > 0.0) || !(grid.extent[1] > 0.0)) throw ArgumentError("grid extent must be positive");
    const double max_step = wavelength / 4.0;
    if (grid.step_x() > max_step * (1.0 + 1e-12) || grid.step_y() > max_step * (1.0 + 1e-12))
        throw ArgumentError("grid resolution must be at least 4 samples per wavelength");
    const bool inside = target[0] >= grid.origin[0] && target[0] <= grid.origin[0] + grid.extent[0] &&
                        target[1] >= grid.origin[1] && target[1] <= grid.origin[1] + grid.extent[1];
    if (!inside) throw ArgumentError("target lies outside the sampled grid");
}

FieldMap focus_field_map(const ArraySceneGrid& scene) {
    scene.validate();
    const auto wts = conjugate_weights(scene);
    FieldMap map;
    map.grid = scene.grid;
    map.power.assign(scene.grid.rows * scene.grid.cols, 0.0);
    std::vector<std::size_t> clamped_per_row(scene.grid.rows, 0);
    parallel_for(scene.grid.rows, [&](std::size_t r) {
        for (std::size_t c = 0; c < scene.grid.cols; ++c) {
            const auto [p, clamped] = power_with(scene, wts, scene.grid.point(c, r));
            map.power[r * scene.grid.cols + c] = p;
            if (clamped) ++clamped_per_row[r];
        }
    });
    for (auto n : clamped_per_row) map.clamped_points += n;
    return map;
}

double field_power_at(const ArraySceneGrid& scene, const Point2& p) {
    if (scene.emitters.empty()) throw ArgumentError("field needs at least one emitter");
    return power_with(scene, conjugate_weights(scene), p).first;
}

std::vector<Point2> line_array(const Point2& center, std::size_t count, double pitch) {
    std::vector<Point2> out;
    out.reserve(count);
    const double x0 = center[0] - 0.5 * static_cast<double>(count - 1) * pitch;
    for (std::size_t i = 0; i < count; ++i) out.push_back({x0 + static_cast<double>(i) * pitch, center[1]});
    return out;
}

SpotMeasure measure_spot(const FieldMap& map, const ArraySceneGrid& scene) {
    const auto& g = map.grid;
    SpotMeasure out;
    out.target_power = field_power_at(scene, scene.target);
    const double threshold = 0.5 * out.target_power;

    const auto tc = static_cast<std::size_t>(std::lround((scene.target[0] - g.origin[0]) / g.step_x()));
    const auto tr = static_cast<std::size_t>(std::lround((scene.target[1] - g.origin[1]) / g.step_y()));
    if (tc >= g.cols || tr >= g.rows) throw ArgumentError("target outside field map");

    std::vector<std::uint8_t> seen(g.cols * g.rows, 0);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{tc, tr}};
    seen[tr * g.cols + tc] = 1;
    while (!stack.empty()) {
        const auto [c, r] = stack.back();
        stack.pop_back();
        ++out.region_cells;
        if (c == 0 || r == 0 || c + 1 == g.cols || r + 1 == g.rows) out.touches_boundary = true;
        auto visit = [&](std::size_t nc, std::size_t nr) {
            const std::size_t idx = nr * g.cols + nc;
            if (seen[idx] || map.power[idx] < threshold) return;
            seen[idx] = 1;
            stack.emplace_back(nc, nr);
        };
        if (c > 0) visit(c - 1, r);
        if (c + 1 < g.cols) visit(c + 1, r);
        if (r > 0) visit(c, r - 1);
        if (r + 1 < g.rows) visit(c, r + 1);
    }
    out.region_area = static_cast<double>(out.region_cells) * g.step_x() * g.step_y();

    // Walk outward along the target row to the first sample below threshold.
    auto edge = [&](int dir) {
        std::size_t c = tc;
        for (;;) {
            const bool at_end = dir < 0 ? c == 0 : c + 1 == g.cols;
            if (at_end) return static_cast<double>(c);
            const std::size_t next = dir < 0 ? c - 1 : c + 1;
            const double p0 = map.at(c, tr), p1 = map.at(next, tr);
            if (p1 < threshold) {
                const double frac = (p0 - threshold) / (p0 - p1);
                return static_cast<double>(c) + dir * frac;
            }
            c = next;
        }
    };
    out.transverse_width = (edge(+1) - edge(-1)) * g.step_x();
    return out;
}

void AbbeParams::validate() const {
    if (!(surface_area > 0.0) || !(distance > 0.0) || !(wavelength > 0.0) || !(k > 0.0))
        throw ArgumentError("Abbe parameters must be positive");
    if (!(solid_angle > 0.0 && solid_angle <= 2.0 * std::numbers::pi))
        throw ArgumentError("solid angle must lie in (0, 2 pi]");
}

double abbe_spot_area(const AbbeParams& p) {
    p.validate();
    return p.k * p.wavelength * p.wavelength * (1.0 + 4.0 * p.distance * p.distance / p.surface_area);
}

double pixelation_bound(double a, double frequency_nu) {
    if (!(a > 0.0) || !(frequency_nu > 0.0)) throw ArgumentError("pixel size and frequency must be positive");
    const double x = a * frequency_nu; // a / lambda with c = 1
    if (x >= 1.0) return 0.0;
    return std::sin(std::numbers::pi * x) / x / (std::numbers::sqrt2 * std::numbers::pi);
}

void write_field_csv(std::ostream& os, const FieldMap& map) {
    os << "x,y,power\n";
    for (std::size_t r = 0; r < map.grid.rows; ++r)
        for (std::size_t c = 0; c < map.grid.cols; ++c) {
            const auto p = map.grid.point(c, r);
            os << format_double(p[0]) << ',' << format_double(p[1]) << ',' << format_double(map.at(c, r)) << '\n';
        }
}

void write_field_binary(std::ostream& os, const FieldMap& map) {
    put_double(os, map.grid.origin[0]);
    put_double(os, map.grid.origin[1]);
    put_double(os, map.grid.extent[0]);
    put_double(os, map.grid.extent[1]);
    put_double(os, static_cast<double>(map.grid.cols));
    put_double(os, static_cast<double>(map.grid.rows));
    for (double v : map.power) put_double(os, v);
}

FieldMap read_field_binary(std::istream& is) {
    FieldMap map;
    map.grid.origin = {get_double(is), get_double(is)};
    map.grid.extent = {get_double(is), get_double(is)};
    const double cols = get_double(is), rows = get_double(is);
    if (!(cols >= 2 && rows >= 2) || cols != std::floor(cols) || rows != std::floor(rows) || cols * rows > 1e9)
        throw FormatError("invalid grid resolution in header");
    map.grid.cols = static_cast<std::size_t>(cols);
    map.grid.rows = static_cast<std::size_t>(rows);
    map.power.resize(map.grid.cols * map.grid.rows);
    for (auto& v : map.power) v = get_double(is);
    return map;
}

} // namespace rfsurf::physics
