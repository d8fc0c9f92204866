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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "rfsurf/env_synth.hpp"
#include "rfsurf/error.hpp"

using namespace rfsurf;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Phase difference wrapped into (-pi, pi].
double wrapped(double a) { return std::remainder(a, kTwoPi); }

GeometricScene one_element_scene(const Point3& element, double wavelength) {
    GeometricScene s;
    s.wavelength = wavelength;
    s.grid = {1, 1, 0.05, 0.05};
    s.element_positions = {element};
    s.tx = {1.0, 0.0, 0.0};
    s.rx = {1.0, 2.0, 0.0};
    return s;
}

} // namespace

TEST_SUITE("env_synth") {

TEST_CASE("gen_iid with zero element spread") {
    const auto env = gen_iid({1, 0.0, 1.0, 3});
    CHECK(env.h(0) == ChannelCoefficient(0.0, 0.0));
    CHECK(std::abs(env.h_z()) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gen_iid is deterministic in its seed") {
    CHECK(gen_iid({50, 1.0, 2.0, 11}) == gen_iid({50, 1.0, 2.0, 11}));
    CHECK_FALSE(gen_iid({50, 1.0, 2.0, 11}) == gen_iid({50, 1.0, 2.0, 12}));
}

TEST_CASE("gen_iid element magnitudes follow the folded normal mean") {
    // E|N(0, 1)| = sqrt(2 / pi); the sum over 10^4 elements is 7978.8.
    const auto env = gen_iid({10000, 1.0, 0.0, 2024});
    double sum = 0.0;
    for (auto h : env.h()) sum += std::abs(h);
    CHECK(sum == doctest::Approx(10000.0 * std::sqrt(2.0 / std::numbers::pi)).epsilon(0.02));
    CHECK(env.h_z() == ChannelCoefficient(0.0, 0.0));
}

TEST_CASE("gen_iid rejects negative scales") {
    CHECK_THROWS_AS(gen_iid({4, -1.0, 1.0, 0}), ArgumentError);
    CHECK_THROWS_AS(gen_iid({0, 1.0, 1.0, 0}), ArgumentError);
}

TEST_CASE("integer-wavelength path has zero phase") {
    // tx (1,0,0) -> element (0,1,0) -> rx (1,2,0): two segments of sqrt(2).
    const double total = 2.0 * std::sqrt(2.0);
    const double lambda = total / 40.0;
    const auto scene = one_element_scene({0.0, 1.0, 0.0}, lambda);
    const auto env = gen_geometric(scene, kSpeedOfLight / lambda);
    CHECK(std::abs(wrapped(std::arg(env.h(0)))) < 1e-9);
    CHECK(std::abs(env.h(0)) == doctest::Approx(1.0 / 2.0).epsilon(1e-12));
}

TEST_CASE("doubling both segment lengths divides the amplitude by four") {
    GeometricScene s = one_element_scene({0.0, 0.0, 0.0}, 0.1);
    s.tx = {3.0, 0.0, 0.0};
    s.rx = {0.0, 4.0, 0.0};
    const double a1 = std::abs(gen_geometric(s, 3e9).h(0));
    s.tx = {6.0, 0.0, 0.0};
    s.rx = {0.0, 8.0, 0.0};
    const double a2 = std::abs(gen_geometric(s, 3e9).h(0));
    CHECK(a1 / a2 == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("half-wavelength path difference flips the phase") {
    const double f = 2.4e9;
    const double lambda = kSpeedOfLight / f;
    GeometricScene s;
    s.wavelength = lambda;
    s.grid = {1, 2, 0.05, 0.05};
    s.tx = {0.0, 0.0, 0.0};
    s.rx = {0.0, 0.0, 1e-3};
    // Both elements on the y axis: total path ~ 2 y.
    const double y1 = 1.0;
    s.element_positions = {{0.0, y1, 0.0}, {0.0, y1, 0.0}};
    const auto lengths_probe = [&](double y2) {
        s.element_positions[1] = {0.0, y2, 0.0};
        const auto l = element_path_lengths(s);
        return l[1] - l[0];
    };
    // Solve for y2 with path difference lambda / 2 by bisection.
    double lo = y1, hi = y1 + lambda;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (lengths_probe(mid) < 0.5 * lambda ? lo : hi) = mid;
    }
    lengths_probe(0.5 * (lo + hi));
    const auto env = gen_geometric(s, f);
    CHECK(std::abs(std::abs(wrapped(std::arg(env.h(1)) - std::arg(env.h(0)))) - std::numbers::pi) < 1e-9);
}

TEST_CASE("baseline includes direct and extra paths") {
    GeometricScene s = one_element_scene({0.0, 1.0, 0.0}, 0.125);
    s.direct_path_gain = 0.5;
    s.extra_paths = {{4.0, 0.25}};
    const auto env = gen_geometric(s, kSpeedOfLight / 0.125);
    // direct path length 2.0 = 16 wavelengths, extra path 4.0 = 32 wavelengths: both phases zero.
    CHECK(env.h_z().real() == doctest::Approx(0.5 / 2.0 + 0.25 / 4.0).epsilon(1e-12));
    CHECK(std::abs(env.h_z().imag()) < 1e-12);
    s.direct_path_gain = 0.0;
    s.extra_paths.clear();
    CHECK(gen_geometric(s, 2e9).h_z() == ChannelCoefficient(0.0, 0.0));
}

TEST_CASE("reciprocity: swapping tx and rx leaves the environment unchanged") {
    GeometricScene s;
    s.wavelength = 0.125;
    s.grid = {4, 5, 0.06, 0.06};
    s.element_positions = planar_grid({0.0, 0.0, 0.0}, s.grid);
    s.tx = {2.0, -1.0, 0.3};
    s.rx = {3.0, 1.5, -0.2};
    s.extra_paths = {{5.0, 0.3}};
    const auto a = gen_geometric(s, 2.4e9);
    std::swap(s.tx, s.rx);
    const auto b = gen_geometric(s, 2.4e9);
    CHECK(std::abs(a.h_z() - b.h_z()) < 1e-15);
    for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(std::abs(a.h(i) - b.h(i)) < 1e-15);
}

TEST_CASE("scene_at_frequencies") {
    GeometricScene s;
    s.wavelength = 0.125;
    s.grid = {2, 3, 0.05, 0.05};
    s.element_positions = planar_grid({0.0, 0.0, 0.0}, s.grid);
    s.tx = {2.0, 0.0, 0.0};
    s.rx = {2.5, 1.0, 0.0};
    const std::vector<double> one{2.42e9};
    const auto single = scene_at_frequencies(s, one);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == gen_geometric(s, 2.42e9));

    std::vector<double> freqs;
    for (int k = 0; k <= 20; ++k) freqs.push_back(2.41e9 + k * 1e6);
    const auto envs = scene_at_frequencies(s, freqs);
    CHECK(envs.size() == 21);
    // Adjacent-frequency phase step of element 0 equals -2 pi df L / c.
    const double length = element_path_lengths(s)[0];
    const double expected = -kTwoPi * 1e6 * length / kSpeedOfLight;
    for (std::size_t k = 1; k < envs.size(); ++k) {
        const double step = std::arg(envs[k].h(0)) - std::arg(envs[k - 1].h(0));
        REQUIRE(std::abs(wrapped(step - expected)) < 1e-9);
    }
    const std::vector<double> bad{2.4e9, -1.0};
    CHECK_THROWS_AS(scene_at_frequencies(s, bad), ArgumentError);
}

TEST_CASE("scene validation") {
    GeometricScene s;
    s.wavelength = 0.125;
    s.grid = {2, 2, 0.05, 0.05};
    s.element_positions = planar_grid({0.0, 0.0, 0.0}, s.grid);
    s.tx = {1.0, 0.0, 0.0};
    s.rx = {1.0, 1.0, 0.0};
    CHECK_NOTHROW(validate_scene(s));
    CHECK(s.surface_area() == doctest::Approx(0.01));

    auto bad = s;
    bad.rx = bad.tx;
    CHECK_THROWS_AS(validate_scene(bad), GeometryError);
    bad = s;
    bad.tx = bad.element_positions[2];
    CHECK_THROWS_AS(gen_geometric(bad, 2.4e9), GeometryError);
    bad = s;
    bad.element_positions.pop_back();
    CHECK_THROWS_AS(validate_scene(bad), GeometryError);
    bad = s;
    bad.element_reflectivity = 1.5;
    CHECK_THROWS_AS(validate_scene(bad), GeometryError);
    bad = s;
    bad.extra_paths = {{0.0, 1.0}};
    CHECK_THROWS_AS(validate_scene(bad), GeometryError);
    CHECK_THROWS_AS(gen_geometric(s, 0.0), ArgumentError);
}

TEST_CASE("grating-lobe diagnostic") {
    GeometricScene s;
    s.grid = {2, 2, 0.06, 0.06};
    CHECK_FALSE(spacing_exceeds_half_wavelength(s, 2.4e9)); // lambda/2 = 0.0625 m
    CHECK(spacing_exceeds_half_wavelength(s, 2.6e9));       // lambda/2 = 0.0577 m
}

TEST_CASE("planar_grid layout") {
    const auto pts = planar_grid({1.0, 2.0, 3.0}, {2, 3, 0.5, 0.25});
    REQUIRE(pts.size() == 6);
    CHECK(pts[0] == Point3{1.0, 1.75, 2.75});
    CHECK(pts[2] == Point3{1.0, 2.25, 2.75});
    CHECK(pts[3] == Point3{1.0, 1.75, 3.25});
}

TEST_CASE("neighbour interactions follow the grid") {
    const auto env = gen_iid({12, 1.0, 1.0, 8});
    const auto with = add_neighbor_interactions(env, {3, 4, 0.0, 0.0}, 0.1, 5);
    // 3 rows x 3 horizontal pairs + 2 x 4 vertical pairs.
    REQUIRE(with.interactions().size() == 17);
    for (const auto& t : with.interactions()) {
        const bool horizontal = t.j == t.i + 1 && t.i % 4 != 3;
        const bool vertical = t.j == t.i + 4;
        REQUIRE((horizontal || vertical));
        REQUIRE(std::abs(t.g) == doctest::Approx(0.1 * std::sqrt(std::abs(env.h(t.i)) * std::abs(env.h(t.j)))));
    }
    CHECK(add_neighbor_interactions(env, {}, 0.1, 5).interactions().size() == 11);
    CHECK(add_neighbor_interactions(env, {3, 4, 0, 0}, 0.1, 5) == with);
    CHECK_THROWS_AS(add_neighbor_interactions(env, {}, -1.0, 5), ArgumentError);
}

} // TEST_SUITE
