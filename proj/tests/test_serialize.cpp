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
#include <filesystem>
#include <limits>

#include "rfsurf/env_synth.hpp"
#include "rfsurf/error.hpp"
#include "rfsurf/rng.hpp"
#include "rfsurf/serialize.hpp"

using namespace rfsurf;

TEST_SUITE("serialize") {

TEST_CASE("hex packs element 0 into the top bit") {
    CHECK(to_hex(SurfaceConfig{1, 0, 0, 0}) == "8");
    CHECK(to_hex(SurfaceConfig{0, 0, 0, 1}) == "1");
    CHECK(to_hex(SurfaceConfig{1, 0, 1, 1, 1}) == "b8");
    CHECK(to_hex(SurfaceConfig(8, true)) == "ff");
    CHECK(from_hex("b8", 5) == SurfaceConfig{1, 0, 1, 1, 1});
    CHECK(from_hex("B8", 5) == SurfaceConfig{1, 0, 1, 1, 1});
}

TEST_CASE("hex round trip over random configs") {
    SplitMix64 rng(17);
    for (std::size_t n = 1; n < 70; ++n) {
        SurfaceConfig c(n);
        for (std::size_t i = 0; i < n; ++i) c.set(i, rng.coin());
        REQUIRE(from_hex(to_hex(c), n) == c);
    }
}

TEST_CASE("hex errors") {
    CHECK_THROWS_AS(from_hex("b", 5), FormatError);
    CHECK_THROWS_AS(from_hex("b9", 5), FormatError); // padding bit set
    CHECK_THROWS_AS(from_hex("g0", 5), FormatError);
}

TEST_CASE("format_double is shortest round trip") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    SplitMix64 rng(3);
    for (int k = 0; k < 1000; ++k) {
        const double v = rng.normal() * std::pow(10.0, rng.uniform(-30, 30));
        REQUIRE(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("environment JSON round trip is lossless") {
    const auto base = gen_iid({9, 1.3, 2.7, 5, 0.01});
    const auto env = base.with_interactions({{0, 3, {0.1, -0.2}}, {2, 8, {1.0 / 3.0, 0.0}}});
    const auto back = environment_from_json(json::parse(environment_to_json(env).dump()));
    CHECK(back.h_z() == env.h_z());
    CHECK(std::equal(back.h().begin(), back.h().end(), env.h().begin(), env.h().end()));
    REQUIRE(back.interactions().size() == 2);
    CHECK(back.interactions()[1] == env.interactions()[1]);
    CHECK(back.noise_floor_power() == env.noise_floor_power());
}

TEST_CASE("malformed environment JSON") {
    CHECK_THROWS_AS(environment_from_json(json{{"h", json::array()}}), FormatError);
    CHECK_THROWS_AS(environment_from_json(json::parse(R"({"h_z":[1,0,0],"h":[[1,0]]})")), FormatError);
    CHECK_THROWS_AS(environment_from_json(json::parse(R"({"h_z":[1,0],"h":[[1,0]],"interactions":[[0,0,1,0]]})")),
                    ArgumentError);
}

TEST_CASE("noise and controller JSON round trips") {
    NoiseModel n;
    n.rel_sigma_db = 0.7;
    n.outlier_prob = 0.01;
    n.outlier_scale_db = 6.0;
    n.phase_sigma_rad = 0.05;
    n.seed = 0xfedcba9876543210ULL;
    const auto nb = noise_from_json(json::parse(noise_to_json(n).dump()));
    CHECK(nb.rel_sigma_db == n.rel_sigma_db);
    CHECK(nb.outlier_prob == n.outlier_prob);
    CHECK(nb.outlier_scale_db == n.outlier_scale_db);
    CHECK(nb.phase_sigma_rad == n.phase_sigma_rad);
    CHECK(nb.seed == n.seed);

    ControllerParams p;
    p.batch_size = 321;
    p.confidence = 0.99;
    p.budget = 5000;
    p.center_statistic = CenterStatistic::kMean;
    p.seed = 8;
    const auto pb = controller_params_from_json(controller_params_to_json(p));
    CHECK(pb.batch_size == 321);
    CHECK(pb.confidence == 0.99);
    CHECK(pb.budget == 5000);
    CHECK(pb.center_statistic == CenterStatistic::kMean);
    CHECK(pb.seed == 8);
    CHECK_THROWS_AS(controller_params_from_json(json{{"center_statistic", "mode"}}), FormatError);
}

TEST_CASE("iid spec JSON round trip") {
    const IidEnvSpec s{77, 0.5, 3.25, 12, 1e-4};
    const auto b = iid_spec_from_json(iid_spec_to_json(s));
    CHECK(b.n_elements == 77);
    CHECK(b.element_sigma == 0.5);
    CHECK(b.baseline_magnitude == 3.25);
    CHECK(b.seed == 12);
    CHECK(b.noise_floor_power == 1e-4);
}

TEST_CASE("scene JSON round trip and generated positions") {
    GeometricScene s;
    s.wavelength = 0.125;
    s.grid = {2, 3, 0.0625, 0.0625};
    s.element_positions = planar_grid({0.0, 0.0, 0.0}, s.grid);
    s.tx = {3.0, -1.0, 0.0};
    s.rx = {2.0, 1.5, 0.25};
    s.element_reflectivity = 0.8;
    s.direct_path_gain = 0.5;
    s.extra_paths = {{7.5, 0.1}};
    s.noise_floor_power = 1e-6;
    const auto b = scene_from_json(json::parse(scene_to_json(s).dump()));
    CHECK(b.element_positions == s.element_positions);
    CHECK(b.tx == s.tx);
    CHECK(b.rx == s.rx);
    CHECK(b.extra_paths.size() == 1);
    CHECK(b.extra_paths[0].length == 7.5);
    CHECK(b.direct_path_gain == 0.5);

    auto j = scene_to_json(s);
    j.erase("positions_m");
    j["center_m"] = json::array({0.0, 0.0, 0.0});
    CHECK(scene_from_json(j).element_positions == s.element_positions);
    j.erase("center_m");
    CHECK_THROWS_AS(scene_from_json(j), FormatError);
}

TEST_CASE("report JSON round trip") {
    OptimizationReport r;
    r.best_config = SurfaceConfig{1, 0, 1, 1, 1};
    r.best_config_complement_candidate = ~r.best_config;
    r.achieved_ratio = 12.345;
    r.trajectory = {{0, 1.0}, {2006, 7.5}, {2011, 12.345}};
    r.fixed_at = {2000, -1, 2000, -1, 2000};
    r.seed = 42;
    r.total_measurements = 2011;
    r.batches = 1;
    const auto j = report_to_json(r);
    CHECK(j.at("best_config") == "b8");
    const auto b = report_from_json(json::parse(j.dump()), 5);
    CHECK(b.best_config == r.best_config);
    CHECK(b.best_config_complement_candidate == r.best_config_complement_candidate);
    CHECK(b.achieved_ratio == r.achieved_ratio);
    CHECK(b.trajectory.size() == 3);
    CHECK(b.trajectory[1].measurements_used == 2006);
    CHECK(b.fixed_at == r.fixed_at);
    CHECK(b.total_measurements == 2011);
}

TEST_CASE("JSON files") {
    const auto dir = std::filesystem::temp_directory_path() / "rfsurf_serialize_test";
    std::filesystem::remove_all(dir);
    const auto path = dir / "nested" / "env.json";
    write_json_file(path, environment_to_json(Environment(1.0, {0.5})));
    CHECK(environment_from_json(read_json_file(path)).size() == 1);
    CHECK_THROWS_AS(read_json_file(dir / "missing.json"), FormatError);
    std::filesystem::remove_all(dir);
}

} // TEST_SUITE
