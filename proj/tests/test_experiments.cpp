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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rfsurf/error.hpp"
#include "rfsurf/experiments.hpp"
#include "rfsurf/rng.hpp"

using namespace rfsurf;

namespace {

bool property_passed(const ExperimentResult& r, std::string_view name) {
    const auto* p = r.find(name);
    REQUIRE_MESSAGE(p != nullptr, "missing property ", std::string(name));
    return p->passed;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE("experiments") {

TEST_CASE("every experiment has a default spec that survives a JSON round trip") {
    for (const auto& name : experiment_names()) {
        CAPTURE(name);
        const auto spec = default_spec(name);
        CHECK(spec.name == name);
        const auto back = spec_from_json(json::parse(spec_to_json(spec).dump()));
        CHECK(spec_to_json(back) == spec_to_json(spec));
    }
    CHECK(is_experiment_name("quadratic"));
    CHECK_FALSE(is_experiment_name("nope"));
    CHECK_THROWS_AS(default_spec("nope"), ArgumentError);
    ExperimentSpec bad;
    bad.name = "nope";
    CHECK_THROWS_AS(run_experiment(bad), ArgumentError);
}

TEST_CASE("partial spec JSON merges with defaults") {
    const auto s = spec_from_json(json{{"name", "quadratic"}, {"trials", 2}, {"params", {{"subsets_per_size", 3}}}});
    CHECK(s.trials == 2);
    CHECK(s.params.at("subsets_per_size") == 3);
    CHECK(s.params.at("slope_min") == 1.8);
    CHECK(s.iid.has_value());
}

TEST_CASE("quadratic scaling on a reduced ensemble") {
    auto spec = default_spec("quadratic");
    spec.trials = 3;
    spec.iid->n_elements = 256;
    spec.params["sizes"] = {32, 64, 128, 256};
    spec.params["subsets_per_size"] = 5;
    const auto r = run_experiment(spec);
    CHECK(property_passed(r, "aligned_slope_is_two"));
    CHECK(r.find("aligned_slope_is_two")->value == doctest::Approx(2.0));
    CHECK(property_passed(r, "optimized_slope_min"));
    CHECK(property_passed(r, "optimized_slope_max"));
}

TEST_CASE("linearity without interactions is exact") {
    auto spec = default_spec("linearity");
    spec.trials = 20;
    spec.iid->n_elements = 64;
    spec.params["grid_rows"] = 8;
    spec.params["grid_cols"] = 8;
    spec.params["reps"] = 10;
    spec.params["calibrate"] = false;
    const auto r = run_experiment(spec);
    CHECK(property_passed(r, "exact_linearity_without_interactions"));
}

TEST_CASE("pi bound on small instances") {
    auto spec = default_spec("pi_bound");
    spec.trials = 100;
    spec.params["large_sizes"] = {64};
    spec.params["large_instances"] = 5;
    const auto r = run_experiment(spec);
    CHECK(r.passed());
    CHECK(r.find("empirical_min_ratio")->value >= 1.0 / 3.14159265358979);
}

TEST_CASE("halfplane optimum agrees with brute force in the 2-approximation run") {
    auto spec = default_spec("two_approx");
    spec.trials = 100;
    const auto r = run_experiment(spec);
    CHECK(property_passed(r, "halfplane_matches_brute_force"));
    CHECK(property_passed(r, "optimum_sign_property"));
    // The line property is computed, not assumed; the oracle decides.
    const auto* line = r.find("arbitrary_line_is_2_approximation");
    REQUIRE(line != nullptr);
    CHECK(line->passed == (r.find("worst_ratio_to_optimal")->value >= 0.5 - 1e-12));
}

TEST_CASE("frequency selectivity of the default scene") {
    const auto r = run_experiment(default_spec("frequency"));
    CHECK(property_passed(r, "center_in_top_k"));
    CHECK(property_passed(r, "decays_at_predicted_offset"));
}

TEST_CASE("measurability on a reduced environment") {
    auto spec = default_spec("measurability");
    spec.iid->n_elements = 1024;
    spec.params["sizes"] = {16, 64, 256, 1024};
    spec.params["n_configs"] = 50;
    spec.params["reps"] = 60;
    const auto r = run_experiment(spec);
    CHECK(property_passed(r, "snr_monotone_in_n"));
}

TEST_CASE("optimization trajectory on a reduced ensemble") {
    auto spec = default_spec("opt_speed");
    spec.trials = 2;
    spec.iid->n_elements = 400;
    spec.controller.budget = 3000;
    spec.controller.batch_size = 500;
    spec.params["baseline_multipliers"] = {4.0, 10.0};
    const auto r = run_experiment(spec);
    CHECK(property_passed(r, "trajectory_monotone"));
    CHECK(property_passed(r, "trajectory_ends_at_total"));
    CHECK(r.find("final_gain_db_min")->value > 0.0);
}

TEST_CASE("outputs are written and reproducible") {
    auto spec = default_spec("quadratic");
    spec.trials = 2;
    spec.iid->n_elements = 128;
    spec.params["sizes"] = {32, 64, 128};
    spec.params["subsets_per_size"] = 3;
    const auto dir = std::filesystem::temp_directory_path() / "rfsurf_experiments_test";
    std::filesystem::remove_all(dir);
    const auto r = run_experiment(spec);
    write_outputs(spec, r, dir / "a");
    write_outputs(spec, run_experiment(spec), dir / "b");
    for (const char* f : {"manifest.json", "summary.json", "series/quadratic.csv", "series/slopes.csv"}) {
        CAPTURE(f);
        REQUIRE(std::filesystem::exists(dir / "a" / f));
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
    const auto manifest = read_json_file(dir / "a" / "manifest.json");
    CHECK(manifest.at("tool_version") == kToolVersion);
    CHECK(manifest.at("rng_algorithm") == kRngAlgorithmName);
    CHECK(manifest.at("seed") == spec.seed);
    CHECK(spec_from_json(manifest.at("spec")).trials == 2);
    const auto summary = read_json_file(dir / "a" / "summary.json");
    CHECK(summary.at("passed") == r.passed());
    std::filesystem::remove_all(dir);
}

TEST_CASE("different seeds give different ensembles") {
    auto spec = default_spec("quadratic");
    spec.trials = 2;
    spec.iid->n_elements = 128;
    spec.params["sizes"] = {32, 128};
    spec.params["subsets_per_size"] = 2;
    const auto a = summary_to_json(run_experiment(spec));
    spec.seed = 2;
    const auto b = summary_to_json(run_experiment(spec));
    CHECK(a != b);
}

} // TEST_SUITE
