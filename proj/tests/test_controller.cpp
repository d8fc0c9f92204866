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

#include <vector>

#include "rfsurf/controller.hpp"
#include "rfsurf/env_synth.hpp"
#include "rfsurf/error.hpp"
#include "rfsurf/rng.hpp"

using namespace rfsurf;

namespace {

void check_trajectory(const OptimizationReport& r, std::int64_t budget) {
    REQUIRE(!r.trajectory.empty());
    CHECK(r.trajectory.front().measurements_used == 0);
    for (std::size_t k = 1; k < r.trajectory.size(); ++k) {
        CHECK(r.trajectory[k].measurements_used >= r.trajectory[k - 1].measurements_used);
        CHECK(r.trajectory[k].best_so_far_ratio >= r.trajectory[k - 1].best_so_far_ratio);
    }
    CHECK(r.trajectory.back().measurements_used == r.total_measurements);
    CHECK(r.total_measurements <= budget);
}

} // namespace

TEST_SUITE("controller") {

TEST_CASE("defaults") {
    const ControllerParams p;
    CHECK(p.batch_size == 2000);
    CHECK(p.confidence == 0.95);
}

TEST_CASE("parameter validation") {
    const Environment env(1.0, {0.5});
    ControllerParams p;
    p.budget = 1999;
    CHECK_THROWS_AS(run_controller(env, {}, p), ArgumentError);
    p.budget = 4000;
    p.confidence = 1.0;
    CHECK_THROWS_AS(run_controller(env, {}, p), ArgumentError);
    p.confidence = 0.95;
    p.batch_size = 1;
    CHECK_THROWS_AS(run_controller(env, {}, p), ArgumentError);
}

TEST_CASE("a dominant element is frozen on within the first batch") {
    std::vector<ChannelCoefficient> h(8, 0.0);
    h[0] = 0.5;
    const Environment env(1.0, h);
    NoiseModel noise;
    noise.rel_sigma_db = 0.1;
    noise.seed = 3;
    ControllerParams p;
    p.batch_size = 200;
    p.budget = 2000;
    p.seed = 4;
    const auto r = run_controller(env, noise, p);
    CHECK(r.best_config[0]);
    CHECK(r.fixed_at[0] >= 0);
    CHECK(r.fixed_at[0] <= p.batch_size);
    check_trajectory(r, p.budget);
}

TEST_CASE("trajectory is monotone, ends at the total and respects the budget") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const auto env = gen_iid({32, 1.0, 4.0, derive_seed(s, 21)});
        NoiseModel noise;
        noise.rel_sigma_db = 0.5;
        noise.seed = derive_seed(s, 22);
        ControllerParams p;
        p.batch_size = 300;
        p.budget = 1000 + 137 * static_cast<std::int64_t>(s);
        p.seed = s;
        const auto r = run_controller(env, noise, p);
        check_trajectory(r, p.budget);
        CHECK(r.best_config_complement_candidate.size() == env.size());
        CHECK(r.fixed_at.size() == env.size());
    }
}

TEST_CASE("noiseless convergence for small N reaches a quarter of the optimal power") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const std::size_t n = 4 + s % 13;
        const auto env = gen_iid({n, 1.0, 2.0, derive_seed(s, 31)});
        ControllerParams p;
        p.batch_size = 500;
        p.budget = 20000;
        p.seed = s;
        const auto r = run_controller(env, {}, p);
        const double exact = rssi_ratio_exact(env, r.best_config);
        const double best = brute_force_opt(env).magnitude;
        CHECK(exact >= 0.25 * best * best / std::norm(env.h_z()));
        CHECK(r.achieved_ratio == doctest::Approx(exact));
    }
}

TEST_CASE("same seeds give the same report") {
    const auto env = gen_iid({24, 1.0, 3.0, 99});
    NoiseModel noise;
    noise.rel_sigma_db = 1.0;
    noise.seed = 5;
    ControllerParams p;
    p.batch_size = 400;
    p.budget = 3000;
    p.seed = 6;
    const auto a = run_controller(env, noise, p);
    const auto b = run_controller(env, noise, p);
    CHECK(a.best_config == b.best_config);
    CHECK(a.achieved_ratio == b.achieved_ratio);
    CHECK(a.fixed_at == b.fixed_at);
    CHECK(a.trajectory.size() == b.trajectory.size());
}

} // TEST_SUITE
