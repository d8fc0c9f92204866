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
#include <sstream>
#include <vector>

#include "rfsurf/env_synth.hpp"
#include "rfsurf/error.hpp"
#include "rfsurf/measurement.hpp"
#include "rfsurf/stats.hpp"

using namespace rfsurf;

TEST_SUITE("measurement") {

TEST_CASE("noiseless oracle returns the exact ratio") {
    const auto env = gen_iid({8, 1.0, 1.0, 1});
    const SurfaceConfig c{1, 0, 1, 1, 0, 0, 1, 0};
    const auto rec = measure(env, c, NoiseModel{}, 0);
    CHECK(rec.rssi_ratio == rssi_ratio_exact(env, c));
    CHECK(measure(env, SurfaceConfig::all_zeros(8), NoiseModel{}, 5).rssi_ratio == 1.0);
}

TEST_CASE("1 dB noise has unit spread and no bias in the log domain") {
    NoiseModel n;
    n.rel_sigma_db = 1.0;
    n.seed = 77;
    const double exact = 2.5;
    constexpr int kSamples = 100000;
    std::vector<double> db;
    db.reserve(kSamples);
    for (int s = 0; s < kSamples; ++s) db.push_back(to_db(apply_rssi_noise(exact, n, s)));
    CHECK(std::sqrt(stats::sample_variance(db)) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(stats::mean(db) - to_db(exact)) <= 3.0 * 1.0 / std::sqrt(kSamples));
}

TEST_CASE("noise is a pure function of seed and sequence number") {
    NoiseModel n;
    n.rel_sigma_db = 0.5;
    n.seed = 3;
    CHECK(apply_rssi_noise(1.7, n, 42) == apply_rssi_noise(1.7, n, 42));
    CHECK(apply_rssi_noise(1.7, n, 42) != apply_rssi_noise(1.7, n, 43));
    NoiseModel other = n;
    other.seed = 4;
    CHECK(apply_rssi_noise(1.7, n, 42) != apply_rssi_noise(1.7, other, 42));
}

TEST_CASE("outliers jump by exactly the outlier scale") {
    NoiseModel n;
    n.outlier_prob = 0.999999;
    n.outlier_scale_db = 6.0;
    n.seed = 9;
    int up = 0;
    for (int s = 0; s < 1000; ++s) {
        const double db = to_db(apply_rssi_noise(1.0, n, s));
        REQUIRE(std::abs(std::abs(db) - 6.0) < 1e-12);
        up += db > 0 ? 1 : 0;
    }
    CHECK(up > 400);
    CHECK(up < 600);
}

TEST_CASE("noise model validation") {
    NoiseModel n;
    n.rel_sigma_db = -1.0;
    CHECK_THROWS_AS(n.validate(), ArgumentError);
    n = NoiseModel{};
    n.outlier_prob = 1.0;
    CHECK_THROWS_AS(n.validate(), ArgumentError);
    n = NoiseModel{};
    n.phase_sigma_rad = -0.1;
    CHECK_THROWS_AS(n.validate(), ArgumentError);
}

TEST_CASE("complex probes") {
    const ChannelCoefficient x(0.3, -1.2);
    CHECK(apply_complex_noise(x, NoiseModel{}, 0) == x);
    NoiseModel phase_only;
    phase_only.phase_sigma_rad = 0.1;
    phase_only.seed = 2;
    const auto y = apply_complex_noise(x, phase_only, 0);
    CHECK(std::abs(y) == doctest::Approx(std::abs(x)).epsilon(1e-14));
    CHECK(y != x);
}

TEST_CASE("session hands out increasing sequence numbers") {
    const auto env = gen_iid({4, 1.0, 1.0, 6});
    NoiseModel n;
    n.rel_sigma_db = 0.3;
    MeasurementSession session(env, n);
    const SurfaceConfig c{1, 1, 0, 0};
    const auto a = session.measure(c, 0);
    const auto b = session.measure(c, 1);
    CHECK(a.seq == 0);
    CHECK(b.seq == 1);
    CHECK(b.batch == 1);
    CHECK(a.rssi_ratio == measure(env, c, n, 0).rssi_ratio);
    const double med = session.probe_median(c, 5);
    CHECK(session.measurements_used() == 7);
    std::vector<double> xs;
    for (int s = 2; s < 7; ++s) xs.push_back(apply_rssi_noise(rssi_ratio_exact(env, c), n, s));
    CHECK(med == stats::median(xs));
    CHECK_THROWS_AS(session.probe_median(c, 0), ArgumentError);
}

TEST_CASE("degenerate baseline is rejected") {
    const Environment env(0.0, {1.0, 1.0});
    CHECK_THROWS_AS(measure(env, {1, 0}, NoiseModel{}, 0), DegenerateBaselineError);
    CHECK_THROWS_AS(MeasurementSession(env, NoiseModel{}), DegenerateBaselineError);
}

TEST_CASE("measurability sentinels") {
    const auto env = gen_iid({16, 1.0, 4.0, 8});
    CHECK(std::isinf(measurability_snr(env, 10, 5, NoiseModel{})));
    NoiseModel n;
    n.rel_sigma_db = 1.0;
    const Environment inert(1.0, std::vector<ChannelCoefficient>(16, 0.0));
    // With nothing to vary, config means differ only by averaged noise: SNR ~ 1 / reps.
    CHECK(measurability_snr(inert, 400, 5, n) == doctest::Approx(to_db(1.0 / 5.0)).epsilon(0.2));
    CHECK(measurability_snr(inert, 10, 5, NoiseModel{}) == kSnrFloorDb);
    CHECK_THROWS_AS(measurability(env, 1, 5, n), ArgumentError);
    CHECK_THROWS_AS(measurability(env, 5, 1, n), ArgumentError);
}

TEST_CASE("measurability grows with the number of varied elements") {
    const auto big = gen_iid({1024, 1.0, 100.0, 21});
    NoiseModel n;
    n.rel_sigma_db = 1.0;
    n.seed = 5;
    std::vector<std::size_t> keep(64);
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
    const auto small = big.subset(keep);
    const auto r_small = measurability(small, 100, 125, n);
    const auto r_big = measurability(big, 100, 125, n);
    CHECK(r_big.snr_db > r_small.snr_db + 6.0);
    CHECK(r_small.snr_db == doctest::Approx(to_db(r_small.signal_var / r_small.noise_var)));
}

TEST_CASE("trace rows") {
    std::ostringstream os;
    write_trace_header(os);
    write_trace_row(os, MeasurementRecord{SurfaceConfig{1, 0, 1, 1, 1}, 10.0, 3, 1});
    CHECK(os.str() == "seq,batch,config,rssi_ratio,rssi_ratio_db\n3,1,b8,10,10\n");
}

} // TEST_SUITE
