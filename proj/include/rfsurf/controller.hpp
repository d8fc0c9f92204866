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

#ifndef RFSURF_CONTROLLER_HPP
#define RFSURF_CONTROLLER_HPP

#include <cstdint>
#include <vector>

#include "rfsurf/channel.hpp"
#include "rfsurf/measurement.hpp"
#include "rfsurf/optimize.hpp"

namespace rfsurf {

struct ControllerParams {
    std::int64_t batch_size = 2000;
    double confidence = 0.95;
    std::int64_t budget = 0; // total measurements, probes included
    CenterStatistic center_statistic = CenterStatistic::kMedian;
    std::uint64_t seed = 0;

    void validate() const;
};

// Repeats used for the hypothesis/complement probes after every batch and
// for the final re-probe of the winner. Both count against the budget.
inline constexpr int kCandidateProbeRepeats = 3;
inline constexpr int kFinalProbeRepeats = 5;

struct TrajectoryPoint {
    std::int64_t measurements_used = 0;
    double best_so_far_ratio = 0.0;
};

struct OptimizationReport {
    SurfaceConfig best_config;
    SurfaceConfig best_config_complement_candidate;
    double achieved_ratio = 0.0; // median-of-5 re-probe of best_config
    std::vector<TrajectoryPoint> trajectory;
    std::vector<std::int64_t> fixed_at; // measurement index at freeze time, -1 if never frozen
    std::uint64_t seed = 0;
    std::int64_t total_measurements = 0;
    std::int64_t batches = 0;
};

// Batched RSSI-only controller. Each batch randomises the still-free
// elements, votes with that batch's centre, and freezes every free element
// whose on/off RSSI-ratio populations differ under a two-sided Welch t-test
// at the requested confidence. Stops when every element is frozen or the
// budget cannot fit another batch.
OptimizationReport run_controller(const Environment& env, const NoiseModel& noise, const ControllerParams& params);

} // namespace rfsurf

#endif
