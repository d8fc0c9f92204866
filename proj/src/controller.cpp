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

#include "rfsurf/controller.hpp"

#include <algorithm>
#include <cmath>

#include "rfsurf/error.hpp"
#include "rfsurf/rng.hpp"
#include "rfsurf/stats.hpp"

namespace rfsurf {

void ControllerParams::validate() const {
    if (batch_size < 2) throw ArgumentError("batch_size must be >= 2");
    if (!(confidence > 0.5 && confidence < 1.0)) throw ArgumentError("confidence must lie in (0.5, 1)");
    if (budget < batch_size) throw ArgumentError("budget is smaller than one batch");
}

namespace {

constexpr std::int8_t kFree = -1;

SurfaceConfig assemble(const std::vector<std::int8_t>& frozen, const SurfaceConfig& free_values) {
    SurfaceConfig c(frozen.size());
    for (std::size_t i = 0; i < frozen.size(); ++i)
        c.set(i, frozen[i] == kFree ? free_values[i] : frozen[i] == 1);
    return c;
}

} // namespace

OptimizationReport run_controller(const Environment& env, const NoiseModel& noise, const ControllerParams& params) {
    params.validate();
    const std::size_t n = env.size();
    MeasurementSession session(env, noise);
    SplitMix64 rng(derive_seed(params.seed, stream::kConfigs));

    OptimizationReport report;
    report.seed = params.seed;
    report.fixed_at.assign(n, -1);
    report.trajectory.push_back({0, 1.0}); // the all-off state, by definition

    std::vector<std::int8_t> frozen(n, kFree);
    SurfaceConfig votes(n); // latest majority-vote value of every element
    double best_so_far = 1.0;
    double best_measured = 1.0;
    double probe_hyp = 1.0, probe_comp = 1.0;
    SurfaceConfig hypothesis(n), complement(n);

    const std::int64_t probe_cost = 2 * kCandidateProbeRepeats;
    std::vector<MeasurementRecord> batch;
    std::vector<double> ratios;
    std::vector<stats::RunningStats> on_stats(n), off_stats(n);

    for (std::int64_t b = 0;; ++b) {
        const auto n_free = static_cast<std::size_t>(std::count(frozen.begin(), frozen.end(), kFree));
        if (n_free == 0) break;
        const std::int64_t room = params.budget - session.measurements_used() - kFinalProbeRepeats - probe_cost;
        const std::int64_t k = std::min(params.batch_size, room);
        if (k < 2) break;

        batch.clear();
        ratios.clear();
        SurfaceConfig config(n);
        for (std::int64_t s = 0; s < k; ++s) {
            for (std::size_t i = 0; i < n; ++i) config.set(i, frozen[i] == kFree ? rng.coin() : frozen[i] == 1);
            batch.push_back(session.measure(config, b));
            ratios.push_back(batch.back().rssi_ratio);
            best_measured = std::max(best_measured, ratios.back());
        }

        const auto [opt, not_opt] = majority_vote(batch, params.center_statistic);
        for (std::size_t i = 0; i < n; ++i)
            if (frozen[i] == kFree) votes.set(i, opt[i]);

        std::fill(on_stats.begin(), on_stats.end(), stats::RunningStats{});
        std::fill(off_stats.begin(), off_stats.end(), stats::RunningStats{});
        for (const auto& rec : batch) {
            const auto bits = rec.config.bits();
            for (std::size_t i = 0; i < n; ++i) {
                if (frozen[i] != kFree) continue;
                (bits[i] != 0 ? on_stats[i] : off_stats[i]).push(rec.rssi_ratio);
            }
        }
        const double alpha = 1.0 - params.confidence;
        for (std::size_t i = 0; i < n; ++i) {
            if (frozen[i] != kFree) continue;
            const auto test = stats::welch_t_test(on_stats[i], off_stats[i]);
            if (test.p_value < alpha) {
                frozen[i] = test.t > 0.0 ? 1 : 0;
                report.fixed_at[i] = session.measurements_used();
            }
        }

        hypothesis = assemble(frozen, votes);
        complement = assemble(frozen, ~votes);
        probe_hyp = session.probe_median(hypothesis, kCandidateProbeRepeats, b);
        probe_comp = session.probe_median(complement, kCandidateProbeRepeats, b);
        best_so_far = std::max({best_so_far, best_measured, probe_hyp, probe_comp});
        report.trajectory.push_back({session.measurements_used(), best_so_far});
        report.batches = b + 1;
    }

    // Never-frozen elements keep their latest vote; pick the better candidate
    // by its probe and re-probe it to report the achievement.
    hypothesis = assemble(frozen, votes);
    complement = assemble(frozen, ~votes);
    const bool complement_wins = report.batches > 0 && probe_comp > probe_hyp;
    report.best_config = complement_wins ? complement : hypothesis;
    report.best_config_complement_candidate = complement_wins ? hypothesis : complement;
    report.achieved_ratio = session.probe_median(report.best_config, kFinalProbeRepeats, report.batches);
    best_so_far = std::max(best_so_far, report.achieved_ratio);
    report.total_measurements = session.measurements_used();
    report.trajectory.push_back({report.total_measurements, best_so_far});
    return report;
}

} // namespace rfsurf
