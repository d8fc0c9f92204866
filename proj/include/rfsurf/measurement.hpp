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

#ifndef RFSURF_MEASUREMENT_HPP
#define RFSURF_MEASUREMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "rfsurf/channel.hpp"

namespace rfsurf {

// Multiplicative receiver noise, additive in dB. Each sample is perturbed by
// eps ~ Normal(0, rel_sigma_db); with probability outlier_prob eps is
// replaced by +-outlier_scale_db (AGC jumps, lost packets).
// phase_sigma_rad only affects complex channel probes (the linearity
// experiment); RSSI samples carry no phase.
struct NoiseModel {
    double rel_sigma_db = 0.0;
    double outlier_prob = 0.0;
    double outlier_scale_db = 0.0;
    std::uint64_t seed = 0;
    double phase_sigma_rad = 0.0;

    bool is_noiseless() const noexcept { return rel_sigma_db == 0.0 && outlier_prob == 0.0; }
    void validate() const;
};

struct MeasurementRecord {
    SurfaceConfig config;
    double rssi_ratio = 0.0; // linear
    std::int64_t seq = 0;
    std::int64_t batch = 0;
};

// Applies one noise draw to an exact ratio. Deterministic in (noise.seed, seq).
double apply_rssi_noise(double exact_ratio, const NoiseModel& noise, std::int64_t seq);

// Complex probe of h(config)/h_Z with amplitude and phase noise, same seeding contract.
ChannelCoefficient apply_complex_noise(ChannelCoefficient exact_ratio, const NoiseModel& noise, std::int64_t seq);

MeasurementRecord measure(const Environment& env, const SurfaceConfig& config, const NoiseModel& noise,
                          std::int64_t seq, std::int64_t batch = 0);

// Stateful session handing out strictly increasing sequence numbers.
class MeasurementSession {
public:
    MeasurementSession(const Environment& env, NoiseModel noise);

    MeasurementRecord measure(const SurfaceConfig& config, std::int64_t batch = 0);
    // Noisy measurement of a config whose exact ratio is already known.
    MeasurementRecord measure_known(const SurfaceConfig& config, double exact_ratio, std::int64_t batch = 0);
    double probe_median(const SurfaceConfig& config, int repeats, std::int64_t batch = 0);

    std::int64_t measurements_used() const noexcept { return next_seq_; }
    const Environment& environment() const noexcept { return *env_; }
    const NoiseModel& noise() const noexcept { return noise_; }

private:
    const Environment* env_;
    NoiseModel noise_;
    std::int64_t next_seq_ = 0;
};

inline constexpr double kSnrFloorDb = -40.0;

struct MeasurabilityResult {
    double snr_db = 0.0;      // floored at kSnrFloorDb, +inf when noise variance is zero
    double signal_var = 0.0;  // variance across configs of per-config mean ratio
    double noise_var = 0.0;   // mean across configs of per-config variance
};

// Signal = variance across random configs of the per-config mean RSSI-ratio;
// Noise = mean within-config variance. Averaging is in the linear domain.
MeasurabilityResult measurability(const Environment& env, std::size_t n_configs, std::size_t reps,
                                  const NoiseModel& noise);
double measurability_snr(const Environment& env, std::size_t n_configs, std::size_t reps, const NoiseModel& noise);

// CSV trace: seq,batch,config,rssi_ratio,rssi_ratio_db
void write_trace_header(std::ostream& os);
void write_trace_row(std::ostream& os, const MeasurementRecord& rec);

} // namespace rfsurf

#endif
