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

#include "rfsurf/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "rfsurf/error.hpp"
#include "rfsurf/rng.hpp"
#include "rfsurf/serialize.hpp"
#include "rfsurf/stats.hpp"

namespace rfsurf {

void NoiseModel::validate() const {
    if (!(rel_sigma_db >= 0.0)) throw ArgumentError("rel_sigma_db must be >= 0");
    if (!(outlier_prob >= 0.0 && outlier_prob < 1.0)) throw ArgumentError("outlier_prob must lie in [0, 1)");
    if (!(outlier_scale_db >= 0.0)) throw ArgumentError("outlier_scale_db must be >= 0");
    if (!(phase_sigma_rad >= 0.0)) throw ArgumentError("phase_sigma_rad must be >= 0");
}

namespace {

SplitMix64 sample_rng(const NoiseModel& noise, std::int64_t seq) {
    return SplitMix64(derive_seed(derive_seed(noise.seed, stream::kNoise), static_cast<std::uint64_t>(seq)));
}

// eps in dB for one sample; the outlier draw replaces the Gaussian draw.
double draw_db(SplitMix64& rng, const NoiseModel& noise) {
    double eps = noise.rel_sigma_db > 0.0 ? rng.normal(0.0, noise.rel_sigma_db) : 0.0;
    if (noise.outlier_prob > 0.0 && rng.uniform() < noise.outlier_prob)
        eps = rng.coin() ? noise.outlier_scale_db : -noise.outlier_scale_db;
    return eps;
}

} // namespace

double apply_rssi_noise(double exact_ratio, const NoiseModel& noise, std::int64_t seq) {
    if (noise.is_noiseless()) return exact_ratio;
    auto rng = sample_rng(noise, seq);
    return exact_ratio * std::pow(10.0, draw_db(rng, noise) / 10.0);
}

ChannelCoefficient apply_complex_noise(ChannelCoefficient exact_ratio, const NoiseModel& noise, std::int64_t seq) {
    if (noise.is_noiseless() && noise.phase_sigma_rad == 0.0) return exact_ratio;
    auto rng = sample_rng(noise, seq);
    const double amp = std::pow(10.0, draw_db(rng, noise) / 20.0);
    const double phi = noise.phase_sigma_rad > 0.0 ? rng.normal(0.0, noise.phase_sigma_rad) : 0.0;
    return exact_ratio * std::polar(amp, phi);
}

MeasurementRecord measure(const Environment& env, const SurfaceConfig& config, const NoiseModel& noise,
                          std::int64_t seq, std::int64_t batch) {
    const double exact = rssi_ratio_exact(env, config);
    return MeasurementRecord{config, apply_rssi_noise(exact, noise, seq), seq, batch};
}

MeasurementSession::MeasurementSession(const Environment& env, NoiseModel noise) : env_(&env), noise_(noise) {
    noise_.validate();
    if (std::norm(env.h_z()) == 0.0)
        throw DegenerateBaselineError("baseline channel |h_Z| is zero; RSSI-ratio undefined");
}

MeasurementRecord MeasurementSession::measure(const SurfaceConfig& config, std::int64_t batch) {
    return rfsurf::measure(*env_, config, noise_, next_seq_++, batch);
}

MeasurementRecord MeasurementSession::measure_known(const SurfaceConfig& config, double exact_ratio,
                                                    std::int64_t batch) {
    const std::int64_t seq = next_seq_++;
    return MeasurementRecord{config, apply_rssi_noise(exact_ratio, noise_, seq), seq, batch};
}

double MeasurementSession::probe_median(const SurfaceConfig& config, int repeats, std::int64_t batch) {
    if (repeats < 1) throw ArgumentError("probe needs at least one repeat");
    const double exact = rssi_ratio_exact(*env_, config);
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r) xs.push_back(measure_known(config, exact, batch).rssi_ratio);
    return stats::median(xs);
}

MeasurabilityResult measurability(const Environment& env, std::size_t n_configs, std::size_t reps,
                                  const NoiseModel& noise) {
    if (n_configs < 2 || reps < 2) throw ArgumentError("measurability needs n_configs >= 2 and reps >= 2");
    MeasurementSession session(env, noise);
    SplitMix64 rng(derive_seed(noise.seed, stream::kConfigs));
    std::vector<double> means;
    means.reserve(n_configs);
    double noise_sum = 0.0;
    SurfaceConfig config(env.size());
    for (std::size_t c = 0; c < n_configs; ++c) {
        for (std::size_t i = 0; i < env.size(); ++i) config.set(i, rng.coin());
        const double exact = rssi_ratio_exact(env, config);
        stats::RunningStats rs;
        for (std::size_t r = 0; r < reps; ++r) rs.push(session.measure_known(config, exact).rssi_ratio);
        means.push_back(rs.mean());
        noise_sum += rs.sample_variance();
    }
    MeasurabilityResult out;
    out.signal_var = stats::sample_variance(means);
    out.noise_var = noise_sum / static_cast<double>(n_configs);
    if (out.noise_var == 0.0) {
        out.snr_db = out.signal_var > 0.0 ? std::numeric_limits<double>::infinity() : kSnrFloorDb;
    } else if (out.signal_var == 0.0) {
        out.snr_db = kSnrFloorDb;
    } else {
        out.snr_db = std::max(kSnrFloorDb, to_db(out.signal_var / out.noise_var));
    }
    return out;
}

double measurability_snr(const Environment& env, std::size_t n_configs, std::size_t reps, const NoiseModel& noise) {
    return measurability(env, n_configs, reps, noise).snr_db;
}

void write_trace_header(std::ostream& os) { os << "seq,batch,config,rssi_ratio,rssi_ratio_db\n"; }

void write_trace_row(std::ostream& os, const MeasurementRecord& rec) {
    os << rec.seq << ',' << rec.batch << ',' << to_hex(rec.config) << ',' << format_double(rec.rssi_ratio) << ','
       << format_double(to_db(rec.rssi_ratio)) << '\n';
}

} // namespace rfsurf
