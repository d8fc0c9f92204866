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

#include "rfsurf/optimize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "rfsurf/error.hpp"
#include "rfsurf/parallel.hpp"
#include "rfsurf/stats.hpp"

namespace rfsurf {

namespace {

// Candidates whose approximate |h|^2 lies within this relative distance of
// the running best are re-evaluated exactly before comparison.
constexpr double kNearTie = 1e-9;

// Keeps the best config under (exact |h|^2 desc, bitstring asc).
class BestTracker {
public:
    explicit BestTracker(const Environment& env) : env_(&env) {}

    void offer_exact(const SurfaceConfig& config, double norm) {
        if (!has_ || norm > norm_ || (norm == norm_ && config < config_)) {
            has_ = true;
            norm_ = norm;
            config_ = config;
        }
    }

    // `approx` may carry accumulated rounding; only near-ties are re-evaluated.
    template <typename MakeConfig>
    void offer_approx(double approx, MakeConfig&& make) {
        if (has_ && approx < norm_ * (1.0 - kNearTie)) return;
        SurfaceConfig c = make();
        offer_exact(c, std::norm(evaluate_channel(*env_, c)));
    }

    void merge(const BestTracker& other) {
        if (other.has_) offer_exact(other.config_, other.norm_);
    }

    bool has() const noexcept { return has_; }
    ConfigMagnitude result() const { return {config_, std::sqrt(norm_)}; }

private:
    const Environment* env_;
    bool has_ = false;
    double norm_ = 0.0;
    SurfaceConfig config_;
};

double wrap_2pi(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a < 0.0) a += two_pi;
    if (a >= two_pi) a = 0.0;
    return a;
}

} // namespace

ConfigMagnitude brute_force_opt(const Environment& env) {
    const std::size_t n = env.size();
    if (n > kBruteForceMaxElements)
        throw ArgumentError("brute_force_opt limited to " + std::to_string(kBruteForceMaxElements) +
                            " elements, got " + std::to_string(n));

    // Per-element neighbour lists so a single flip updates the sum in O(degree).
    std::vector<std::vector<std::pair<std::size_t, ChannelCoefficient>>> adj(n);
    for (const auto& t : env.interactions()) {
        adj[t.i].emplace_back(t.j, t.g);
        adj[t.j].emplace_back(t.i, t.g);
    }

    // The last `inner` elements are walked in Gray-code order inside each
    // prefix assignment of the leading elements; each prefix restarts from
    // an exact evaluation so rounding never accumulates over more than
    // 2^inner steps.
    const std::size_t inner = std::min<std::size_t>(n, 12);
    const std::size_t outer = n - inner;
    const std::uint64_t prefixes = std::uint64_t{1} << outer;
    const std::uint64_t inner_count = std::uint64_t{1} << inner;

    auto scan_prefix = [&](std::uint64_t prefix, BestTracker& best) {
        SurfaceConfig config(n);
        for (std::size_t k = 0; k < outer; ++k) config.set(k, ((prefix >> (outer - 1 - k)) & 1U) != 0);
        ChannelCoefficient sum = evaluate_channel(env, config);
        best.offer_exact(config, std::norm(sum));
        for (std::uint64_t step = 1; step < inner_count; ++step) {
            const std::size_t e = outer + static_cast<std::size_t>(std::countr_zero(step));
            const bool turning_on = !config[e];
            ChannelCoefficient delta = env.h(e);
            for (const auto& [other, g] : adj[e])
                if (config[other]) delta += g;
            sum += turning_on ? delta : -delta;
            config.flip(e);
            best.offer_approx(std::norm(sum), [&] { return config; });
        }
    };

    const std::size_t chunks = prefixes;
    if (n < 18) {
        BestTracker best(env);
        for (std::uint64_t p = 0; p < prefixes; ++p) scan_prefix(p, best);
        return best.result();
    }
    std::vector<BestTracker> partial(chunks, BestTracker(env));
    parallel_for(chunks, [&](std::size_t c) { scan_prefix(c, partial[c]); });
    BestTracker best(env);
    for (const auto& p : partial) best.merge(p);
    return best.result();
}

ConfigMagnitude halfplane_opt(const Environment& env) {
    const std::size_t n = env.size();
    const auto h = env.h();

    // Element i is on for directions theta in the open arc (phi_i - pi/2, phi_i + pi/2).
    struct Event {
        double angle;
        std::size_t element;
        bool enters;
    };
    std::vector<Event> events;
    std::vector<double> enter(n, 0.0), leave(n, 0.0);
    std::vector<bool> active(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (h[i] == ChannelCoefficient{}) continue;
        active[i] = true;
        const double phi = std::arg(h[i]);
        enter[i] = wrap_2pi(phi - std::numbers::pi / 2.0);
        leave[i] = wrap_2pi(phi + std::numbers::pi / 2.0);
        events.push_back({enter[i], i, true});
        events.push_back({leave[i], i, false});
    }

    BestTracker best(env);
    best.offer_exact(SurfaceConfig::all_zeros(n), std::norm(env.h_z()));
    if (events.empty()) return best.result();

    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.angle < b.angle; });

    auto inside = [&](std::size_t i, double theta) {
        if (enter[i] < leave[i]) return enter[i] < theta && theta < leave[i];
        return theta > enter[i] || theta < leave[i];
    };
    auto config_at = [&](double theta) {
        SurfaceConfig c(n);
        for (std::size_t i = 0; i < n; ++i)
            if (active[i] && inside(i, theta)) c.set(i, true);
        return c;
    };

    // Walk the distinct boundary angles; the arc after boundary k ends at
    // boundary k+1 (cyclically). Zero-width arcs are skipped.
    std::vector<std::size_t> starts; // index into events of each distinct angle
    for (std::size_t k = 0; k < events.size(); ++k)
        if (k == 0 || events[k].angle != events[k - 1].angle) starts.push_back(k);

    const double two_pi = 2.0 * std::numbers::pi;
    auto arc_mid = [&](std::size_t s) {
        const double a = events[starts[s]].angle;
        double b = s + 1 < starts.size() ? events[starts[s + 1]].angle : events[starts[0]].angle + two_pi;
        return wrap_2pi(0.5 * (a + b));
    };

    // Initial arc evaluated directly, later arcs by applying boundary events.
    double theta0 = arc_mid(0);
    SurfaceConfig current = config_at(theta0);
    ChannelCoefficient sum = env.h_z();
    for (std::size_t i = 0; i < n; ++i)
        if (current[i]) sum += h[i];
    best.offer_approx(std::norm(sum), [&] { return current; });

    for (std::size_t s = 1; s < starts.size(); ++s) {
        const std::size_t end = s + 1 < starts.size() ? starts[s + 1] : events.size();
        for (std::size_t k = starts[s]; k < end; ++k) {
            const auto& ev = events[k];
            if (ev.enters && !current[ev.element]) {
                current.set(ev.element, true);
                sum += h[ev.element];
            } else if (!ev.enters && current[ev.element]) {
                current.set(ev.element, false);
                sum -= h[ev.element];
            }
        }
        best.offer_approx(std::norm(sum), [&] { return current; });
    }

    // Direction of h_Z itself.
    if (env.h_z() != ChannelCoefficient{}) {
        const double theta = wrap_2pi(std::arg(env.h_z()));
        SurfaceConfig c(n);
        for (std::size_t i = 0; i < n; ++i)
            if (active[i] && std::real(h[i] * std::polar(1.0, -theta)) > 0.0) c.set(i, true);
        best.offer_exact(c, std::norm(evaluate_channel(env, c)));
    }
    return best.result();
}

ConfigMagnitude arbitrary_line_2approx(const Environment& env, double theta) {
    if (!(theta >= -std::numbers::pi && theta < std::numbers::pi))
        throw ArgumentError("theta must lie in [-pi, pi)");
    const auto h = env.h();
    const ChannelCoefficient rot = std::polar(1.0, -theta);
    SurfaceConfig side_a(env.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        if (std::real(h[i] * rot) >= 0.0) side_a.set(i, true);
    const SurfaceConfig side_b = ~side_a;
    BestTracker best(env);
    best.offer_exact(side_a, std::norm(evaluate_channel(env, side_a)));
    best.offer_exact(side_b, std::norm(evaluate_channel(env, side_b)));
    return best.result();
}

double surface_only_opt(const Environment& env) {
    return halfplane_opt(env.with_baseline(ChannelCoefficient{})).magnitude;
}

double center_of(std::span<const double> ratios, CenterStatistic center) {
    return center == CenterStatistic::kMedian ? stats::median(ratios) : stats::mean(ratios);
}

std::pair<SurfaceConfig, SurfaceConfig> majority_vote(std::span<const MeasurementRecord> records,
                                                      CenterStatistic center) {
    if (records.empty()) throw ArgumentError("majority_vote needs at least one record");
    const std::size_t n = records.front().config.size();
    std::vector<double> ratios;
    ratios.reserve(records.size());
    for (const auto& r : records) {
        if (r.config.size() != n) throw DimensionError("records disagree on element count");
        ratios.push_back(r.rssi_ratio);
    }
    const double a = center_of(ratios, center);

    // vote_on[i] - vote_off[i] accumulated as a signed tally.
    std::vector<std::int64_t> tally(n, 0);
    for (const auto& r : records) {
        const bool above = r.rssi_ratio > a;
        const bool below = r.rssi_ratio < a;
        const auto bits = r.config.bits();
        for (std::size_t i = 0; i < n; ++i) {
            const bool on_vote = bits[i] != 0 ? above : below;
            tally[i] += on_vote ? 1 : -1;
        }
    }
    SurfaceConfig opt(n);
    for (std::size_t i = 0; i < n; ++i) opt.set(i, tally[i] > 0);
    return {opt, ~opt};
}

} // namespace rfsurf
