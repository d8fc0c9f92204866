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

#ifndef RFSURF_OPTIMIZE_HPP
#define RFSURF_OPTIMIZE_HPP

#include <span>
#include <utility>

#include "rfsurf/channel.hpp"
#include "rfsurf/measurement.hpp"

namespace rfsurf {

struct ConfigMagnitude {
    SurfaceConfig config;
    double magnitude = 0.0; // |h(config)|
};

inline constexpr std::size_t kBruteForceMaxElements = 24;

// Exhaustive search over all 2^N configs (N <= 24). Ties resolve to the
// lexicographically smallest bitstring. Interactions are honoured.
ConfigMagnitude brute_force_opt(const Environment& env);

// Perfect-information optimum of the linear model. An optimal config turns
// on exactly the elements with a positive component along h_OPT, so it is
// one of the O(N) halfplane sets obtained by sweeping a direction around
// the circle; every arc between consecutive boundary angles is tried.
// Zero elements stay off; ties resolve lexicographically.
ConfigMagnitude halfplane_opt(const Environment& env);

// Elements split by the sign of Re(h_i e^{-j theta}) (>= 0 on side A);
// returns the better of "A on" and "B on". theta in [-pi, pi).
ConfigMagnitude arbitrary_line_2approx(const Environment& env, double theta);

// max |sum b_i h_i| ignoring the baseline, via halfplane_opt with h_Z = 0.
double surface_only_opt(const Environment& env);

enum class CenterStatistic { kMean, kMedian };

// Per-element majority vote over RSSI-ratio samples. A record votes "on" for
// element i when (bit set and ratio above centre) or (bit clear and ratio
// below centre). Vote ties leave the element off. Returns (Opt, ~Opt).
std::pair<SurfaceConfig, SurfaceConfig> majority_vote(std::span<const MeasurementRecord> records,
                                                      CenterStatistic center = CenterStatistic::kMedian);

double center_of(std::span<const double> ratios, CenterStatistic center);

} // namespace rfsurf

#endif
