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

#ifndef RFSURF_STATS_HPP
#define RFSURF_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace rfsurf::stats {

double mean(std::span<const double> xs);
// Unbiased (n - 1) sample variance; 0 for fewer than two samples.
double sample_variance(std::span<const double> xs);
double median(std::span<const double> xs);

// Streaming mean/variance (Welford).
class RunningStats {
public:
    void push(double x) noexcept;
    std::size_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    double sample_variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

// Regularized incomplete beta I_x(a, b), continued fraction evaluated with
// the modified Lentz method. a, b > 0, 0 <= x <= 1.
double incomplete_beta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `df` degrees of freedom (df > 0, real).
double student_t_two_sided_p(double t, double df);

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0; // two-sided
};

// Welch's unequal-variance two-sample t-test. Degenerate inputs (fewer than
// two samples on a side) give p = 1. Zero pooled standard error gives p = 0
// when the means differ and p = 1 when they are equal.
WelchResult welch_t_test(double mean_a, double var_a, std::size_t n_a, double mean_b, double var_b,
                         std::size_t n_b);
WelchResult welch_t_test(const RunningStats& a, const RunningStats& b);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Ordinary least squares y = slope * x + intercept.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation with average ranks for ties.
double spearman_rho(std::span<const double> x, std::span<const double> y);

std::vector<double> average_ranks(std::span<const double> xs);

} // namespace rfsurf::stats

#endif
