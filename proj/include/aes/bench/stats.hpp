// Copyright 2026 The AES Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aes::bench {

/// Middle value, or the mean of the two middle values. Empty input is 0.
double median(std::vector<double> values);

double mean(std::span<const double> values);

struct RankSumResult {
  double U = 0.0;  ///< Mann-Whitney U of the first sample
  double pValue = 1.0;
  bool exact = false;
};

/// Two-sided Mann-Whitney rank-sum test. Without ties and with
/// n1 * n2 <= 10000 the p-value comes from the exact null distribution;
/// otherwise from the normal approximation with tie and continuity
/// corrections.
RankSumResult mannWhitney(std::span<const double> a, std::span<const double> b);

/// Number of (n1, n2) arrangements with U = u, for u in [0, n1 * n2].
std::vector<double> rankSumCounts(std::size_t n1, std::size_t n2);

/// Kolmogorov-Smirnov distance between the empirical CDF of `samples`
/// and the uniform CDF on [0, 1].
double ksDistanceToUniform(std::vector<double> samples);

}  // namespace aes::bench
