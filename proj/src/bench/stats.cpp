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

#include "aes/bench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aes::bench {

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<double> rankSumCounts(std::size_t n1, std::size_t n2) {
  // f[i][j][u]: arrangements of i and j items with statistic u. Rolled over i.
  const std::size_t maxU = n1 * n2;
  std::vector<std::vector<double>> prev(n2 + 1, std::vector<double>(maxU + 1, 0.0));
  for (std::size_t j = 0; j <= n2; ++j) prev[j][0] = 1.0;
  for (std::size_t i = 1; i <= n1; ++i) {
    std::vector<std::vector<double>> cur(n2 + 1, std::vector<double>(maxU + 1, 0.0));
    cur[0][0] = 1.0;
    for (std::size_t j = 1; j <= n2; ++j) {
      for (std::size_t u = 0; u <= i * j; ++u) {
        // Largest element from sample one beats all j of sample two.
        double c = u >= j ? prev[j][u - j] : 0.0;
        c += cur[j - 1][u];
        cur[j][u] = c;
      }
    }
    prev = std::move(cur);
  }
  return prev[n2];
}

RankSumResult mannWhitney(std::span<const double> a, std::span<const double> b) {
  RankSumResult r;
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  if (n1 == 0 || n2 == 0) return r;

  struct Item {
    double v;
    bool first;
  };
  std::vector<Item> all;
  all.reserve(n1 + n2);
  for (double x : a) all.push_back({x, true});
  for (double x : b) all.push_back({x, false});
  std::sort(all.begin(), all.end(), [](const Item& x, const Item& y) { return x.v < y.v; });

  double rankSum = 0.0;
  double tieTerm = 0.0;
  bool ties = false;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].v == all[i].v) ++j;
    const double avgRank = 0.5 * static_cast<double>(i + 1 + j);
    const double t = static_cast<double>(j - i);
    if (t > 1) {
      ties = true;
      tieTerm += t * t * t - t;
    }
    for (std::size_t k = i; k < j; ++k) {
      if (all[k].first) rankSum += avgRank;
    }
    i = j;
  }
  const double dn1 = static_cast<double>(n1);
  const double dn2 = static_cast<double>(n2);
  r.U = rankSum - dn1 * (dn1 + 1.0) / 2.0;

  if (!ties && n1 * n2 <= 10000) {
    const auto counts = rankSumCounts(n1, n2);
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const auto u = static_cast<std::size_t>(std::llround(r.U));
    const std::size_t lowU = std::min(u, n1 * n2 - u);
    double tail = 0.0;
    for (std::size_t k = 0; k <= lowU; ++k) tail += counts[k];
    r.pValue = std::min(1.0, 2.0 * tail / total);
    r.exact = true;
    return r;
  }

  const double n = dn1 + dn2;
  const double mu = dn1 * dn2 / 2.0;
  const double var = dn1 * dn2 / 12.0 * ((n + 1.0) - tieTerm / (n * (n - 1.0)));
  if (!(var > 0.0)) {
    r.pValue = 1.0;
    return r;
  }
  const double dev = std::max(0.0, std::abs(r.U - mu) - 0.5);
  const double z = dev / std::sqrt(var);
  r.pValue = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return r;
}

double ksDistanceToUniform(std::vector<double> s) {
  if (s.empty()) return 0.0;
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = std::clamp(s[i], 0.0, 1.0);
    d = std::max(d, static_cast<double>(i + 1) / n - x);
    d = std::max(d, x - static_cast<double>(i) / n);
  }
  return d;
}

}  // namespace aes::bench
