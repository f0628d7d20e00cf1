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

#include "aes/cdn/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "aes/rng.hpp"

namespace aes::cdn {

std::optional<NetworkFeatures> extractFeatures(const NetworkGraph& g) {
  const std::size_t n = g.nodes.size();
  if (n == 0) return std::nullopt;
  std::vector<std::vector<std::uint32_t>> out(n);
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& [s, d] : g.edges) {
    if (s >= n || d >= n) return std::nullopt;
    out[s].push_back(d);
    ++indeg[d];
  }
  std::vector<std::size_t> order;
  std::vector<std::size_t> remaining = indeg;
  for (std::size_t i = 0; i < n; ++i) {
    if (remaining[i] == 0) order.push_back(i);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (auto v : out[order[head]]) {
      if (--remaining[v] == 0) order.push_back(v);
    }
  }
  if (order.size() != n) return std::nullopt;

  std::vector<double> longest(n, 1.0);
  for (auto u : order) {
    for (auto v : out[u]) longest[v] = std::max(longest[v], longest[u] + 1.0);
  }
  NetworkFeatures f;
  f.depth = *std::max_element(longest.begin(), longest.end());
  f.nodeCount = static_cast<double>(n);
  for (const auto& node : g.nodes) f.histogram[static_cast<std::size_t>(node.type)] += 1.0;
  for (auto& h : f.histogram) h /= static_cast<double>(n);
  f.meanFanIn = static_cast<double>(g.edges.size()) / static_cast<double>(n);
  return f;
}

TargetProfile TargetProfile::fromSeed(std::uint64_t seed, const ProfileRanges& r) {
  Rng rng(mixSeed(seed, 0x7a26e7ULL));
  TargetProfile p;
  p.target.depth = std::round(r.depthMin + (r.depthMax - r.depthMin) * rng.uniform());
  p.target.nodeCount = std::round(r.nodesMin + (r.nodesMax - r.nodesMin) * rng.uniform());
  double sum = 0.0;
  for (auto& h : p.target.histogram) {
    h = -std::log(1.0 - rng.uniform());
    sum += h;
  }
  for (auto& h : p.target.histogram) h /= sum;
  p.target.meanFanIn = r.fanInMin + (r.fanInMax - r.fanInMin) * rng.uniform();
  return p;
}

double profileSimilarity(const NetworkFeatures& f, const TargetProfile& p) {
  auto term = [](double dev, double scale) { return 1.0 / (1.0 + dev / scale); };
  double hist = 0.0;
  for (std::size_t k = 0; k < kLayerTypes; ++k) hist += std::abs(f.histogram[k] - p.target.histogram[k]);
  return 0.25 * (term(std::abs(f.depth - p.target.depth), p.depthScale) +
                 term(std::abs(f.nodeCount - p.target.nodeCount), p.nodeScale) +
                 term(hist, p.histogramScale) +
                 term(std::abs(f.meanFanIn - p.target.meanFanIn), p.fanInScale));
}

double SurrogateTrainer::noiseFree(const AssembledNetwork& net) const {
  const auto f = extractFeatures(net.graph);
  return f ? profileSimilarity(*f, profile_) : 0.0;
}

double SurrogateTrainer::evaluate(const AssembledNetwork& net) const {
  const auto f = extractFeatures(net.graph);
  if (!f) return 0.0;
  double score = profileSimilarity(*f, profile_);
  if (options_.noiseSigma > 0.0) {
    Rng rng(mixSeed(mixSeed(options_.runSeed, 0x6e6f697365ULL), net.id));
    score += rng.normal(0.0, options_.noiseSigma);
  }
  return std::clamp(score, 0.0, 1.0);
}

}  // namespace aes::cdn
