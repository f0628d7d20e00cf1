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

#include "aes/cdn/population.hpp"

#include <numeric>

namespace aes::cdn {

std::vector<std::size_t> allocateOffspring(std::span<const double> weights, std::size_t total) {
  std::vector<std::size_t> out(weights.size(), 0);
  if (weights.empty() || total == 0) return out;
  double sum = 0.0;
  for (double w : weights) sum += std::max(0.0, w);
  std::vector<double> exact(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    exact[i] = sum > 0.0 ? static_cast<double>(total) * std::max(0.0, weights[i]) / sum
                         : static_cast<double>(total) / static_cast<double>(weights.size());
  }
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    out[i] = static_cast<std::size_t>(std::floor(exact[i]));
    assigned += out[i];
  }
  std::vector<std::size_t> order(exact.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return exact[a] - std::floor(exact[a]) > exact[b] - std::floor(exact[b]);
  });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++out[order[k % order.size()]];
  return out;
}

std::size_t eliteCount(std::size_t speciesSize, double elitePercent) {
  if (speciesSize == 0) return 0;
  const auto n = static_cast<std::size_t>(std::ceil(elitePercent * static_cast<double>(speciesSize) - 1e-9));
  return std::clamp<std::size_t>(n, 1, speciesSize);
}

void mutateGenome(ModuleGenome& g, const NeatOptions& opts, BreedContext& ctx) {
  if (ctx.rng.chance(opts.addNodeRate)) addNodeMutation(g, ctx.tracker, ctx.rng, randomLayer(ctx.rng));
  if (ctx.rng.chance(opts.addEdgeRate)) addEdgeMutation(g, ctx.tracker, ctx.rng);
  if (ctx.rng.chance(opts.perturbRate)) perturbAttributes(g, opts, ctx.rng);
}

void mutateGenome(BlueprintGenome& g, const NeatOptions& opts, BreedContext& ctx) {
  if (ctx.rng.chance(opts.addNodeRate)) {
    SlotGene slot;
    if (!ctx.moduleSpecies.empty()) {
      slot.moduleSpecies = ctx.moduleSpecies[ctx.rng.below(ctx.moduleSpecies.size())];
    }
    addNodeMutation(g, ctx.tracker, ctx.rng, slot);
  }
  if (ctx.rng.chance(opts.addEdgeRate)) addEdgeMutation(g, ctx.tracker, ctx.rng);
  if (ctx.rng.chance(opts.perturbRate)) perturbAttributes(g, ctx.moduleSpecies, ctx.rng);
}

}  // namespace aes::cdn
