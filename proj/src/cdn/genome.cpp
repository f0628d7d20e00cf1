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

#include "aes/cdn/genome.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aes::cdn {

const char* layerName(LayerType t) {
  switch (t) {
    case LayerType::Dense: return "dense";
    case LayerType::Lstm: return "lstm";
    case LayerType::Pooling: return "pooling";
    case LayerType::Concat: return "concat";
  }
  return "?";
}

Innovation InnovationTracker::edge(Innovation src, Innovation dst) {
  auto [it, inserted] = edges_.try_emplace({src, dst}, next_);
  if (inserted) ++next_;
  return it->second;
}

Innovation InnovationTracker::split(Innovation edgeInnovation) {
  auto [it, inserted] = splits_.try_emplace(edgeInnovation, next_);
  if (inserted) ++next_;
  return it->second;
}

Innovation InnovationTracker::extend(Innovation src) {
  auto [it, inserted] = extensions_.try_emplace(src, next_);
  if (inserted) ++next_;
  return it->second;
}

double attributeDistance(const LayerGene& a, const LayerGene& b) {
  double h = 0.0;
  for (std::size_t k = 0; k < kHyperparams; ++k) h += std::abs(a.hyper[k] - b.hyper[k]);
  h /= static_cast<double>(kHyperparams);
  return 0.5 * (h + (a.type != b.type ? 1.0 : 0.0));
}

double attributeDistance(const SlotGene& a, const SlotGene& b) {
  return a.moduleSpecies != b.moduleSpecies ? 1.0 : 0.0;
}

LayerGene randomLayer(Rng& rng) {
  LayerGene n;
  n.type = static_cast<LayerType>(rng.below(kLayerTypes));
  for (auto& h : n.hyper) h = rng.uniform();
  return n;
}

namespace {

template <class Node, class Make>
GraphGenome<Node> chain(GenomeId id, std::size_t count, InnovationTracker& tracker, Make make) {
  GraphGenome<Node> g;
  g.id = id;
  count = std::max<std::size_t>(count, 1);
  for (std::size_t i = 0; i < count; ++i) {
    Node n = make();
    n.innovation = tracker.fresh();
    if (i > 0) {
      const Innovation prev = g.nodes.back().innovation;
      g.edges.push_back(EdgeGene{tracker.edge(prev, n.innovation), prev, n.innovation, true});
    }
    g.nodes.push_back(n);
  }
  return g;
}

}  // namespace

ModuleGenome randomModule(GenomeId id, std::size_t nodes, InnovationTracker& tracker, Rng& rng) {
  return chain<LayerGene>(id, nodes, tracker, [&] { return randomLayer(rng); });
}

BlueprintGenome randomBlueprint(GenomeId id, std::size_t nodes, std::span<const SpeciesId> species,
                                InnovationTracker& tracker, Rng& rng) {
  return chain<SlotGene>(id, nodes, tracker, [&] {
    SlotGene s;
    s.moduleSpecies = species.empty() ? 0 : species[rng.below(species.size())];
    return s;
  });
}

void perturbAttributes(ModuleGenome& g, const NeatOptions& opts, Rng& rng) {
  for (auto& n : g.nodes) {
    if (!rng.chance(opts.perturbNodeRate)) continue;
    for (auto& h : n.hyper) h = std::clamp(h + rng.normal(0.0, opts.hyperSigma), 0.0, 1.0);
    if (rng.chance(opts.layerTypeChangeRate)) n.type = static_cast<LayerType>(rng.below(kLayerTypes));
  }
}

void perturbAttributes(BlueprintGenome& g, std::span<const SpeciesId> species, Rng& rng) {
  if (species.empty() || g.nodes.empty()) return;
  g.nodes[rng.below(g.nodes.size())].moduleSpecies = species[rng.below(species.size())];
}

namespace {

template <class Node, class Fmt>
std::string formatGraph(const GraphGenome<Node>& g, const char* kind, Fmt fmt) {
  std::ostringstream os;
  os << kind << ' ' << g.id << " nodes=[";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (i) os << ' ';
    os << g.nodes[i].innovation << ':';
    fmt(os, g.nodes[i]);
  }
  os << "] edges=[";
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (i) os << ' ';
    const auto& e = g.edges[i];
    os << e.innovation << ':' << e.src << "->" << e.dst << (e.enabled ? "" : "(off)");
  }
  os << ']';
  return os.str();
}

}  // namespace

std::string formatGenome(const ModuleGenome& g) {
  return formatGraph(g, "module", [](std::ostream& os, const LayerGene& n) {
    os << layerName(n.type) << '(' << n.hyper[0] << ',' << n.hyper[1] << ')';
  });
}

std::string formatGenome(const BlueprintGenome& g) {
  return formatGraph(g, "blueprint",
                     [](std::ostream& os, const SlotGene& n) { os << 's' << n.moduleSpecies; });
}

}  // namespace aes::cdn
