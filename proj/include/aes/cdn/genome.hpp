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

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aes/rng.hpp"

namespace aes::cdn {

using GenomeId = std::uint64_t;
using Innovation = std::uint64_t;
using SpeciesId = std::uint64_t;

enum class LayerType : std::uint8_t { Dense, Lstm, Pooling, Concat };
inline constexpr std::size_t kLayerTypes = 4;
inline constexpr std::size_t kHyperparams = 2;

const char* layerName(LayerType t);

struct EdgeGene {
  Innovation innovation = 0;
  Innovation src = 0;  ///< node innovation ids
  Innovation dst = 0;
  bool enabled = true;
  bool operator==(const EdgeGene&) const = default;
};

/// Module node: one layer with hyperparameters in [0, 1].
struct LayerGene {
  Innovation innovation = 0;
  LayerType type = LayerType::Dense;
  std::array<double, kHyperparams> hyper{0.5, 0.5};
  bool operator==(const LayerGene&) const = default;
};

/// Blueprint node: a slot filled by a module from the pointed species.
struct SlotGene {
  Innovation innovation = 0;
  SpeciesId moduleSpecies = 0;
  bool operator==(const SlotGene&) const = default;
};

template <class Node>
struct GraphGenome {
  GenomeId id = 0;
  std::vector<Node> nodes;
  std::vector<EdgeGene> edges;
  bool operator==(const GraphGenome&) const = default;

  std::size_t geneCount() const { return nodes.size() + edges.size(); }
};

using ModuleGenome = GraphGenome<LayerGene>;
using BlueprintGenome = GraphGenome<SlotGene>;

/// Hands out innovation ids so that the same structural event in different
/// genomes of one population receives the same id.
class InnovationTracker {
 public:
  Innovation fresh() { return next_++; }
  Innovation edge(Innovation src, Innovation dst);
  /// Node created by splitting the given edge.
  Innovation split(Innovation edgeInnovation);
  /// Node appended after `src` in a genome without edges.
  Innovation extend(Innovation src);

 private:
  Innovation next_ = 0;
  std::map<std::pair<Innovation, Innovation>, Innovation> edges_;
  std::map<Innovation, Innovation> splits_;
  std::map<Innovation, Innovation> extensions_;
};

/// Node indices in a topological order over all edges (enabled or not), or
/// nullopt when the graph has a cycle or an edge names an unknown node.
template <class Node>
std::optional<std::vector<std::size_t>> topologicalOrder(const GraphGenome<Node>& g) {
  std::map<Innovation, std::size_t> index;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) index[g.nodes[i].innovation] = i;
  std::vector<std::vector<std::size_t>> out(g.nodes.size());
  std::vector<std::size_t> indeg(g.nodes.size(), 0);
  for (const auto& e : g.edges) {
    auto s = index.find(e.src);
    auto d = index.find(e.dst);
    if (s == index.end() || d == index.end()) return std::nullopt;
    out[s->second].push_back(d->second);
    ++indeg[d->second];
  }
  std::vector<std::size_t> order;
  order.reserve(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (indeg[i] == 0) order.push_back(i);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t v : out[order[head]]) {
      if (--indeg[v] == 0) order.push_back(v);
    }
  }
  if (order.size() != g.nodes.size()) return std::nullopt;
  return order;
}

/// Non-empty, unique innovations, every edge resolvable, acyclic.
template <class Node>
bool wellFormed(const GraphGenome<Node>& g) {
  if (g.nodes.empty()) return false;
  std::map<Innovation, int> seen;
  for (const auto& n : g.nodes) {
    if (seen[n.innovation]++) return false;
  }
  std::map<Innovation, int> edgeSeen;
  for (const auto& e : g.edges) {
    if (edgeSeen[e.innovation]++) return false;
    if (e.src == e.dst) return false;
  }
  return topologicalOrder(g).has_value();
}

template <class Node>
bool hasNode(const GraphGenome<Node>& g, Innovation innovation) {
  for (const auto& n : g.nodes) {
    if (n.innovation == innovation) return true;
  }
  return false;
}

template <class Node>
Node* findNode(GraphGenome<Node>& g, Innovation innovation) {
  for (auto& n : g.nodes) {
    if (n.innovation == innovation) return &n;
  }
  return nullptr;
}

template <class Node>
const Node* findNode(const GraphGenome<Node>& g, Innovation innovation) {
  for (const auto& n : g.nodes) {
    if (n.innovation == innovation) return &n;
  }
  return nullptr;
}

/// NEAT add-node: splits a random enabled edge a->b into a->n->b and
/// disables the original. A genome with no enabled edge grows a new node
/// hanging off a random existing one. `node` supplies the new node's
/// attributes; its innovation field is overwritten.
template <class Node>
void addNodeMutation(GraphGenome<Node>& g, InnovationTracker& tracker, Rng& rng, Node node) {
  std::vector<std::size_t> enabled;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (g.edges[i].enabled) enabled.push_back(i);
  }
  if (enabled.empty()) {
    const Innovation src = g.nodes[rng.below(g.nodes.size())].innovation;
    Innovation n = tracker.extend(src);
    if (hasNode(g, n)) n = tracker.fresh();
    node.innovation = n;
    g.nodes.push_back(node);
    g.edges.push_back(EdgeGene{tracker.edge(src, n), src, n, true});
    return;
  }
  EdgeGene& e = g.edges[enabled[rng.below(enabled.size())]];
  e.enabled = false;
  const Innovation a = e.src;
  const Innovation b = e.dst;
  Innovation n = tracker.split(e.innovation);
  if (hasNode(g, n)) n = tracker.fresh();
  node.innovation = n;
  g.nodes.push_back(node);
  g.edges.push_back(EdgeGene{tracker.edge(a, n), a, n, true});
  g.edges.push_back(EdgeGene{tracker.edge(n, b), n, b, true});
}

/// NEAT add-edge: connects u->v for some u preceding v in a topological
/// order, so the graph stays acyclic. A matching disabled edge is
/// re-enabled instead of duplicated. Returns false when the graph is
/// already complete.
template <class Node>
bool addEdgeMutation(GraphGenome<Node>& g, InnovationTracker& tracker, Rng& rng) {
  auto order = topologicalOrder(g);
  if (!order) return false;
  std::map<std::pair<Innovation, Innovation>, std::size_t> existing;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    existing[{g.edges[i].src, g.edges[i].dst}] = i;
  }
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < order->size(); ++i) {
    for (std::size_t j = i + 1; j < order->size(); ++j) {
      const Innovation u = g.nodes[(*order)[i]].innovation;
      const Innovation v = g.nodes[(*order)[j]].innovation;
      auto it = existing.find({u, v});
      if (it == existing.end() || !g.edges[it->second].enabled) candidates.emplace_back(i, j);
    }
  }
  if (candidates.empty()) return false;
  const auto [i, j] = candidates[rng.below(candidates.size())];
  const Innovation u = g.nodes[(*order)[i]].innovation;
  const Innovation v = g.nodes[(*order)[j]].innovation;
  if (auto it = existing.find({u, v}); it != existing.end()) {
    g.edges[it->second].enabled = true;
  } else {
    g.edges.push_back(EdgeGene{tracker.edge(u, v), u, v, true});
  }
  return true;
}

/// NEAT crossover aligned by innovation id. Structure (nodes, edges,
/// disjoint and excess genes) comes from `fitter`; each matching gene takes
/// its attributes from either parent with equal probability.
template <class Node>
GraphGenome<Node> crossoverGenomes(const GraphGenome<Node>& fitter, const GraphGenome<Node>& other,
                                   Rng& rng) {
  GraphGenome<Node> child = fitter;
  for (auto& n : child.nodes) {
    if (const Node* m = findNode(other, n.innovation); m && rng.chance(0.5)) n = *m;
  }
  std::map<Innovation, const EdgeGene*> otherEdges;
  for (const auto& e : other.edges) otherEdges[e.innovation] = &e;
  for (auto& e : child.edges) {
    auto it = otherEdges.find(e.innovation);
    if (it != otherEdges.end() && rng.chance(0.5)) e.enabled = it->second->enabled;
  }
  return child;
}

/// Attribute difference in [0, 1] between two nodes sharing an innovation.
double attributeDistance(const LayerGene& a, const LayerGene& b);
double attributeDistance(const SlotGene& a, const SlotGene& b);

struct CompatibilityCoefficients {
  double c1 = 1.0;  ///< disjoint + excess genes
  double c3 = 0.4;  ///< mean attribute difference of matching nodes
};

/// c1 * (disjoint + excess) / maxGenes + c3 * mean attribute difference.
template <class Node>
double compatibilityDistance(const GraphGenome<Node>& a, const GraphGenome<Node>& b,
                             const CompatibilityCoefficients& c = {}) {
  std::map<Innovation, const Node*> bNodes;
  for (const auto& n : b.nodes) bNodes[n.innovation] = &n;
  std::size_t matchingNodes = 0;
  double attr = 0.0;
  for (const auto& n : a.nodes) {
    if (auto it = bNodes.find(n.innovation); it != bNodes.end()) {
      ++matchingNodes;
      attr += attributeDistance(n, *it->second);
    }
  }
  std::map<Innovation, int> bEdges;
  for (const auto& e : b.edges) bEdges[e.innovation] = 1;
  std::size_t matchingEdges = 0;
  for (const auto& e : a.edges) matchingEdges += bEdges.count(e.innovation);
  const std::size_t mismatched =
      (a.geneCount() - matchingNodes - matchingEdges) + (b.geneCount() - matchingNodes - matchingEdges);
  const double maxGenes = static_cast<double>(std::max<std::size_t>({a.geneCount(), b.geneCount(), 1}));
  const double meanAttr = matchingNodes ? attr / static_cast<double>(matchingNodes) : 0.0;
  return c.c1 * static_cast<double>(mismatched) / maxGenes + c.c3 * meanAttr;
}

struct NeatOptions {
  double crossoverRate = 0.5;
  double addNodeRate = 0.3;
  double addEdgeRate = 0.2;
  double perturbRate = 0.6;
  /// Per-node chance of perturbation inside a perturb mutation.
  double perturbNodeRate = 0.5;
  double hyperSigma = 0.15;
  double layerTypeChangeRate = 0.1;
};

LayerGene randomLayer(Rng& rng);
/// A chain of `nodes` random layers with fresh innovations.
ModuleGenome randomModule(GenomeId id, std::size_t nodes, InnovationTracker& tracker, Rng& rng);
/// A chain of `nodes` slots pointing at species drawn from `species`.
BlueprintGenome randomBlueprint(GenomeId id, std::size_t nodes, std::span<const SpeciesId> species,
                                InnovationTracker& tracker, Rng& rng);

void perturbAttributes(ModuleGenome& g, const NeatOptions& opts, Rng& rng);
void perturbAttributes(BlueprintGenome& g, std::span<const SpeciesId> species, Rng& rng);

std::string formatGenome(const ModuleGenome& g);
std::string formatGenome(const BlueprintGenome& g);

}  // namespace aes::cdn
