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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "aes/cdn/genome.hpp"
#include "aes/cdn/population.hpp"
#include "aes/rng.hpp"
#include "aes/types.hpp"

namespace aes::cdn {

struct LayerNode {
  LayerType type = LayerType::Dense;
  std::array<double, kHyperparams> hyper{};
};

/// Flattened layer DAG; edges index into `nodes`.
struct NetworkGraph {
  std::vector<LayerNode> nodes;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

struct AssembledNetwork {
  IndividualId id = 0;
  NetworkGraph graph;
  /// Provenance: the blueprint and, per blueprint node, the module that filled it.
  BlueprintGenome blueprint;
  std::map<Innovation, GenomeId> slotModules;
  /// Copies of the distinct modules used, so evicted genomes can be merged back.
  std::vector<ModuleGenome> modules;

  std::size_t nodeCount() const { return graph.nodes.size(); }
};

/// Replaces every blueprint node with a copy of its module's layer graph.
/// A blueprint edge a->b wires each output layer of a's module to each
/// input layer of b's module. Only enabled edges take part.
NetworkGraph flatten(const BlueprintGenome& blueprint,
                     const std::map<Innovation, const ModuleGenome*>& slotModules);

/// Repoints slots whose species no longer exists to a uniformly random
/// existing species. Returns the number of slots changed.
std::size_t repairPointers(Population<BlueprintGenome>& blueprints,
                           std::span<const SpeciesId> moduleSpecies, Rng& rng);

/// Samples a blueprint uniformly, then one module uniformly per distinct
/// species it points to; all slots naming that species share the module.
/// Dangling pointers are repaired first. Ids start at `firstId`.
std::vector<AssembledNetwork> assembleNetworks(Population<BlueprintGenome>& blueprints,
                                               const Population<ModuleGenome>& modules,
                                               std::size_t count, IndividualId firstId, Rng& rng);

struct Attribution {
  std::map<GenomeId, double> blueprints;
  std::map<GenomeId, double> modules;
};

using EvaluatedNetwork = EvaluatedIndividual<AssembledNetwork, double>;

/// Mean fitness over the returned networks each blueprint and module took
/// part in. A module filling several slots of one network counts once.
Attribution attributeFitness(std::span<const EvaluatedNetwork> returned);

}  // namespace aes::cdn
