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

#include "aes/cdn/assembly.hpp"

#include <set>

#include "aes/errors.hpp"

namespace aes::cdn {

namespace {

struct Ports {
  std::vector<std::uint32_t> inputs;
  std::vector<std::uint32_t> outputs;
};

}  // namespace

NetworkGraph flatten(const BlueprintGenome& blueprint,
                     const std::map<Innovation, const ModuleGenome*>& slotModules) {
  NetworkGraph net;
  std::map<Innovation, Ports> ports;
  for (const auto& slot : blueprint.nodes) {
    auto it = slotModules.find(slot.innovation);
    if (it == slotModules.end() || it->second == nullptr) {
      throw InputError("blueprint slot without a module");
    }
    const ModuleGenome& m = *it->second;
    const auto base = static_cast<std::uint32_t>(net.nodes.size());
    std::map<Innovation, std::uint32_t> local;
    for (const auto& n : m.nodes) {
      local[n.innovation] = static_cast<std::uint32_t>(net.nodes.size());
      net.nodes.push_back(LayerNode{n.type, n.hyper});
    }
    std::vector<int> indeg(m.nodes.size(), 0);
    std::vector<int> outdeg(m.nodes.size(), 0);
    for (const auto& e : m.edges) {
      if (!e.enabled) continue;
      const auto s = local.at(e.src);
      const auto d = local.at(e.dst);
      net.edges.emplace_back(s, d);
      ++outdeg[s - base];
      ++indeg[d - base];
    }
    Ports p;
    for (std::uint32_t i = 0; i < m.nodes.size(); ++i) {
      if (indeg[i] == 0) p.inputs.push_back(base + i);
      if (outdeg[i] == 0) p.outputs.push_back(base + i);
    }
    ports[slot.innovation] = std::move(p);
  }
  for (const auto& e : blueprint.edges) {
    if (!e.enabled) continue;
    const Ports& from = ports.at(e.src);
    const Ports& to = ports.at(e.dst);
    for (auto s : from.outputs) {
      for (auto d : to.inputs) net.edges.emplace_back(s, d);
    }
  }
  return net;
}

std::size_t repairPointers(Population<BlueprintGenome>& blueprints,
                           std::span<const SpeciesId> moduleSpecies, Rng& rng) {
  if (moduleSpecies.empty()) throw ConfigError("module population has no species");
  const std::set<SpeciesId> live(moduleSpecies.begin(), moduleSpecies.end());
  std::size_t repaired = 0;
  for (auto& m : blueprints.members) {
    for (auto& slot : m.genome.nodes) {
      if (!live.count(slot.moduleSpecies)) {
        slot.moduleSpecies = moduleSpecies[rng.below(moduleSpecies.size())];
        ++repaired;
      }
    }
  }
  return repaired;
}

std::vector<AssembledNetwork> assembleNetworks(Population<BlueprintGenome>& blueprints,
                                               const Population<ModuleGenome>& modules,
                                               std::size_t count, IndividualId firstId, Rng& rng) {
  if (blueprints.members.empty() || modules.members.empty()) {
    throw ConfigError("cannot assemble from an empty population");
  }
  repairPointers(blueprints, modules.speciesIds(), rng);
  std::vector<AssembledNetwork> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto& bp = blueprints.members[rng.below(blueprints.members.size())].genome;
    std::map<SpeciesId, const ModuleGenome*> chosen;
    std::map<Innovation, const ModuleGenome*> slots;
    AssembledNetwork net;
    net.id = firstId + k;
    net.blueprint = bp;
    for (const auto& slot : bp.nodes) {
      auto [it, fresh] = chosen.try_emplace(slot.moduleSpecies, nullptr);
      if (fresh) {
        const auto* species = modules.findSpecies(slot.moduleSpecies);
        const GenomeId mid = species->members[rng.below(species->members.size())];
        it->second = &modules.find(mid)->genome;
        net.modules.push_back(*it->second);
      }
      slots[slot.innovation] = it->second;
      net.slotModules[slot.innovation] = it->second->id;
    }
    net.graph = flatten(bp, slots);
    out.push_back(std::move(net));
  }
  return out;
}

Attribution attributeFitness(std::span<const EvaluatedNetwork> returned) {
  std::map<GenomeId, std::pair<double, std::size_t>> bp;
  std::map<GenomeId, std::pair<double, std::size_t>> mod;
  for (const auto& r : returned) {
    const auto& net = r.individual.genome;
    auto& b = bp[net.blueprint.id];
    b.first += r.fitness;
    ++b.second;
    for (const auto& m : net.modules) {
      auto& e = mod[m.id];
      e.first += r.fitness;
      ++e.second;
    }
  }
  Attribution a;
  for (const auto& [id, s] : bp) a.blueprints[id] = s.first / static_cast<double>(s.second);
  for (const auto& [id, s] : mod) a.modules[id] = s.first / static_cast<double>(s.second);
  return a;
}

}  // namespace aes::cdn
