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
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "aes/cdn/genome.hpp"
#include "aes/errors.hpp"
#include "aes/rng.hpp"

namespace aes::cdn {

template <class G>
struct Member {
  G genome;
  double fitness = 0.0;
  bool evaluated = false;
  GenomeId id() const { return genome.id; }
  bool operator==(const Member&) const = default;
};

template <class G>
struct Species {
  SpeciesId id = 0;
  G representative;
  std::vector<GenomeId> members;
};

struct SpeciationOptions {
  CompatibilityCoefficients coefficients{};
  /// Species count the adaptive threshold steers toward.
  std::size_t targetSpecies = 1;
  bool adaptive = true;
  double minThreshold = 0.01;
};

template <class G>
struct Population {
  std::vector<Member<G>> members;
  std::vector<Species<G>> species;
  SpeciesId nextSpeciesId = 0;
  double threshold = 1.0;

  std::size_t size() const { return members.size(); }

  Member<G>* find(GenomeId id) {
    for (auto& m : members) {
      if (m.id() == id) return &m;
    }
    return nullptr;
  }
  const Member<G>* find(GenomeId id) const {
    for (const auto& m : members) {
      if (m.id() == id) return &m;
    }
    return nullptr;
  }

  const Species<G>* findSpecies(SpeciesId id) const {
    for (const auto& s : species) {
      if (s.id == id) return &s;
    }
    return nullptr;
  }

  std::vector<SpeciesId> speciesIds() const {
    std::vector<SpeciesId> ids;
    ids.reserve(species.size());
    for (const auto& s : species) ids.push_back(s.id);
    return ids;
  }
};

/// Every member in exactly one species, no empty species, no stale ids.
template <class G>
bool isPartition(const Population<G>& pop) {
  std::map<GenomeId, int> count;
  for (const auto& s : pop.species) {
    if (s.members.empty()) return false;
    for (GenomeId id : s.members) ++count[id];
  }
  if (count.size() != pop.members.size()) return false;
  for (const auto& m : pop.members) {
    auto it = count.find(m.id());
    if (it == count.end() || it->second != 1) return false;
  }
  return true;
}

/// Initial division into `count` species by dealing members round-robin.
template <class G>
void divideIntoSpecies(Population<G>& pop, std::size_t count) {
  if (count == 0) throw ConfigError("initial species count must be positive");
  count = std::min(count, pop.members.size());
  pop.species.clear();
  for (std::size_t s = 0; s < count; ++s) {
    Species<G> sp;
    sp.id = pop.nextSpeciesId++;
    sp.representative = pop.members[s].genome;
    pop.species.push_back(std::move(sp));
  }
  for (std::size_t i = 0; i < pop.members.size(); ++i) {
    pop.species[i % count].members.push_back(pop.members[i].id());
  }
}

namespace detail {

/// One assignment pass at a given threshold. Species founded here get ids
/// from `nextId`; the caller commits or discards the result.
template <class G>
std::vector<Species<G>> assignSpecies(const Population<G>& pop, double threshold,
                                      const CompatibilityCoefficients& c, SpeciesId& nextId) {
  std::vector<Species<G>> species = pop.species;
  for (auto& s : species) s.members.clear();
  for (const auto& m : pop.members) {
    Species<G>* home = nullptr;
    for (auto& s : species) {
      if (compatibilityDistance(m.genome, s.representative, c) <= threshold) {
        home = &s;
        break;
      }
    }
    if (!home) {
      Species<G> sp;
      sp.id = nextId++;
      sp.representative = m.genome;
      species.push_back(std::move(sp));
      home = &species.back();
    }
    home->members.push_back(m.id());
  }
  std::erase_if(species, [](const Species<G>& s) { return s.members.empty(); });
  return species;
}

}  // namespace detail

/// Re-speciation against the current representatives: each member joins the
/// first species within the threshold, otherwise founds a new one. Empty
/// species are removed and each survivor's representative becomes its first
/// member.
///
/// With `adaptive`, when the current threshold misses the target species
/// count, a bisection over the threshold picks the value whose partition
/// comes closest to the target; the threshold carries over to the next call.
template <class G>
void speciate(Population<G>& pop, const SpeciationOptions& opts) {
  SpeciesId nextId = pop.nextSpeciesId;
  auto species = detail::assignSpecies(pop, pop.threshold, opts.coefficients, nextId);
  SpeciesId committedNext = nextId;

  const auto miss = [&](std::size_t count) {
    return count > opts.targetSpecies ? count - opts.targetSpecies : opts.targetSpecies - count;
  };
  if (opts.adaptive && std::isfinite(pop.threshold) && species.size() != opts.targetSpecies) {
    double lo = opts.minThreshold;
    double hi = std::max(pop.threshold, opts.minThreshold);
    // Upper bracket: at most every gene mismatched plus full attribute distance.
    hi = std::max(hi, 2.0 * opts.coefficients.c1 + opts.coefficients.c3);
    double bestThreshold = pop.threshold;
    for (int iter = 0; iter < 24; ++iter) {
      const double mid = 0.5 * (lo + hi);
      SpeciesId trialNext = pop.nextSpeciesId;
      auto trial = detail::assignSpecies(pop, mid, opts.coefficients, trialNext);
      const bool better = miss(trial.size()) < miss(species.size());
      if (better) {
        species = std::move(trial);
        committedNext = trialNext;
        bestThreshold = mid;
        if (species.size() == opts.targetSpecies) break;
      }
      if (species.size() == opts.targetSpecies) break;
      const std::size_t count = better ? species.size() : trial.size();
      if (count > opts.targetSpecies) lo = mid; else hi = mid;
    }
    pop.threshold = bestThreshold;
  }
  pop.species = std::move(species);
  pop.nextSpeciesId = committedNext;
  for (auto& s : pop.species) s.representative = pop.find(s.members.front())->genome;
}

/// Largest-remainder apportionment of `total` proportional to `weights`.
/// All-zero (or empty-sum) weights split uniformly. Remainder ties go to the
/// earlier index.
std::vector<std::size_t> allocateOffspring(std::span<const double> weights, std::size_t total);

/// Members per species kept as elite: ceil(percent * size), at least one.
std::size_t eliteCount(std::size_t speciesSize, double elitePercent);

struct EvolveOptions {
  std::size_t populationSize = 20;
  double elitePercent = 0.5;
  SpeciationOptions speciation{};
  NeatOptions neat{};
};

/// Variation state shared across one population's evolution steps.
struct BreedContext {
  Rng& rng;
  InnovationTracker& tracker;
  GenomeId& nextGenomeId;
  /// Existing module species; blueprint nodes point into this set.
  std::span<const SpeciesId> moduleSpecies;
};

void mutateGenome(ModuleGenome& g, const NeatOptions& opts, BreedContext& ctx);
void mutateGenome(BlueprintGenome& g, const NeatOptions& opts, BreedContext& ctx);

namespace detail {

template <class G>
bool ranked(const Member<G>& a, const Member<G>& b) {
  if (a.fitness != b.fitness) return a.fitness > b.fitness;
  return a.id() < b.id();
}

}  // namespace detail

/// One NEAT generation on a population: per-species elitism, offspring
/// allocation proportional to species mean fitness, within-species breeding
/// and re-speciation. Leaves exactly `populationSize` members.
template <class G>
void evolvePopulation(Population<G>& pop, const EvolveOptions& opts, BreedContext& ctx) {
  if (opts.populationSize == 0) throw ConfigError("population size must be positive");
  if (pop.species.empty()) throw ConfigError("cannot evolve a population without species");

  std::map<GenomeId, const Member<G>*> byId;
  for (const auto& m : pop.members) byId[m.id()] = &m;

  struct Group {
    std::vector<Member<G>> elites;
    double mean = 0.0;
  };
  std::vector<Group> groups;
  groups.reserve(pop.species.size());
  std::size_t eliteTotal = 0;
  for (const auto& s : pop.species) {
    std::vector<Member<G>> ms;
    for (GenomeId id : s.members) ms.push_back(*byId.at(id));
    std::sort(ms.begin(), ms.end(), detail::ranked<G>);
    Group grp;
    for (const auto& m : ms) grp.mean += m.fitness;
    grp.mean = std::max(0.0, grp.mean / static_cast<double>(ms.size()));
    ms.resize(eliteCount(ms.size(), opts.elitePercent));
    eliteTotal += ms.size();
    grp.elites = std::move(ms);
    groups.push_back(std::move(grp));
  }

  // Re-merged genomes can push the elite total past the cap; shed the
  // globally weakest elites from species that keep at least one.
  while (eliteTotal > opts.populationSize) {
    Group* worst = nullptr;
    for (auto& grp : groups) {
      if (grp.elites.size() < 2) continue;
      if (!worst || detail::ranked(worst->elites.back(), grp.elites.back())) worst = &grp;
    }
    if (!worst) break;
    worst->elites.pop_back();
    --eliteTotal;
  }

  std::vector<double> means;
  for (const auto& grp : groups) means.push_back(grp.mean);
  const std::size_t offspringTotal =
      opts.populationSize > eliteTotal ? opts.populationSize - eliteTotal : 0;
  const auto quotas = allocateOffspring(means, offspringTotal);

  std::vector<Member<G>> next;
  next.reserve(opts.populationSize);
  for (auto& grp : groups) {
    for (auto& e : grp.elites) next.push_back(e);
  }
  for (std::size_t s = 0; s < groups.size(); ++s) {
    const auto& elites = groups[s].elites;
    auto tournament = [&]() -> const Member<G>& {
      const std::size_t i = ctx.rng.below(elites.size());
      const std::size_t j = ctx.rng.below(elites.size());
      return elites[std::min(i, j)];
    };
    for (std::size_t q = 0; q < quotas[s]; ++q) {
      const Member<G>& p1 = tournament();
      G child;
      if (elites.size() > 1 && ctx.rng.chance(opts.neat.crossoverRate)) {
        const Member<G>& p2 = tournament();
        child = detail::ranked(p1, p2) || &p1 == &p2 ? crossoverGenomes(p1.genome, p2.genome, ctx.rng)
                                                     : crossoverGenomes(p2.genome, p1.genome, ctx.rng);
      } else {
        child = p1.genome;
      }
      mutateGenome(child, opts.neat, ctx);
      child.id = ctx.nextGenomeId++;
      next.push_back(Member<G>{std::move(child), 0.0, false});
    }
  }
  pop.members = std::move(next);
  speciate(pop, opts.speciation);
}

/// Species whose representative is closest to `g`.
template <class G>
Species<G>* nearestSpecies(Population<G>& pop, const G& g, const CompatibilityCoefficients& c) {
  Species<G>* best = nullptr;
  double bestDistance = std::numeric_limits<double>::infinity();
  for (auto& s : pop.species) {
    const double d = compatibilityDistance(g, s.representative, c);
    if (!best || d < bestDistance) {
      best = &s;
      bestDistance = d;
    }
  }
  return best;
}

/// Folds returned fitness back into a population. Members named in `attributed` take
/// the new fitness. Returned genomes no longer present are re-inserted
/// while the population is below `capacity` (0 = unbounded), joining the
/// nearest species; otherwise they are dropped.
template <class G>
void mergePopulation(Population<G>& pop, const std::map<GenomeId, double>& attributed,
                     std::span<const G> returnedGenomes, std::size_t capacity,
                     const CompatibilityCoefficients& c = {}) {
  std::map<GenomeId, const G*> genomes;
  for (const auto& g : returnedGenomes) genomes.emplace(g.id, &g);
  for (const auto& [id, fitness] : attributed) {
    if (Member<G>* m = pop.find(id)) {
      m->fitness = fitness;
      m->evaluated = true;
      continue;
    }
    if (capacity != 0 && pop.members.size() >= capacity) continue;
    auto it = genomes.find(id);
    if (it == genomes.end()) continue;
    pop.members.push_back(Member<G>{*it->second, fitness, true});
    if (Species<G>* s = nearestSpecies(pop, *it->second, c)) {
      s->members.push_back(id);
    } else {
      Species<G> sp;
      sp.id = pop.nextSpeciesId++;
      sp.representative = *it->second;
      sp.members.push_back(id);
      pop.species.push_back(std::move(sp));
    }
  }
}

}  // namespace aes::cdn
