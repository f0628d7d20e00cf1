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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "aes/cdn/cdn_aes.hpp"
#include "aes/cdn/surrogate.hpp"
#include "aes/sim_cluster.hpp"

using namespace aes;
using namespace aes::cdn;

namespace {

Population<ModuleGenome> modulePopulation(std::size_t n, std::size_t species, InnovationTracker& tracker,
                                          Rng& rng, GenomeId& nextId) {
  Population<ModuleGenome> pop;
  for (std::size_t i = 0; i < n; ++i) {
    pop.members.push_back({randomModule(nextId++, 1 + rng.below(3), tracker, rng), 0.0, false});
  }
  divideIntoSpecies(pop, species);
  return pop;
}

Population<BlueprintGenome> blueprintPopulation(std::size_t n, std::span<const SpeciesId> species,
                                                InnovationTracker& tracker, Rng& rng, GenomeId& nextId) {
  Population<BlueprintGenome> pop;
  for (std::size_t i = 0; i < n; ++i) {
    pop.members.push_back({randomBlueprint(nextId++, 1 + rng.below(3), species, tracker, rng), 0.0, false});
  }
  divideIntoSpecies(pop, 1);
  return pop;
}

CdnConfig smallConfig(std::uint64_t seed) {
  CdnConfig c;
  c.K = 60;
  c.M = 20;
  c.targetGenerations = 15;
  c.seed = seed;
  return c;
}

EvaluatedNetwork evaluatedNet(IndividualId id, GenomeId blueprint, std::vector<GenomeId> modules,
                              double fitness) {
  EvaluatedNetwork e;
  e.individual.id = id;
  e.individual.genome.id = id;
  e.individual.genome.blueprint.id = blueprint;
  for (auto m : modules) {
    ModuleGenome g;
    g.id = m;
    e.individual.genome.modules.push_back(g);
  }
  e.fitness = fitness;
  return e;
}

}  // namespace

TEST_CASE("offspring quotas follow species mean fitness") {
  const std::vector<double> w{1.0, 3.0};
  CHECK(allocateOffspring(w, 20) == std::vector<std::size_t>{5, 15});
  const std::vector<double> zero{0.0, 0.0, 0.0};
  const auto uniform = allocateOffspring(zero, 10);
  CHECK(uniform == std::vector<std::size_t>{4, 3, 3});
  Rng rng(1);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> ws(1 + rng.below(8));
    for (auto& x : ws) x = rng.uniform();
    const std::size_t total = rng.below(100);
    const auto q = allocateOffspring(ws, total);
    CHECK(std::accumulate(q.begin(), q.end(), std::size_t{0}) == total);
    const double sum = std::accumulate(ws.begin(), ws.end(), 0.0);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      CHECK(std::abs(static_cast<double>(q[i]) - static_cast<double>(total) * ws[i] / sum) < 1.0 + 1e-9);
    }
  }
}

TEST_CASE("elite count is the ceiling of the percentage with a floor of one") {
  CHECK(eliteCount(4, 0.5) == 2);
  CHECK(eliteCount(5, 0.5) == 3);
  CHECK(eliteCount(1, 0.1) == 1);
  CHECK(eliteCount(10, 1.0) == 10);
  CHECK(eliteCount(0, 0.5) == 0);
}

TEST_CASE("an infinite threshold collapses everything into one species") {
  Rng rng(2);
  InnovationTracker tracker;
  GenomeId next = 0;
  auto pop = modulePopulation(30, 5, tracker, rng, next);
  pop.threshold = std::numeric_limits<double>::infinity();
  SpeciationOptions opts;
  opts.targetSpecies = 5;
  speciate(pop, opts);
  CHECK(pop.species.size() == 1);
  CHECK(isPartition(pop));
}

TEST_CASE("adaptive speciation steers toward the target count and keeps a partition") {
  Rng rng(3);
  InnovationTracker tracker;
  GenomeId next = 0;
  auto pop = modulePopulation(60, 3, tracker, rng, next);
  NeatOptions neat;
  GenomeId nid = next;
  BreedContext ctx{rng, tracker, nid, {}};
  for (auto& m : pop.members) {
    for (int k = 0; k < 4; ++k) mutateGenome(m.genome, neat, ctx);
  }
  SpeciationOptions opts;
  opts.targetSpecies = 3;
  speciate(pop, opts);
  CHECK(isPartition(pop));
  CHECK(pop.species.size() >= 1);
  CHECK(pop.species.size() <= 6);
}

TEST_CASE("evolvePopulation keeps the size and a species partition") {
  Rng rng(4);
  InnovationTracker tracker;
  GenomeId next = 0;
  auto pop = modulePopulation(20, 2, tracker, rng, next);
  EvolveOptions opts;
  opts.populationSize = 20;
  opts.speciation.targetSpecies = 2;
  BreedContext ctx{rng, tracker, next, {}};
  for (int g = 0; g < 30; ++g) {
    for (auto& m : pop.members) {
      m.fitness = rng.uniform();
      m.evaluated = true;
    }
    evolvePopulation(pop, opts, ctx);
    CHECK(pop.size() == 20);
    CHECK(isPartition(pop));
    for (const auto& m : pop.members) CHECK(wellFormed(m.genome));
  }
}

TEST_CASE("L = 50% of a four-member species keeps its two best") {
  Rng rng(5);
  InnovationTracker tracker;
  GenomeId next = 0;
  auto pop = modulePopulation(4, 1, tracker, rng, next);
  const double fit[] = {0.1, 0.9, 0.4, 0.7};
  for (std::size_t i = 0; i < 4; ++i) {
    pop.members[i].fitness = fit[i];
    pop.members[i].evaluated = true;
  }
  const GenomeId best = pop.members[1].id();
  const GenomeId second = pop.members[3].id();
  EvolveOptions opts;
  opts.populationSize = 4;
  opts.elitePercent = 0.5;
  opts.speciation.adaptive = false;
  pop.threshold = std::numeric_limits<double>::infinity();
  BreedContext ctx{rng, tracker, next, {}};
  evolvePopulation(pop, opts, ctx);
  REQUIRE(pop.size() == 4);
  CHECK(pop.members[0].id() == best);
  CHECK(pop.members[1].id() == second);
  CHECK(pop.members[0].fitness == 0.9);
  CHECK_FALSE(pop.members[2].evaluated);
  CHECK(pop.members[2].fitness == 0.0);
}

TEST_CASE("attributed fitness is the exact mean over containing networks") {
  const std::vector<EvaluatedNetwork> returned{
      evaluatedNet(0, 100, {1, 2}, 0.2),
      evaluatedNet(1, 100, {2}, 0.6),
      evaluatedNet(2, 101, {1, 3}, 0.9),
  };
  const auto a = attributeFitness(returned);
  CHECK(a.blueprints.at(100) == doctest::Approx(0.4));
  CHECK(a.blueprints.at(101) == doctest::Approx(0.9));
  CHECK(a.modules.at(1) == doctest::Approx(0.55));
  CHECK(a.modules.at(2) == doctest::Approx(0.4));
  CHECK(a.modules.at(3) == doctest::Approx(0.9));
  CHECK(a.modules.count(4) == 0);

  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    std::vector<EvaluatedNetwork> nets;
    const auto n = 1 + rng.below(30);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<GenomeId> mods;
      std::set<GenomeId> distinct;
      for (std::size_t k = 0, c = 1 + rng.below(3); k < c; ++k) distinct.insert(rng.below(8));
      mods.assign(distinct.begin(), distinct.end());
      nets.push_back(evaluatedNet(i, rng.below(4), mods, rng.uniform()));
    }
    const auto got = attributeFitness(nets);
    for (const auto& [id, f] : got.modules) {
      double sum = 0.0;
      int count = 0;
      for (const auto& e : nets) {
        for (const auto& m : e.individual.genome.modules) {
          if (m.id == id) {
            sum += e.fitness;
            ++count;
          }
        }
      }
      CHECK(f == doctest::Approx(sum / count));
    }
  }
}

TEST_CASE("merge replaces fitness, re-inserts evicted genomes and respects the cap") {
  Rng rng(7);
  InnovationTracker tracker;
  GenomeId next = 0;
  auto pop = modulePopulation(6, 2, tracker, rng, next);
  pop.members[0].fitness = 0.3;
  const GenomeId kept = pop.members[0].id();

  const auto before = pop;
  mergePopulation<ModuleGenome>(pop, {}, {}, 0);
  CHECK(pop.members == before.members);

  mergePopulation<ModuleGenome>(pop, {{kept, 0.7}}, {}, 0);
  CHECK(pop.find(kept)->fitness == 0.7);
  CHECK(pop.find(kept)->evaluated);

  const ModuleGenome evicted = randomModule(next++, 2, tracker, rng);
  const std::vector<ModuleGenome> returned{evicted};
  auto full = pop;
  mergePopulation<ModuleGenome>(full, {{evicted.id, 0.5}}, returned, full.size());
  CHECK(full.size() == 6);
  CHECK(full.find(evicted.id) == nullptr);

  mergePopulation<ModuleGenome>(pop, {{evicted.id, 0.5}}, returned, 0);
  CHECK(pop.size() == 7);
  REQUIRE(pop.find(evicted.id) != nullptr);
  CHECK(pop.find(evicted.id)->fitness == 0.5);
  CHECK(isPartition(pop));
}

TEST_CASE("surrogate scores 1 at the target and is seeded") {
  Rng rng(8);
  InnovationTracker tracker;
  GenomeId next = 0;
  auto mods = modulePopulation(10, 2, tracker, rng, next);
  InnovationTracker bpTracker;
  auto species = mods.speciesIds();
  auto bps = blueprintPopulation(5, species, bpTracker, rng, next);
  const auto nets = assembleNetworks(bps, mods, 20, 0, rng);

  TargetProfile profile;
  profile.target = *extractFeatures(nets[0].graph);
  SurrogateTrainer exact(profile, {0.0, 1});
  CHECK(exact.evaluate(nets[0]) == 1.0);

  SurrogateTrainer noisy(SurrogateOptions{0.02, 9});
  for (const auto& n : nets) {
    const double a = noisy.evaluate(n);
    CHECK(a == noisy.evaluate(n));
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
  }
  CHECK(noisy.genomeSize(nets[0]) == nets[0].nodeCount());

  AssembledNetwork cyclic;
  cyclic.graph.nodes.resize(2);
  cyclic.graph.edges = {{0, 1}, {1, 0}};
  CHECK(noisy.evaluate(cyclic) == 0.0);
  CHECK(noisy.evaluate(AssembledNetwork{}) == 0.0);
}

TEST_CASE("target profiles stay inside the configured ranges") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto p = TargetProfile::fromSeed(s);
    CHECK(p.target.depth >= 3.0);
    CHECK(p.target.depth <= 6.0);
    CHECK(p.target.nodeCount >= 6.0);
    CHECK(p.target.nodeCount <= 12.0);
    CHECK(p.target.meanFanIn >= 1.2);
    CHECK(p.target.meanFanIn <= 1.8);
    double sum = 0.0;
    for (double h : p.target.histogram) sum += h;
    CHECK(sum == doctest::Approx(1.0));
  }
}

TEST_CASE("moving one feature toward the target never lowers the noise-free score") {
  Rng rng(10);
  for (int t = 0; t < 2000; ++t) {
    const auto p = TargetProfile::fromSeed(rng());
    NetworkFeatures f;
    f.depth = rng.uniform() * 10;
    f.nodeCount = rng.uniform() * 20;
    f.meanFanIn = rng.uniform() * 3;
    for (auto& h : f.histogram) h = rng.uniform();
    const double base = profileSimilarity(f, p);
    const double step = rng.uniform();
    NetworkFeatures g = f;
    switch (rng.below(4)) {
      case 0: g.depth += (p.target.depth - f.depth) * step; break;
      case 1: g.nodeCount += (p.target.nodeCount - f.nodeCount) * step; break;
      case 2: g.meanFanIn += (p.target.meanFanIn - f.meanFanIn) * step; break;
      default: {
        const auto k = rng.below(kLayerTypes);
        g.histogram[k] += (p.target.histogram[k] - f.histogram[k]) * step;
      }
    }
    CHECK(profileSimilarity(g, p) >= base - 1e-12);
  }
}

TEST_CASE("assembly substitutes one module per pointed species") {
  Rng rng(11);
  InnovationTracker tracker;
  GenomeId next = 0;
  auto mods = modulePopulation(60, 3, tracker, rng, next);
  InnovationTracker bpTracker;
  const auto species = mods.speciesIds();
  auto bps = blueprintPopulation(20, species, bpTracker, rng, next);
  for (auto& m : bps.members) {
    for (int k = 0; k < 3; ++k) addNodeMutation(m.genome, bpTracker, rng, SlotGene{0, species[rng.below(3)]});
  }
  const auto nets = assembleNetworks(bps, mods, 300, 1000, rng);
  REQUIRE(nets.size() == 300);
  for (std::size_t i = 0; i < nets.size(); ++i) {
    const auto& n = nets[i];
    CHECK(n.id == 1000 + i);
    std::map<SpeciesId, GenomeId> bySpecies;
    std::size_t layers = 0;
    for (const auto& slot : n.blueprint.nodes) {
      const GenomeId mid = n.slotModules.at(slot.innovation);
      auto [it, fresh] = bySpecies.try_emplace(slot.moduleSpecies, mid);
      CHECK(it->second == mid);
      const auto* sp = mods.findSpecies(slot.moduleSpecies);
      REQUIRE(sp != nullptr);
      CHECK(std::find(sp->members.begin(), sp->members.end(), mid) != sp->members.end());
      layers += mods.find(mid)->genome.nodes.size();
    }
    CHECK(n.modules.size() == bySpecies.size());
    CHECK(n.nodeCount() == layers);
    CHECK(extractFeatures(n.graph).has_value());
  }
}

TEST_CASE("a single-slot blueprint assembles to its module's own graph") {
  Rng rng(12);
  InnovationTracker tracker;
  ModuleGenome m = randomModule(1, 4, tracker, rng);
  addEdgeMutation(m, tracker, rng);
  BlueprintGenome bp;
  bp.nodes.push_back(SlotGene{0, 0});
  const auto net = flatten(bp, {{0, &m}});
  REQUIRE(net.nodes.size() == m.nodes.size());
  std::size_t enabled = 0;
  for (const auto& e : m.edges) enabled += e.enabled ? 1 : 0;
  CHECK(net.edges.size() == enabled);
  for (std::size_t i = 0; i < m.nodes.size(); ++i) CHECK(net.nodes[i].type == m.nodes[i].type);
  CHECK_THROWS_AS(flatten(bp, {}), InputError);
}

TEST_CASE("dangling species pointers are repaired to live species") {
  Rng rng(13);
  InnovationTracker tracker;
  GenomeId next = 0;
  const std::vector<SpeciesId> old{7, 8};
  auto bps = blueprintPopulation(10, old, tracker, rng, next);
  const std::vector<SpeciesId> live{8, 9};
  const auto changed = repairPointers(bps, live, rng);
  CHECK(changed > 0);
  for (const auto& m : bps.members) {
    for (const auto& s : m.genome.nodes) CHECK((s.moduleSpecies == 8 || s.moduleSpecies == 9));
  }
  CHECK(repairPointers(bps, live, rng) == 0);
}

TEST_CASE("CDN loop keeps population sizes and never loses all blueprint species") {
  SurrogateTrainer trainer(SurrogateOptions{0.02, 3});
  SimulatedCluster<SurrogateTrainer> sim(trainer, {20, LinearInSizeDelay{1.0}, 3, 1.0, false});
  CdnAes loop(smallConfig(3), sim);
  loop.init();
  CHECK(sim.outstanding() == 60);
  double best = 0.0;
  for (int g = 0; g < 25; ++g) {
    const auto r = loop.step();
    CHECK(r.blueprints == 20);
    CHECK(r.modules == 60);
    CHECK(r.blueprintSpeciesCount >= 1);
    CHECK(r.moduleSpeciesCount >= 1);
    CHECK(r.bestSoFar >= best);
    best = r.bestSoFar;
    CHECK(isPartition(loop.blueprints()));
    CHECK(isPartition(loop.modules()));
    CHECK(sim.outstanding() == 60);
  }
}

TEST_CASE("CDN runs with the same seed give identical curves") {
  auto curve = [] {
    SurrogateTrainer trainer(SurrogateOptions{0.02, 4});
    SimulatedCluster<SurrogateTrainer> sim(trainer, {20, LinearInSizeDelay{1.0}, 4, 1.0, false});
    const auto r = runCdnAes(smallConfig(4), sim);
    std::vector<std::pair<double, double>> out;
    for (const auto& g : r.reports) out.emplace_back(g.time, g.batchBest);
    return out;
  };
  CHECK(curve() == curve());
}

TEST_CASE("CDN config validation") {
  SurrogateTrainer trainer(SurrogateOptions{});
  SimulatedCluster<SurrogateTrainer> sim(trainer, {1, ConstantDelay{1.0}, 0});
  auto bad = smallConfig(0);
  bad.M = bad.K + 1;
  CHECK_THROWS_AS(CdnAes(bad, sim), ConfigError);
  bad = smallConfig(0);
  bad.moduleElitePercent = 0.0;
  CHECK_THROWS_AS(CdnAes(bad, sim), ConfigError);
  bad = smallConfig(0);
  bad.moduleSpecies = 0;
  CHECK_THROWS_AS(CdnAes(bad, sim), ConfigError);
}

TEST_CASE("with size-proportional delays, early returns under AES favour small networks") {
  // Mean node count of everything consumed by a fixed virtual time, AES with
  // D = 3 against the synchronous run with the same M and R.
  double aesTotal = 0.0;
  double syncTotal = 0.0;
  const int seeds = 5;
  for (int s = 0; s < seeds; ++s) {
    const auto seed = static_cast<std::uint64_t>(s);
    auto meanNodes = [&](std::size_t K, std::size_t M, Timestamp horizon) {
      SurrogateTrainer trainer(SurrogateOptions{0.02, seed});
      SimulatedCluster<SurrogateTrainer> sim(trainer, {M, LinearInSizeDelay{1.0}, seed, 1.0, false});
      CdnConfig cfg = smallConfig(seed);
      cfg.K = K;
      cfg.M = M;
      CdnAes loop(cfg, sim);
      double nodes = 0.0;
      std::size_t count = 0;
      loop.setObserver([&](const CdnGenerationReport&, std::span<const EvaluatedNetwork> returned) {
        for (const auto& r : returned) {
          if (r.finishTime > horizon) continue;
          nodes += static_cast<double>(r.individual.genome.nodeCount());
          ++count;
        }
      });
      loop.init();
      while (sim.now() <= horizon) loop.step();
      return nodes / static_cast<double>(count);
    };
    aesTotal += meanNodes(60, 20, 60.0);
    syncTotal += meanNodes(20, 20, 60.0);
  }
  MESSAGE("mean nodes: aes " << aesTotal / seeds << " sync " << syncTotal / seeds);
  CHECK(aesTotal <= syncTotal);
}
