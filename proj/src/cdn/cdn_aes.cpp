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

#include "aes/cdn/cdn_aes.hpp"

#include <cmath>
#include <stdexcept>

#include "aes/errors.hpp"

namespace aes::cdn {

void validate(const CdnConfig& c) {
  if (c.blueprintPopulation == 0 || c.modulePopulation == 0) {
    throw ConfigError("population sizes N_b and N_m must be positive");
  }
  if (c.blueprintSpecies == 0 || c.moduleSpecies == 0) {
    throw ConfigError("initial species counts must be positive");
  }
  if (c.blueprintSpecies > c.blueprintPopulation || c.moduleSpecies > c.modulePopulation) {
    throw ConfigError("more initial species than population members");
  }
  auto pct = [](double p) { return p > 0.0 && p <= 1.0; };
  if (!pct(c.blueprintElitePercent) || !pct(c.moduleElitePercent)) {
    throw ConfigError("elite percentages must lie in (0, 1]");
  }
  if (c.K == 0 || c.M == 0) throw ConfigError("K and M must be positive");
  if (c.M > c.K) throw ConfigError("M must not exceed K");
  if (!(c.compatibilityThreshold > 0.0)) throw ConfigError("compatibility threshold must be positive");
  if (c.initBlueprintMaxNodes == 0 || c.initModuleMaxNodes == 0) {
    throw ConfigError("initial genomes need at least one node");
  }
}

CdnAes::CdnAes(CdnConfig config, NetworkExecutor& executor)
    : config_(config), executor_(executor), rng_(config.seed) {
  validate(config_);
}

void CdnAes::init() {
  if (!executor_.idle()) throw ConfigError("executor must be idle before init");
  rng_ = Rng(config_.seed);
  blueprintInnovations_ = {};
  moduleInnovations_ = {};
  blueprints_ = {};
  modules_ = {};
  nextGenomeId_ = 0;
  nextNetworkId_ = 0;
  generation_ = 0;
  totalSubmitted_ = 0;
  bestFitness_ = 0.0;
  best_.reset();

  modules_.threshold = config_.compatibilityThreshold;
  for (std::size_t i = 0; i < config_.modulePopulation; ++i) {
    const auto nodes = static_cast<std::size_t>(rng_.between(1, static_cast<std::int64_t>(config_.initModuleMaxNodes)));
    modules_.members.push_back({randomModule(nextGenomeId_++, nodes, moduleInnovations_, rng_), 0.0, false});
  }
  divideIntoSpecies(modules_, config_.moduleSpecies);

  const auto speciesIds = modules_.speciesIds();
  blueprints_.threshold = config_.compatibilityThreshold;
  for (std::size_t i = 0; i < config_.blueprintPopulation; ++i) {
    const auto nodes = static_cast<std::size_t>(rng_.between(1, static_cast<std::int64_t>(config_.initBlueprintMaxNodes)));
    blueprints_.members.push_back(
        {randomBlueprint(nextGenomeId_++, nodes, speciesIds, blueprintInnovations_, rng_), 0.0, false});
  }
  divideIntoSpecies(blueprints_, config_.blueprintSpecies);

  submitNetworks(config_.K);
  initialized_ = true;
}

void CdnAes::submitNetworks(std::size_t count) {
  auto nets = assembleNetworks(blueprints_, modules_, count, nextNetworkId_, rng_);
  nextNetworkId_ += count;
  std::vector<Individual<AssembledNetwork>> batch;
  batch.reserve(nets.size());
  for (auto& n : nets) {
    const IndividualId id = n.id;
    batch.push_back(Individual<AssembledNetwork>{id, std::move(n), generation_, {}});
  }
  totalSubmitted_ += batch.size();
  executor_.submit(std::move(batch));
}

CdnGenerationReport CdnAes::step() {
  if (!initialized_) throw std::logic_error("step() before init()");
  const auto returned = executor_.awaitBatch(config_.M);

  CdnGenerationReport report;
  report.generation = generation_;
  report.time = executor_.now();
  double sum = 0.0;
  double nodes = 0.0;
  report.batchBest = returned.front().fitness;
  for (const auto& r : returned) {
    sum += r.fitness;
    nodes += static_cast<double>(r.individual.genome.nodeCount());
    if (r.fitness > report.batchBest) report.batchBest = r.fitness;
    if (!best_ || r.fitness > bestFitness_) {
      bestFitness_ = r.fitness;
      best_ = r.individual.genome;
    }
  }
  report.batchMean = sum / static_cast<double>(returned.size());
  report.meanNodeCount = nodes / static_cast<double>(returned.size());
  report.bestSoFar = bestFitness_;

  const Attribution attributed = attributeFitness(returned);
  std::vector<BlueprintGenome> returnedBlueprints;
  std::vector<ModuleGenome> returnedModules;
  for (const auto& r : returned) {
    returnedBlueprints.push_back(r.individual.genome.blueprint);
    for (const auto& m : r.individual.genome.modules) returnedModules.push_back(m);
  }
  mergePopulation<BlueprintGenome>(blueprints_, attributed.blueprints, returnedBlueprints,
                                   config_.mergeCapacity, config_.coefficients);
  mergePopulation<ModuleGenome>(modules_, attributed.modules, returnedModules,
                                config_.mergeCapacity, config_.coefficients);

  EvolveOptions moduleOpts;
  moduleOpts.populationSize = config_.modulePopulation;
  moduleOpts.elitePercent = config_.moduleElitePercent;
  moduleOpts.speciation = {config_.coefficients, config_.moduleSpecies, config_.adaptiveThreshold};
  moduleOpts.neat = config_.neat;
  BreedContext moduleCtx{rng_, moduleInnovations_, nextGenomeId_, {}};
  evolvePopulation(modules_, moduleOpts, moduleCtx);

  // Blueprint offspring point into the module species that now exist.
  const auto speciesIds = modules_.speciesIds();
  repairPointers(blueprints_, speciesIds, rng_);
  EvolveOptions blueprintOpts;
  blueprintOpts.populationSize = config_.blueprintPopulation;
  blueprintOpts.elitePercent = config_.blueprintElitePercent;
  blueprintOpts.speciation = {config_.coefficients, config_.blueprintSpecies, config_.adaptiveThreshold};
  blueprintOpts.neat = config_.neat;
  BreedContext blueprintCtx{rng_, blueprintInnovations_, nextGenomeId_, speciesIds};
  evolvePopulation(blueprints_, blueprintOpts, blueprintCtx);

  report.blueprints = blueprints_.size();
  report.modules = modules_.size();
  report.blueprintSpeciesCount = blueprints_.species.size();
  report.moduleSpeciesCount = modules_.species.size();

  ++generation_;
  if (observer_) observer_(report, returned);
  submitNetworks(config_.M);
  return report;
}

CdnRunResult CdnAes::run() {
  if (!initialized_) init();
  CdnRunResult result;
  for (std::size_t g = 0; g < config_.targetGenerations; ++g) result.reports.push_back(step());
  result.bestFitness = bestFitness_;
  result.best = best_;
  result.elapsedTime = executor_.now();
  result.totalSubmitted = totalSubmitted_;
  return result;
}

CdnRunResult runCdnAes(const CdnConfig& config, CdnAes::NetworkExecutor& executor) {
  CdnAes loop(config, executor);
  return loop.run();
}

}  // namespace aes::cdn
