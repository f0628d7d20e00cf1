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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "aes/cdn/assembly.hpp"
#include "aes/cdn/genome.hpp"
#include "aes/cdn/population.hpp"
#include "aes/executor.hpp"
#include "aes/rng.hpp"

namespace aes::cdn {

struct CdnConfig {
  std::size_t blueprintPopulation = 20;  ///< N_b
  std::size_t modulePopulation = 60;     ///< N_m
  double blueprintElitePercent = 0.5;    ///< L_b
  double moduleElitePercent = 0.5;       ///< L_m
  std::size_t blueprintSpecies = 1;      ///< S_b
  std::size_t moduleSpecies = 3;         ///< S_m
  std::size_t K = 300;
  std::size_t M = 100;
  std::size_t targetGenerations = 30;
  /// Initial compatibility threshold; adapts toward S_b / S_m when enabled.
  double compatibilityThreshold = 3.0;
  bool adaptiveThreshold = true;
  CompatibilityCoefficients coefficients{};
  NeatOptions neat{};
  std::size_t initBlueprintMaxNodes = 3;
  std::size_t initModuleMaxNodes = 3;
  /// Upper bound on population size while merging returned genomes back;
  /// 0 means unbounded (evolution restores N afterwards).
  std::size_t mergeCapacity = 0;
  std::uint64_t seed = 0;

  bool synchronous() const { return K == M; }
};

void validate(const CdnConfig& config);

struct CdnGenerationReport {
  std::size_t generation = 0;
  Timestamp time = 0.0;
  double batchBest = 0.0;
  double batchMean = 0.0;
  double bestSoFar = 0.0;
  double meanNodeCount = 0.0;  ///< over the returned batch
  std::size_t blueprints = 0;
  std::size_t modules = 0;
  std::size_t blueprintSpeciesCount = 0;
  std::size_t moduleSpeciesCount = 0;
};

struct CdnRunResult {
  std::vector<CdnGenerationReport> reports;
  double bestFitness = 0.0;
  std::optional<AssembledNetwork> best;
  Timestamp elapsedTime = 0.0;
  std::size_t totalSubmitted = 0;
};

/// Multi-population AES over blueprint and module populations. Each
/// generation: await M networks, attribute fitness, merge, evolve both
/// populations, assemble M networks and submit them. K == M gives
/// synchronous CoDeepNEAT.
class CdnAes {
 public:
  using NetworkExecutor = Executor<AssembledNetwork, double>;
  using Observer = std::function<void(const CdnGenerationReport&, std::span<const EvaluatedNetwork>)>;

  CdnAes(CdnConfig config, NetworkExecutor& executor);

  void setObserver(Observer observer) { observer_ = std::move(observer); }

  /// Random populations, initial species and K assembled networks.
  void init();
  CdnGenerationReport step();
  CdnRunResult run();

  const Population<BlueprintGenome>& blueprints() const { return blueprints_; }
  const Population<ModuleGenome>& modules() const { return modules_; }
  std::size_t generation() const { return generation_; }
  const CdnConfig& config() const { return config_; }

 private:
  void submitNetworks(std::size_t count);

  CdnConfig config_;
  NetworkExecutor& executor_;
  Observer observer_;
  Rng rng_;
  InnovationTracker blueprintInnovations_;
  InnovationTracker moduleInnovations_;
  Population<BlueprintGenome> blueprints_;
  Population<ModuleGenome> modules_;
  GenomeId nextGenomeId_ = 0;
  IndividualId nextNetworkId_ = 0;
  std::size_t generation_ = 0;
  std::size_t totalSubmitted_ = 0;
  double bestFitness_ = 0.0;
  std::optional<AssembledNetwork> best_;
  bool initialized_ = false;
};

CdnRunResult runCdnAes(const CdnConfig& config, CdnAes::NetworkExecutor& executor);

}  // namespace aes::cdn
