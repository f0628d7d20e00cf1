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
#include <string>
#include <vector>

#include "aes/elite_set.hpp"
#include "aes/errors.hpp"
#include "aes/executor.hpp"
#include "aes/rng.hpp"
#include "aes/selection.hpp"
#include "aes/types.hpp"

namespace aes {

struct AesConfig {
  std::size_t K = 1000;  ///< queue population / initial seeding size
  std::size_t M = 10;    ///< batch size awaited per generation
  std::size_t L = 1;     ///< elite capacity
  std::size_t targetGenerations = 100;
  std::uint64_t rngSeed = 0;
  bool stopOnSolution = true;
  double crossoverRate = 0.7;
  double mutationRate = 0.3;

  double ratio() const { return static_cast<double>(K) / static_cast<double>(M); }
  bool synchronous() const { return M == K; }
};

void validate(const AesConfig& config);

struct StopCondition {
  std::size_t targetGenerations = 0;
  bool stopOnSolution = true;
};

template <class Fitness>
struct GenerationReport {
  std::size_t generation = 0;
  Timestamp time = 0.0;
  std::size_t consumed = 0;
  std::size_t submitted = 0;
  std::size_t parentPoolSize = 0;
  Fitness bestFitness{};  ///< best of the consumed batch
  Fitness bestSoFar{};
  std::optional<Fitness> eliteBest;
  std::optional<Fitness> eliteWorst;
  double meanQueueDelay = 0.0;
  std::size_t minBirthGeneration = 0;
  std::size_t maxBirthGeneration = 0;
  bool solutionFound = false;
};

template <class Genome, class Fitness>
struct RunResult {
  bool converged = false;
  std::size_t generations = 0;
  Timestamp elapsedTime = 0.0;
  std::optional<Timestamp> convergedTime;
  std::optional<EvaluatedIndividual<Genome, Fitness>> best;
  std::vector<GenerationReport<Fitness>> reports;
  std::size_t totalSubmitted = 0;
};

/// Everything one generation consumed and produced, for observers.
template <class Genome, class Fitness>
struct StepRecord {
  const GenerationReport<Fitness>& report;
  std::span<const EvaluatedIndividual<Genome, Fitness>> returned;
  std::span<const Individual<Genome>> children;
  const EliteSet<Genome, Fitness>& elites;
};

/// Generic single-population asynchronous evaluation strategy.
///
/// Seeds the queue with K random individuals, then per generation waits
/// for M returns, breeds M children from the L elites plus those returns,
/// refreshes the elites and resubmits. M == K is the synchronous baseline.
template <Domain D>
class AesEngine {
 public:
  using Genome = typename D::Genome;
  using Fitness = typename D::Fitness;
  using Evaluated = EvaluatedIndividual<Genome, Fitness>;
  using Report = GenerationReport<Fitness>;
  using Result = RunResult<Genome, Fitness>;
  using Observer = std::function<void(const StepRecord<Genome, Fitness>&)>;

  AesEngine(AesConfig config, const D& domain, Executor<Genome, Fitness>& executor)
      : config_(config), domain_(domain), executor_(executor), elites_(config.L) {
    validate(config_);
  }

  void setObserver(Observer observer) { observer_ = std::move(observer); }

  /// Queues K fresh random individuals; resets generation, elites and RNG.
  void init() {
    if (!executor_.idle()) throw ConfigError("executor must be idle before init");
    rng_ = Rng(config_.rngSeed);
    elites_ = EliteSet<Genome, Fitness>(config_.L);
    generation_ = 0;
    nextId_ = 0;
    totalSubmitted_ = 0;
    best_.reset();
    converged_ = false;
    convergedTime_.reset();
    std::vector<Individual<Genome>> initial;
    initial.reserve(config_.K);
    for (std::size_t i = 0; i < config_.K; ++i) {
      initial.push_back(Individual<Genome>{nextId_++, domain_.randomGenome(rng_), 0, {}});
    }
    submit(std::move(initial));
    initialized_ = true;
  }

  Report step() {
    if (!initialized_) throw std::logic_error("step() before init()");
    std::vector<Evaluated> returned = executor_.awaitBatch(config_.M);

    Report report;
    report.generation = generation_;
    report.time = executor_.now();
    report.consumed = returned.size();
    report.minBirthGeneration = returned.front().individual.birthGeneration;
    report.maxBirthGeneration = report.minBirthGeneration;
    std::optional<std::size_t> batchBest;
    double delaySum = 0.0;
    for (std::size_t i = 0; i < returned.size(); ++i) {
      const auto& e = returned[i];
      delaySum += e.dispatchTime - e.submitTime;
      report.minBirthGeneration = std::min(report.minBirthGeneration, e.individual.birthGeneration);
      report.maxBirthGeneration = std::max(report.maxBirthGeneration, e.individual.birthGeneration);
      if (!batchBest || rankedBefore(e, returned[*batchBest])) batchBest = i;
      if (domain_.isSolution(e.fitness)) {
        report.solutionFound = true;
        if (!convergedTime_ || e.finishTime < *convergedTime_) convergedTime_ = e.finishTime;
      }
    }
    report.meanQueueDelay = delaySum / static_cast<double>(returned.size());
    report.bestFitness = returned[*batchBest].fitness;
    if (!best_ || rankedBefore(returned[*batchBest], *best_)) best_ = returned[*batchBest];
    report.bestSoFar = best_->fitness;
    if (report.solutionFound) converged_ = true;

    const auto pool = formParentPool<Genome, Fitness>(elites_, returned);
    report.parentPoolSize = pool.size();
    const auto pairs = selectParents<Genome, Fitness>(pool, config_.M, rng_);
    std::vector<Individual<Genome>> children = breed(pool, pairs);

    elites_.update(returned);
    if (!elites_.empty()) {
      report.eliteBest = elites_.best().fitness;
      report.eliteWorst = elites_.worst().fitness;
    }

    report.submitted = children.size();
    if (observer_) observer_(StepRecord<Genome, Fitness>{report, returned, children, elites_});
    submit(std::move(children));
    ++generation_;
    return report;
  }

  Result runUntil(const StopCondition& stop) {
    Result result;
    if (!initialized_) init();
    for (std::size_t g = 0; g < stop.targetGenerations; ++g) {
      result.reports.push_back(step());
      if (stop.stopOnSolution && converged_) break;
    }
    result.converged = converged_;
    result.generations = generation_;
    result.elapsedTime = executor_.now();
    result.convergedTime = convergedTime_;
    result.best = best_;
    result.totalSubmitted = totalSubmitted_;
    return result;
  }

  Result run() { return runUntil({config_.targetGenerations, config_.stopOnSolution}); }

  const AesConfig& config() const { return config_; }
  const EliteSet<Genome, Fitness>& elites() const { return elites_; }
  std::size_t generation() const { return generation_; }
  std::size_t totalSubmitted() const { return totalSubmitted_; }
  bool converged() const { return converged_; }
  /// Earliest finish time of a solution, once one was consumed.
  std::optional<Timestamp> convergedTime() const { return convergedTime_; }

 private:
  std::vector<Individual<Genome>> breed(std::span<const Evaluated> pool,
                                        std::span<const ParentPair> pairs) {
    std::vector<Individual<Genome>> children;
    children.reserve(pairs.size());
    for (const auto& pair : pairs) {
      const auto& a = pool[pair.first].individual;
      const auto& b = pool[pair.second].individual;
      Individual<Genome> child;
      child.id = nextId_++;
      child.birthGeneration = generation_ + 1;
      if (rng_.chance(config_.crossoverRate)) {
        child.genome = domain_.crossover(a.genome, b.genome, rng_);
        child.parentIds = {a.id, b.id};
      } else {
        child.genome = a.genome;
        child.parentIds = {a.id};
      }
      if (rng_.chance(config_.mutationRate)) child.genome = domain_.mutate(child.genome, rng_);
      children.push_back(std::move(child));
    }
    return children;
  }

  void submit(std::vector<Individual<Genome>> batch) {
    totalSubmitted_ += batch.size();
    executor_.submit(std::move(batch));
  }

  AesConfig config_;
  const D& domain_;
  Executor<Genome, Fitness>& executor_;
  EliteSet<Genome, Fitness> elites_;
  Rng rng_{0};
  Observer observer_;
  std::size_t generation_ = 0;
  IndividualId nextId_ = 0;
  std::size_t totalSubmitted_ = 0;
  std::optional<Evaluated> best_;
  bool converged_ = false;
  std::optional<Timestamp> convergedTime_;
  bool initialized_ = false;
};

}  // namespace aes
