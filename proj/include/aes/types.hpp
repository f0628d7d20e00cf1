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

#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "aes/rng.hpp"

namespace aes {

using IndividualId = std::uint64_t;
using Timestamp = double;

template <class Genome>
struct Individual {
  IndividualId id = 0;
  Genome genome{};
  std::size_t birthGeneration = 0;
  std::vector<IndividualId> parentIds;
};

template <class Genome, class Fitness>
struct EvaluatedIndividual {
  Individual<Genome> individual;
  Fitness fitness{};
  Timestamp submitTime = 0.0;
  Timestamp dispatchTime = 0.0;
  Timestamp finishTime = 0.0;
  std::size_t workerId = 0;
  bool failed = false;

  IndividualId id() const { return individual.id; }
};

/// Anything an executor can evaluate: a pure fitness function plus a size
/// measure that feeds the delay model. Fitness is totally ordered, greater
/// is better.
template <class E>
concept Evaluator = requires(const E& e, const typename E::Genome& g) {
  typename E::Genome;
  typename E::Fitness;
  requires std::three_way_comparable<typename E::Fitness>;
  { e.evaluate(g) } -> std::same_as<typename E::Fitness>;
  { e.genomeSize(g) } -> std::convertible_to<std::size_t>;
  { e.worstFitness() } -> std::same_as<typename E::Fitness>;
};

/// A single-population search domain driven by the generic engine.
template <class D>
concept Domain = Evaluator<D> &&
    requires(const D& d, const typename D::Genome& g, const typename D::Fitness& f, Rng& rng) {
      { d.randomGenome(rng) } -> std::same_as<typename D::Genome>;
      { d.mutate(g, rng) } -> std::same_as<typename D::Genome>;
      { d.crossover(g, g, rng) } -> std::same_as<typename D::Genome>;
      { d.isSolution(f) } -> std::same_as<bool>;
      { d.formatGenome(g) } -> std::same_as<std::string>;
      { d.formatFitness(f) } -> std::same_as<std::string>;
    };

/// Canonical "better first" order: higher fitness, then lower (older) id.
template <class Genome, class Fitness>
bool rankedBefore(const EvaluatedIndividual<Genome, Fitness>& a,
                  const EvaluatedIndividual<Genome, Fitness>& b) {
  if (auto c = a.fitness <=> b.fitness; c != 0) return c > 0;
  return a.id() < b.id();
}

}  // namespace aes
