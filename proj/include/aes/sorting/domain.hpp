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
#include <string>

#include "aes/rng.hpp"
#include "aes/sorting/network.hpp"

namespace aes::sorting {

struct SortingOptions {
  int nLines = 8;
  std::size_t maxLength = 64;
  std::size_t initMinLength = 20;
  std::size_t initMaxLength = 32;
  /// Comparator budget a valid network must meet; negative means the known optimum.
  int targetComparators = -1;
};

/// Minimal sorting-network search: valid first, then fewest comparators.
class SortingDomain {
 public:
  using Genome = SortingNetwork;
  using Fitness = SortingFitness;

  explicit SortingDomain(SortingOptions options = {});

  Genome randomGenome(Rng& rng) const;
  Genome mutate(const Genome& g, Rng& rng) const;
  Genome crossover(const Genome& a, const Genome& b, Rng& rng) const;
  Fitness evaluate(const Genome& g) const { return evaluateNetwork(g); }
  bool isSolution(const Fitness& f) const;
  std::size_t genomeSize(const Genome& g) const { return g.size(); }
  Fitness worstFitness() const;
  std::string formatGenome(const Genome& g) const { return formatNetwork(g); }
  std::string formatFitness(const Fitness& f) const;

  const SortingOptions& options() const { return options_; }
  int targetComparators() const { return target_; }

 private:
  SortingOptions options_;
  int target_;
};

}  // namespace aes::sorting
