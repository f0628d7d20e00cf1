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

#include "aes/mux/rules.hpp"
#include "aes/rng.hpp"

namespace aes::mux {

struct MuxOptions {
  MuxConfig config{};
  MuxOperatorOptions operators{};
  std::size_t initMinRules = 1;
  std::size_t initMaxRules = 8;
};

/// Boolean multiplexer discovery with an ordered rule-set genome.
class MuxDomain {
 public:
  using Genome = RuleSet;
  using Fitness = MuxFitness;

  explicit MuxDomain(MuxOptions options = {});

  Genome randomGenome(Rng& rng) const;
  Genome mutate(const Genome& g, Rng& rng) const {
    return mutateRuleSet(options_.config, g, rng, options_.operators);
  }
  Genome crossover(const Genome& a, const Genome& b, Rng& rng) const {
    return crossoverRuleSets(a, b, rng, options_.operators);
  }
  Fitness evaluate(const Genome& g) const { return evaluateRuleSet(options_.config, g); }
  bool isSolution(const Fitness& f) const { return f.correct == options_.config.rows(); }
  /// Rules plus conditions.
  std::size_t genomeSize(const Genome& g) const;
  Fitness worstFitness() const { return MuxFitness{0}; }
  std::string formatGenome(const Genome& g) const { return formatRuleSet(options_.config, g); }
  std::string formatFitness(const Fitness& f) const { return std::to_string(f.correct); }

  const MuxConfig& config() const { return options_.config; }
  const MuxOptions& options() const { return options_; }

 private:
  MuxOptions options_;
};

}  // namespace aes::mux
