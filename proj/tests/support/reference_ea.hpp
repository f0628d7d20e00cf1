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
#include <cstdint>
#include <vector>

#include "aes/rng.hpp"

namespace aes::testing {

/// Textbook generational EA written without the engine, executor or
/// selection code: evaluate everything, keep the best L, breed N children
/// by binary tournament from elites plus the evaluated generation.
template <class D>
class ReferenceEa {
 public:
  using Genome = typename D::Genome;
  using Fitness = typename D::Fitness;

  struct Scored {
    std::uint64_t id;
    Genome genome;
    Fitness fitness;
  };

  ReferenceEa(const D& domain, std::size_t n, std::size_t l, std::uint64_t seed, double cx, double mu)
      : domain_(domain), n_(n), l_(l), cx_(cx), mu_(mu), rng_(seed) {
    for (std::size_t i = 0; i < n_; ++i) current_.push_back({nextId_++, domain_.randomGenome(rng_)});
  }

  /// Genomes of the generation about to be evaluated.
  std::vector<Genome> genomes() const {
    std::vector<Genome> out;
    for (const auto& c : current_) out.push_back(c.second);
    return out;
  }

  void advance() {
    std::vector<Scored> scored;
    for (const auto& [id, g] : current_) scored.push_back({id, g, domain_.evaluate(g)});

    std::vector<Scored> pool = elites_;
    pool.insert(pool.end(), scored.begin(), scored.end());
    auto better = [](const Scored& a, const Scored& b) {
      if (a.fitness != b.fitness) return a.fitness > b.fitness;
      return a.id < b.id;
    };
    std::stable_sort(pool.begin(), pool.end(), better);

    // All tournaments are drawn before any variation.
    const std::size_t p = pool.size();
    std::vector<std::pair<std::size_t, std::size_t>> parents;
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t first = 0;
      std::size_t second = 0;
      if (p > 1) {
        const std::size_t a = rng_.below(p);
        const std::size_t b = rng_.below(p);
        first = a < b ? a : b;
        const std::size_t c = rng_.below(p - 1);
        const std::size_t d = rng_.below(p - 1);
        second = c < d ? c : d;
        if (second >= first) second += 1;
      }
      parents.emplace_back(first, second);
    }

    std::vector<std::pair<std::uint64_t, Genome>> next;
    for (const auto& [first, second] : parents) {
      Genome child = rng_.uniform() < cx_ ? domain_.crossover(pool[first].genome, pool[second].genome, rng_)
                                          : pool[first].genome;
      if (rng_.uniform() < mu_) child = domain_.mutate(child, rng_);
      next.push_back({nextId_++, std::move(child)});
    }

    pool.resize(std::min(pool.size(), l_));
    elites_ = std::move(pool);
    current_ = std::move(next);
  }

 private:
  const D& domain_;
  std::size_t n_;
  std::size_t l_;
  double cx_;
  double mu_;
  Rng rng_;
  std::uint64_t nextId_ = 0;
  std::vector<std::pair<std::uint64_t, Genome>> current_;
  std::vector<Scored> elites_;
};

}  // namespace aes::testing
