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
#include <cstddef>
#include <span>
#include <vector>

#include "aes/elite_set.hpp"
#include "aes/errors.hpp"
#include "aes/rng.hpp"
#include "aes/types.hpp"

namespace aes {

/// Indices into a canonically ordered parent pool.
struct ParentPair {
  std::size_t first = 0;
  std::size_t second = 0;
  bool operator==(const ParentPair&) const = default;
};

/// Binary tournament with replacement over a pool sorted best-first, so the
/// winner of a draw is simply the smaller index. Draws the first parent from
/// the whole pool and the second from the pool minus the first parent; a
/// one-member pool pairs that member with itself.
std::vector<ParentPair> tournamentPairs(std::size_t poolSize, std::size_t count, Rng& rng);

/// One binary tournament over [0, poolSize).
std::size_t binaryTournament(std::size_t poolSize, Rng& rng);

/// Elites ∪ returned in canonical order (descending fitness, lower id first).
template <class Genome, class Fitness>
std::vector<EvaluatedIndividual<Genome, Fitness>> formParentPool(
    const EliteSet<Genome, Fitness>& elites,
    std::span<const EvaluatedIndividual<Genome, Fitness>> returned) {
  std::vector<EvaluatedIndividual<Genome, Fitness>> pool = elites.members();
  pool.insert(pool.end(), returned.begin(), returned.end());
  std::sort(pool.begin(), pool.end(), rankedBefore<Genome, Fitness>);
  return pool;
}

template <class Genome, class Fitness>
std::vector<ParentPair> selectParents(std::span<const EvaluatedIndividual<Genome, Fitness>> pool,
                                      std::size_t count, Rng& rng) {
  if (pool.empty()) throw std::logic_error("parent pool is empty");
  return tournamentPairs(pool.size(), count, rng);
}

}  // namespace aes
