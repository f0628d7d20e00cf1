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

#include "aes/selection.hpp"

namespace aes {

std::size_t binaryTournament(std::size_t poolSize, Rng& rng) {
  const std::size_t a = rng.below(poolSize);
  const std::size_t b = rng.below(poolSize);
  return std::min(a, b);
}

std::vector<ParentPair> tournamentPairs(std::size_t poolSize, std::size_t count, Rng& rng) {
  if (poolSize == 0) throw std::logic_error("parent pool is empty");
  std::vector<ParentPair> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (poolSize == 1) {
      pairs.push_back({0, 0});
      continue;
    }
    const std::size_t first = binaryTournament(poolSize, rng);
    // Tournament over the pool with `first` removed; skipping preserves order.
    std::size_t second = binaryTournament(poolSize - 1, rng);
    if (second >= first) ++second;
    pairs.push_back({first, second});
  }
  return pairs;
}

}  // namespace aes
