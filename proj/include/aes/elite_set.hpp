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

#include "aes/types.hpp"

namespace aes {

/// Best-so-far archive of capacity L, kept in canonical order
/// (descending fitness, ties to the lower id).
template <class Genome, class Fitness>
class EliteSet {
 public:
  using Evaluated = EvaluatedIndividual<Genome, Fitness>;

  explicit EliteSet(std::size_t capacity = 0) : capacity_(capacity) {}

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Evaluated>& members() const { return members_; }
  const Evaluated& best() const { return members_.front(); }
  const Evaluated& worst() const { return members_.back(); }

  /// Top-L of members ∪ returned.
  void update(std::span<const Evaluated> returned) {
    std::vector<Evaluated> merged = members_;
    merged.insert(merged.end(), returned.begin(), returned.end());
    std::sort(merged.begin(), merged.end(), rankedBefore<Genome, Fitness>);
    if (merged.size() > capacity_) merged.resize(capacity_);
    members_ = std::move(merged);
  }

 private:
  std::size_t capacity_;
  std::vector<Evaluated> members_;
};

template <class Genome, class Fitness>
EliteSet<Genome, Fitness> updateElites(EliteSet<Genome, Fitness> elites,
                                       std::span<const EvaluatedIndividual<Genome, Fitness>> returned) {
  elites.update(returned);
  return elites;
}

}  // namespace aes
