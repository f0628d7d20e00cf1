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
#include <span>
#include <vector>

#include "aes/types.hpp"

namespace aes {

/// Serial reference: fitness of each individual, in order.
template <Evaluator E>
std::vector<typename E::Fitness> evaluateBatchSerial(
    const E& evaluator, std::span<const Individual<typename E::Genome>> batch) {
  std::vector<typename E::Fitness> out;
  out.reserve(batch.size());
  for (const auto& ind : batch) out.push_back(evaluator.evaluate(ind.genome));
  return out;
}

/// OpenMP kernel; evaluate() must be pure, so results match the serial path.
template <Evaluator E>
std::vector<typename E::Fitness> evaluateBatch(
    const E& evaluator, std::span<const Individual<typename E::Genome>> batch) {
  std::vector<typename E::Fitness> out(batch.size());
  const auto n = static_cast<std::ptrdiff_t>(batch.size());
#pragma omp parallel for schedule(dynamic, 4) if (n > 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = evaluator.evaluate(batch[static_cast<std::size_t>(i)].genome);
  }
  return out;
}

}  // namespace aes
