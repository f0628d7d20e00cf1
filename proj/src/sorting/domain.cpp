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

#include "aes/sorting/domain.hpp"

#include <algorithm>

#include "aes/errors.hpp"
#include "aes/format.hpp"

namespace aes::sorting {

SortingDomain::SortingDomain(SortingOptions options) : options_(options) {
  if (options_.nLines < 2 || options_.nLines > kMaxEnumeratedLines) {
    throw ConfigError("sorting domain needs 2.." + std::to_string(kMaxEnumeratedLines) + " lines");
  }
  if (options_.initMinLength > options_.initMaxLength ||
      options_.initMaxLength > options_.maxLength) {
    throw ConfigError("initial length range must satisfy min <= max <= maxLength");
  }
  target_ = options_.targetComparators >= 0 ? options_.targetComparators
                                            : knownOptimalSize(options_.nLines);
  if (target_ < 0) throw ConfigError("no known optimum for this line count; set targetComparators");
}

SortingNetwork SortingDomain::randomGenome(Rng& rng) const {
  const auto len = static_cast<std::size_t>(
      rng.between(static_cast<std::int64_t>(options_.initMinLength),
                  static_cast<std::int64_t>(options_.initMaxLength)));
  SortingNetwork net{options_.nLines, {}};
  net.comparators.reserve(len);
  for (std::size_t i = 0; i < len; ++i) net.comparators.push_back(randomComparator(net.nLines, rng));
  return net;
}

SortingNetwork SortingDomain::mutate(const SortingNetwork& g, Rng& rng) const {
  return mutateNetwork(g, rng, options_.maxLength);
}

SortingNetwork SortingDomain::crossover(const SortingNetwork& a, const SortingNetwork& b,
                                        Rng& rng) const {
  return crossoverNetworks(a, b, rng, options_.maxLength);
}

bool SortingDomain::isSolution(const SortingFitness& f) const {
  return f.valid() && static_cast<int>(f.comparatorCount) <= target_;
}

SortingFitness SortingDomain::worstFitness() const {
  return SortingFitness{0, 1U << options_.nLines, static_cast<std::uint32_t>(options_.maxLength)};
}

std::string SortingDomain::formatFitness(const SortingFitness& f) const {
  return formatFixed(f.sortedFraction(), 6) + ":" + std::to_string(f.comparatorCount);
}

}  // namespace aes::sorting
