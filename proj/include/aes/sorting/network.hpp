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
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aes/errors.hpp"
#include "aes/rng.hpp"

namespace aes::sorting {

/// Compare-exchange between lines lo < hi; the larger value ends on `lo`.
struct Comparator {
  int lo = 0;
  int hi = 1;
  bool operator==(const Comparator&) const = default;
  auto operator<=>(const Comparator&) const = default;
};

struct SortingNetwork {
  int nLines = 0;
  std::vector<Comparator> comparators;

  std::size_t size() const { return comparators.size(); }
  bool operator==(const SortingNetwork&) const = default;
  auto operator<=>(const SortingNetwork&) const = default;
};

/// Ranked lexicographically: more inputs sorted is better, then fewer
/// comparators. Only networks of equal line count are compared.
struct SortingFitness {
  std::uint32_t sortedCount = 0;
  std::uint32_t totalVectors = 1;
  std::uint32_t comparatorCount = 0;

  double sortedFraction() const {
    return static_cast<double>(sortedCount) / static_cast<double>(totalVectors);
  }
  bool valid() const { return sortedCount == totalVectors; }

  std::strong_ordering operator<=>(const SortingFitness& o) const {
    if (auto c = sortedCount <=> o.sortedCount; c != 0) return c;
    return o.comparatorCount <=> comparatorCount;
  }
  bool operator==(const SortingFitness& o) const = default;
};

inline constexpr int kMaxEnumeratedLines = 20;

/// Throws InputError on a comparator violating 0 <= lo < hi < nLines.
void checkInvariants(const SortingNetwork& net);

/// Applies comparators in order; larger values move toward lower indices.
template <class T>
std::vector<T> applyNetwork(const SortingNetwork& net, std::span<const T> input);

/// Zero-one principle evaluation over all 2^n binary vectors, bit-sliced:
/// each line holds one bit per input vector.
SortingFitness evaluateNetwork(const SortingNetwork& net);

/// Serial reference: sorts each binary vector one at a time.
SortingFitness evaluateNetworkReference(const SortingNetwork& net);

/// Binary input vectors (as line bitmasks) the network fails to sort.
std::vector<std::uint32_t> failingInputs(const SortingNetwork& net);

/// Text form: ((0,1),(2,3)); empty network is ().
std::string formatNetwork(const SortingNetwork& net);
SortingNetwork parseNetwork(std::string_view text, int nLines);

/// Smallest known comparator counts for n <= 8 (n = 8 needs 19).
int knownOptimalSize(int nLines);

/// The 19-comparator 8-line network from Knuth, TAOCP vol. 3.
SortingNetwork knownOptimalEightLine();

Comparator randomComparator(int nLines, Rng& rng);

enum class MutationKind { Insert, Delete, Replace };

SortingNetwork mutateNetwork(const SortingNetwork& net, Rng& rng, std::size_t maxLength = 64);
SortingNetwork mutateNetwork(const SortingNetwork& net, MutationKind kind, Rng& rng,
                             std::size_t maxLength = 64);
/// One-point cut on each parent, head of `a` + tail of `b`, truncated to maxLength.
SortingNetwork crossoverNetworks(const SortingNetwork& a, const SortingNetwork& b, Rng& rng,
                                 std::size_t maxLength = 64);

template <class T>
std::vector<T> applyNetwork(const SortingNetwork& net, std::span<const T> input) {
  if (input.size() != static_cast<std::size_t>(net.nLines)) {
    throw InputError("input length " + std::to_string(input.size()) + " does not match " +
                     std::to_string(net.nLines) + " lines");
  }
  std::vector<T> v(input.begin(), input.end());
  for (const auto& c : net.comparators) {
    if (v[static_cast<std::size_t>(c.lo)] < v[static_cast<std::size_t>(c.hi)]) {
      std::swap(v[static_cast<std::size_t>(c.lo)], v[static_cast<std::size_t>(c.hi)]);
    }
  }
  return v;
}

}  // namespace aes::sorting
