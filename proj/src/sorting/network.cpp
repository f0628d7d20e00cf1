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

#include "aes/sorting/network.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <sstream>

namespace aes::sorting {

namespace {

constexpr std::array<std::uint64_t, 6> kLowLinePatterns = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

void checkEnumerable(const SortingNetwork& net) {
  if (net.nLines < 1) throw InputError("network needs at least one line");
  if (net.nLines > kMaxEnumeratedLines) {
    throw CapabilityError("cannot enumerate 2^" + std::to_string(net.nLines) +
                          " inputs; limit is " + std::to_string(kMaxEnumeratedLines) + " lines");
  }
}

}  // namespace

void checkInvariants(const SortingNetwork& net) {
  for (const auto& c : net.comparators) {
    if (!(0 <= c.lo && c.lo < c.hi && c.hi < net.nLines)) {
      throw InputError("comparator (" + std::to_string(c.lo) + "," + std::to_string(c.hi) +
                       ") out of bounds for " + std::to_string(net.nLines) + " lines");
    }
  }
}

SortingFitness evaluateNetwork(const SortingNetwork& net) {
  checkEnumerable(net);
  const int n = net.nLines;
  const std::size_t vectors = std::size_t{1} << n;
  const std::size_t words = std::max<std::size_t>(1, vectors / 64);
  const std::uint64_t tailMask = vectors >= 64 ? ~0ULL : (1ULL << vectors) - 1;

  // lines[i * words + w]: bit b is line i of input vector 64w + b.
  std::vector<std::uint64_t> lines(static_cast<std::size_t>(n) * words);
  for (int i = 0; i < n; ++i) {
    for (std::size_t w = 0; w < words; ++w) {
      lines[static_cast<std::size_t>(i) * words + w] =
          i < 6 ? kLowLinePatterns[static_cast<std::size_t>(i)]
                : (((w >> (i - 6)) & 1U) ? ~0ULL : 0ULL);
    }
  }
  for (const auto& c : net.comparators) {
    std::uint64_t* lo = &lines[static_cast<std::size_t>(c.lo) * words];
    std::uint64_t* hi = &lines[static_cast<std::size_t>(c.hi) * words];
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t a = lo[w];
      const std::uint64_t b = hi[w];
      lo[w] = a | b;
      hi[w] = a & b;
    }
  }
  std::size_t unsorted = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t bad = 0;
    for (int i = 0; i + 1 < n; ++i) {
      bad |= ~lines[static_cast<std::size_t>(i) * words + w] &
             lines[static_cast<std::size_t>(i + 1) * words + w];
    }
    unsorted += static_cast<std::size_t>(std::popcount(bad & tailMask));
  }
  return SortingFitness{static_cast<std::uint32_t>(vectors - unsorted),
                        static_cast<std::uint32_t>(vectors),
                        static_cast<std::uint32_t>(net.comparators.size())};
}

std::vector<std::uint32_t> failingInputs(const SortingNetwork& net) {
  checkEnumerable(net);
  std::vector<std::uint32_t> failing;
  const std::uint32_t vectors = 1U << net.nLines;
  std::vector<std::uint8_t> in(static_cast<std::size_t>(net.nLines));
  for (std::uint32_t x = 0; x < vectors; ++x) {
    for (int i = 0; i < net.nLines; ++i) in[static_cast<std::size_t>(i)] = (x >> i) & 1U;
    auto out = applyNetwork<std::uint8_t>(net, in);
    if (!std::is_sorted(out.begin(), out.end(), std::greater<>())) failing.push_back(x);
  }
  return failing;
}

SortingFitness evaluateNetworkReference(const SortingNetwork& net) {
  const auto failing = failingInputs(net);
  const std::uint32_t vectors = 1U << net.nLines;
  return SortingFitness{vectors - static_cast<std::uint32_t>(failing.size()), vectors,
                        static_cast<std::uint32_t>(net.comparators.size())};
}

std::string formatNetwork(const SortingNetwork& net) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < net.comparators.size(); ++i) {
    if (i) os << ',';
    os << '(' << net.comparators[i].lo << ',' << net.comparators[i].hi << ')';
  }
  os << ')';
  return os.str();
}

SortingNetwork parseNetwork(std::string_view text, int nLines) {
  SortingNetwork net{nLines, {}};
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  }
  auto fail = [&](const std::string& why) {
    throw InputError("bad network text '" + std::string(text) + "': " + why);
  };
  if (compact.size() < 2 || compact.front() != '(' || compact.back() != ')') {
    fail("must be wrapped in parentheses");
  }
  std::string_view body(compact);
  body = body.substr(1, body.size() - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    if (body[pos] != '(') fail("expected '('");
    const auto close = body.find(')', pos);
    if (close == std::string_view::npos) fail("unterminated comparator");
    std::string pair(body.substr(pos + 1, close - pos - 1));
    int lo = 0;
    int hi = 0;
    char comma = 0;
    std::istringstream is(pair);
    if (!(is >> lo >> comma >> hi) || comma != ',' || !is.eof()) fail("bad comparator");
    net.comparators.push_back({lo, hi});
    pos = close + 1;
    if (pos < body.size()) {
      if (body[pos] != ',') fail("expected ','");
      ++pos;
    }
  }
  checkInvariants(net);
  return net;
}

int knownOptimalSize(int nLines) {
  static constexpr std::array<int, 9> kSizes = {0, 0, 1, 3, 5, 9, 12, 16, 19};
  if (nLines < 0 || nLines > 8) return -1;
  return kSizes[static_cast<std::size_t>(nLines)];
}

SortingNetwork knownOptimalEightLine() {
  return SortingNetwork{8,
                        {{0, 2}, {1, 3}, {4, 6}, {5, 7}, {0, 4}, {1, 5}, {2, 6},
                         {3, 7}, {0, 1}, {2, 3}, {4, 5}, {6, 7}, {2, 4}, {3, 5},
                         {1, 4}, {3, 6}, {1, 2}, {3, 4}, {5, 6}}};
}

Comparator randomComparator(int nLines, Rng& rng) {
  const int a = static_cast<int>(rng.below(static_cast<std::size_t>(nLines)));
  int b = static_cast<int>(rng.below(static_cast<std::size_t>(nLines - 1)));
  if (b >= a) ++b;
  return {std::min(a, b), std::max(a, b)};
}

SortingNetwork mutateNetwork(const SortingNetwork& net, MutationKind kind, Rng& rng,
                             std::size_t maxLength) {
  SortingNetwork out = net;
  auto& cs = out.comparators;
  switch (kind) {
    case MutationKind::Insert: {
      if (cs.size() >= maxLength) break;
      const auto at = rng.below(cs.size() + 1);
      cs.insert(cs.begin() + static_cast<std::ptrdiff_t>(at), randomComparator(net.nLines, rng));
      break;
    }
    case MutationKind::Delete:
      if (!cs.empty()) cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(rng.below(cs.size())));
      break;
    case MutationKind::Replace:
      if (!cs.empty()) cs[rng.below(cs.size())] = randomComparator(net.nLines, rng);
      break;
  }
  return out;
}

SortingNetwork mutateNetwork(const SortingNetwork& net, Rng& rng, std::size_t maxLength) {
  if (net.nLines < 2) return net;
  std::array<MutationKind, 3> allowed{};
  std::size_t count = 0;
  if (net.comparators.size() < maxLength) allowed[count++] = MutationKind::Insert;
  if (!net.comparators.empty()) {
    allowed[count++] = MutationKind::Delete;
    allowed[count++] = MutationKind::Replace;
  }
  if (count == 0) return net;
  return mutateNetwork(net, allowed[rng.below(count)], rng, maxLength);
}

SortingNetwork crossoverNetworks(const SortingNetwork& a, const SortingNetwork& b, Rng& rng,
                                 std::size_t maxLength) {
  const auto cutA = rng.below(a.comparators.size() + 1);
  const auto cutB = rng.below(b.comparators.size() + 1);
  SortingNetwork child{a.nLines, {}};
  child.comparators.assign(a.comparators.begin(),
                           a.comparators.begin() + static_cast<std::ptrdiff_t>(cutA));
  child.comparators.insert(child.comparators.end(),
                           b.comparators.begin() + static_cast<std::ptrdiff_t>(cutB),
                           b.comparators.end());
  if (child.comparators.size() > maxLength) child.comparators.resize(maxLength);
  return child;
}

}  // namespace aes::sorting
