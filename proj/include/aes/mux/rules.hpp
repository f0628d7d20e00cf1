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
#include <vector>

#include "aes/rng.hpp"

namespace aes::mux {

inline constexpr std::size_t kMaxRules = 256;
inline constexpr std::size_t kMaxConditions = 64;
inline constexpr int kMaxAddressBits = 4;

/// Boolean u-address multiplexer. A row is encoded as the integer whose
/// binary digits read A_{u-1}..A_0 D_{2^u-1}..D_0 from most to least
/// significant, so D_j is bit j and A_i is bit 2^u + i.
struct MuxConfig {
  int u = 3;

  std::size_t dataBits() const { return std::size_t{1} << u; }
  std::size_t totalBits() const { return static_cast<std::size_t>(u) + dataBits(); }
  std::size_t rows() const { return std::size_t{1} << totalBits(); }
  /// log2 of the number of Boolean functions over totalBits inputs (2^2048 for u = 3).
  std::size_t functionSpaceLog2() const { return rows(); }

  std::size_t addressBit(int i) const { return dataBits() + static_cast<std::size_t>(i); }
  std::size_t dataBit(std::size_t j) const { return j; }
};

void validate(const MuxConfig& cfg);

/// `bit=value`, or with `negated` the `!bit=value` form, which holds
/// when the bit differs from value.
struct Condition {
  std::uint16_t bit = 0;
  std::uint8_t value = 0;
  bool negated = false;
  bool operator==(const Condition&) const = default;
  auto operator<=>(const Condition&) const = default;
};

struct Rule {
  std::vector<Condition> conditions;
  std::uint16_t action = 0;  ///< data-bit index
  bool operator==(const Rule&) const = default;
  auto operator<=>(const Rule&) const = default;
};

struct RuleSet {
  std::vector<Rule> rules;
  std::size_t size() const { return rules.size(); }
  bool operator==(const RuleSet&) const = default;
  auto operator<=>(const RuleSet&) const = default;
};

struct MuxFitness {
  std::uint32_t correct = 0;
  auto operator<=>(const MuxFitness&) const = default;
};

/// Throws InputError when a rule set breaks the size or index limits.
void checkInvariants(const MuxConfig& cfg, const RuleSet& rs);

std::uint32_t encodeRow(const MuxConfig& cfg, std::span<const std::uint8_t> bits);
int muxTruthRow(const MuxConfig& cfg, std::uint32_t row);
/// `bits` in written order A_{u-1}..A_0 D_{2^u-1}..D_0.
int muxTruth(const MuxConfig& cfg, std::span<const std::uint8_t> bits);

bool conditionHolds(const Condition& c, std::uint32_t row);
bool ruleMatches(const Rule& rule, std::uint32_t row);
bool ruleMatches(const MuxConfig& cfg, const Rule& rule, std::span<const std::uint8_t> bits);

/// First matching rule wins; no match outputs 0. Bit-sliced over all rows.
MuxFitness evaluateRuleSet(const MuxConfig& cfg, const RuleSet& rs);
/// Serial reference: one row at a time.
MuxFitness evaluateRuleSetReference(const MuxConfig& cfg, const RuleSet& rs);

/// Prediction per row, for tests comparing match sets.
std::vector<std::uint8_t> predictAll(const MuxConfig& cfg, const RuleSet& rs);

/// `<A0=0 & A1=1 & !A2=0> -> D6`; one rule per line in formatRuleSet.
std::string formatCondition(const MuxConfig& cfg, const Condition& c);
std::string formatRule(const MuxConfig& cfg, const Rule& rule);
std::string formatRuleSet(const MuxConfig& cfg, const RuleSet& rs, std::string_view sep = "; ");
Rule parseRule(const MuxConfig& cfg, std::string_view text);

/// The 8 address-decoding rules <A2=a & A1=b & A0=c> -> D(4a+2b+c), generalised to u.
RuleSet perfectRuleSet(const MuxConfig& cfg);

enum class MutationKind { AddRule, DeleteRule, AddCondition, DeleteCondition, FlipCondition,
                          ChangeAction };

struct MuxOperatorOptions {
  std::size_t maxRules = kMaxRules;
  std::size_t maxConditions = kMaxConditions;
  /// Conditions in a freshly generated rule (inclusive range).
  std::size_t newRuleMinConditions = 2;
  std::size_t newRuleMaxConditions = 4;
};

Condition randomCondition(const MuxConfig& cfg, Rng& rng);
Rule randomRule(const MuxConfig& cfg, const MuxOperatorOptions& opts, Rng& rng);

RuleSet mutateRuleSet(const MuxConfig& cfg, const RuleSet& rs, Rng& rng,
                      const MuxOperatorOptions& opts = {});
RuleSet mutateRuleSet(const MuxConfig& cfg, const RuleSet& rs, MutationKind kind, Rng& rng,
                      const MuxOperatorOptions& opts = {});
/// Replaces a random contiguous span of `a` with a random span of `b`.
RuleSet crossoverRuleSets(const RuleSet& a, const RuleSet& b, Rng& rng,
                          const MuxOperatorOptions& opts = {});

}  // namespace aes::mux
