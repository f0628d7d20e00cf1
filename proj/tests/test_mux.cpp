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

#include <doctest.h>

#include "aes/errors.hpp"
#include "aes/mux/domain.hpp"

using namespace aes;
using namespace aes::mux;

namespace {

const MuxConfig kCfg{};

RuleSet parseSet(std::initializer_list<const char*> rules) {
  RuleSet rs;
  for (const char* r : rules) rs.rules.push_back(parseRule(kCfg, r));
  return rs;
}

RuleSet randomSet(Rng& rng, std::size_t maxRules) {
  RuleSet rs;
  const auto n = rng.below(maxRules + 1);
  for (std::size_t i = 0; i < n; ++i) rs.rules.push_back(randomRule(kCfg, {}, rng));
  return rs;
}

}  // namespace

TEST_CASE("11-bit multiplexer truth table") {
  CHECK(kCfg.totalBits() == 11);
  CHECK(kCfg.rows() == 2048);
  // A2 A1 A0 = 1 1 0 selects D6.
  const std::vector<std::uint8_t> selectsD6{1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0};
  CHECK(muxTruth(kCfg, selectsD6) == 1);
  const std::vector<std::uint8_t> d6Clear{1, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1};
  CHECK(muxTruth(kCfg, d6Clear) == 0);
  const std::vector<std::uint8_t> shortRow{1, 0};
  CHECK_THROWS_AS(muxTruth(kCfg, shortRow), InputError);
}

TEST_CASE("address-decoding rule set is perfect") {
  const auto rs = perfectRuleSet(kCfg);
  CHECK(rs.size() == 8);
  CHECK(evaluateRuleSet(kCfg, rs).correct == 2048);
  MuxDomain dom;
  CHECK(dom.isSolution(evaluateRuleSet(kCfg, rs)));
}

TEST_CASE("empty rule set outputs 0 everywhere and gets half the rows") {
  CHECK(evaluateRuleSet(kCfg, RuleSet{}).correct == 1024);
}

TEST_CASE("a rule with no conditions matches every row") {
  const auto rs = parseSet({"<> -> D0"});
  // Right on all 256 rows addressing D0, and on half of the remaining 1792.
  CHECK(evaluateRuleSet(kCfg, rs).correct == 256 + 896);
}

TEST_CASE("negated condition and a rule for D6") {
  const Rule r = parseRule(kCfg, "<A0=0 & A1=1 & !A2=0> -> D6");
  REQUIRE(r.conditions.size() == 3);
  CHECK(r.conditions[2].negated);
  CHECK(r.action == 6);
  const std::vector<std::uint8_t> a110{1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  const std::vector<std::uint8_t> a010{0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(ruleMatches(kCfg, r, a110));
  CHECK_FALSE(ruleMatches(kCfg, r, a010));
  CHECK(evaluateRuleSet(kCfg, RuleSet{{r}}).correct == 256 + 896);
}

TEST_CASE("first matching rule wins") {
  const auto rs = parseSet({"<A0=0> -> D0", "<A0=0> -> D1"});
  const auto pred = predictAll(kCfg, rs);
  for (std::uint32_t row = 0; row < 2048; ++row) {
    const bool a0 = (row >> kCfg.addressBit(0)) & 1U;
    CHECK(pred[row] == (a0 ? 0 : (row & 1U)));
  }
}

TEST_CASE("two rules with one action express a disjunction") {
  const auto rs = parseSet({"<A2=1> -> D3", "<D5=1> -> D3"});
  const auto pred = predictAll(kCfg, rs);
  for (std::uint32_t row = 0; row < 2048; ++row) {
    const bool either = ((row >> kCfg.addressBit(2)) & 1U) || ((row >> 5) & 1U);
    CHECK(pred[row] == (either ? ((row >> 3) & 1U) : 0U));
  }
}

TEST_CASE("bit-sliced evaluation matches the row-by-row reference") {
  Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    const auto rs = randomSet(rng, 20);
    CHECK(evaluateRuleSet(kCfg, rs).correct == evaluateRuleSetReference(kCfg, rs).correct);
  }
  for (int u = 1; u <= kMaxAddressBits; ++u) {
    const MuxConfig cfg{u};
    CHECK(evaluateRuleSet(cfg, perfectRuleSet(cfg)).correct == cfg.rows());
    CHECK(evaluateRuleSetReference(cfg, RuleSet{}).correct == cfg.rows() / 2);
  }
}

TEST_CASE("format and parse round trip") {
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const Rule r = randomRule(kCfg, {}, rng);
    CHECK(parseRule(kCfg, formatRule(kCfg, r)) == r);
  }
  CHECK(formatRule(kCfg, parseRule(kCfg, "<> -> D7")) == "<> -> D7");
  CHECK_THROWS_AS(parseRule(kCfg, "<A0=2> -> D1"), InputError);
  CHECK_THROWS_AS(parseRule(kCfg, "<A0=1> -> A1"), InputError);
  CHECK_THROWS_AS(parseRule(kCfg, "<A9=1> -> D1"), InputError);
  CHECK_THROWS_AS(parseRule(kCfg, "A0=1 -> D1"), InputError);
}

TEST_CASE("operators clip to 256 rules") {
  Rng rng(5);
  RuleSet big;
  for (int i = 0; i < 200; ++i) big.rules.push_back(randomRule(kCfg, {}, rng));
  for (int t = 0; t < 200; ++t) {
    const auto c = crossoverRuleSets(big, big, rng);
    CHECK(c.size() <= kMaxRules);
  }
  RuleSet full;
  for (std::size_t i = 0; i < kMaxRules; ++i) full.rules.push_back(randomRule(kCfg, {}, rng));
  CHECK(mutateRuleSet(kCfg, full, MutationKind::AddRule, rng).size() == kMaxRules);
}

TEST_CASE("10k random operator applications keep the invariants") {
  MuxDomain dom;
  Rng rng(17);
  std::vector<RuleSet> pop;
  for (int i = 0; i < 20; ++i) pop.push_back(dom.randomGenome(rng));
  for (int i = 0; i < 10000; ++i) {
    auto& a = pop[rng.below(pop.size())];
    const auto& b = pop[rng.below(pop.size())];
    RuleSet c = rng.chance(0.5) ? dom.mutate(a, rng) : dom.crossover(a, b, rng);
    REQUIRE_NOTHROW(checkInvariants(kCfg, c));
    a = std::move(c);
  }
}

TEST_CASE("invalid configurations and rule sets are rejected") {
  CHECK_THROWS_AS(validate(MuxConfig{0}), ConfigError);
  CHECK_THROWS_AS(validate(MuxConfig{kMaxAddressBits + 1}), ConfigError);
  RuleSet bad{{Rule{{Condition{11, 1, false}}, 0}}};
  CHECK_THROWS_AS(checkInvariants(kCfg, bad), InputError);
  RuleSet badAction{{Rule{{}, 8}}};
  CHECK_THROWS_AS(checkInvariants(kCfg, badAction), InputError);
}
