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

#include "aes/mux/rules.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <mutex>
#include <sstream>

#include "aes/errors.hpp"

namespace aes::mux {

namespace {

constexpr std::array<std::uint64_t, 6> kLowBitPatterns = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

/// Per-input-bit row masks: bits[b][w] has bit k set iff row 64w+k has input bit b set.
struct BitTables {
  std::size_t words = 0;
  std::uint64_t tailMask = ~0ULL;
  std::vector<std::vector<std::uint64_t>> bits;
  std::vector<std::uint64_t> truth;
};

BitTables buildTables(const MuxConfig& cfg) {
  BitTables t;
  const std::size_t rows = cfg.rows();
  t.words = std::max<std::size_t>(1, rows / 64);
  t.tailMask = rows >= 64 ? ~0ULL : (1ULL << rows) - 1;
  t.bits.assign(cfg.totalBits(), std::vector<std::uint64_t>(t.words));
  for (std::size_t b = 0; b < cfg.totalBits(); ++b) {
    for (std::size_t w = 0; w < t.words; ++w) {
      t.bits[b][w] = b < 6 ? kLowBitPatterns[b] : (((w >> (b - 6)) & 1U) ? ~0ULL : 0ULL);
    }
  }
  t.truth.assign(t.words, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (muxTruthRow(cfg, static_cast<std::uint32_t>(r))) t.truth[r / 64] |= 1ULL << (r % 64);
  }
  return t;
}

const BitTables& tablesFor(const MuxConfig& cfg) {
  static std::array<BitTables, kMaxAddressBits + 1> tables;
  static std::array<std::once_flag, kMaxAddressBits + 1> once;
  const auto u = static_cast<std::size_t>(cfg.u);
  std::call_once(once[u], [&] { tables[u] = buildTables(cfg); });
  return tables[u];
}

std::string bitName(const MuxConfig& cfg, std::size_t bit) {
  if (bit >= cfg.dataBits()) return "A" + std::to_string(bit - cfg.dataBits());
  return "D" + std::to_string(bit);
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::size_t parseBitName(const MuxConfig& cfg, std::string_view name, std::string_view whole) {
  auto fail = [&] { throw InputError("bad bit name '" + std::string(name) + "' in '" +
                                     std::string(whole) + "'"); };
  if (name.size() < 2 || (name[0] != 'A' && name[0] != 'D')) fail();
  std::size_t idx = 0;
  for (char ch : name.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) fail();
    idx = idx * 10 + static_cast<std::size_t>(ch - '0');
  }
  if (name[0] == 'A') {
    if (idx >= static_cast<std::size_t>(cfg.u)) fail();
    return cfg.addressBit(static_cast<int>(idx));
  }
  if (idx >= cfg.dataBits()) fail();
  return idx;
}

}  // namespace

void validate(const MuxConfig& cfg) {
  if (cfg.u < 1 || cfg.u > kMaxAddressBits) {
    throw ConfigError("multiplexer address bits must lie in 1.." + std::to_string(kMaxAddressBits));
  }
}

void checkInvariants(const MuxConfig& cfg, const RuleSet& rs) {
  if (rs.rules.size() > kMaxRules) throw InputError("rule set exceeds 256 rules");
  for (const auto& rule : rs.rules) {
    if (rule.conditions.size() > kMaxConditions) throw InputError("rule exceeds 64 conditions");
    if (rule.action >= cfg.dataBits()) throw InputError("action must name a data bit");
    for (const auto& c : rule.conditions) {
      if (c.bit >= cfg.totalBits()) throw InputError("condition bit out of range");
      if (c.value > 1) throw InputError("condition value must be 0 or 1");
    }
  }
}

std::uint32_t encodeRow(const MuxConfig& cfg, std::span<const std::uint8_t> bits) {
  if (bits.size() != cfg.totalBits()) {
    throw InputError("input length " + std::to_string(bits.size()) + " != " +
                     std::to_string(cfg.totalBits()));
  }
  std::uint32_t row = 0;
  for (auto b : bits) row = (row << 1) | (b ? 1U : 0U);
  return row;
}

int muxTruthRow(const MuxConfig& cfg, std::uint32_t row) {
  const std::uint32_t address = row >> cfg.dataBits();
  return static_cast<int>((row >> address) & 1U);
}

int muxTruth(const MuxConfig& cfg, std::span<const std::uint8_t> bits) {
  return muxTruthRow(cfg, encodeRow(cfg, bits));
}

bool conditionHolds(const Condition& c, std::uint32_t row) {
  const bool equal = ((row >> c.bit) & 1U) == c.value;
  return equal != c.negated;
}

bool ruleMatches(const Rule& rule, std::uint32_t row) {
  return std::all_of(rule.conditions.begin(), rule.conditions.end(),
                     [&](const Condition& c) { return conditionHolds(c, row); });
}

bool ruleMatches(const MuxConfig& cfg, const Rule& rule, std::span<const std::uint8_t> bits) {
  return ruleMatches(rule, encodeRow(cfg, bits));
}

MuxFitness evaluateRuleSet(const MuxConfig& cfg, const RuleSet& rs) {
  validate(cfg);
  const BitTables& t = tablesFor(cfg);
  const std::size_t words = t.words;
  std::vector<std::uint64_t> unclaimed(words, ~0ULL);
  std::vector<std::uint64_t> predicted(words, 0);
  std::vector<std::uint64_t> match(words);
  for (const auto& rule : rs.rules) {
    std::fill(match.begin(), match.end(), ~0ULL);
    for (const auto& c : rule.conditions) {
      const auto& mask = t.bits[c.bit];
      const bool wantSet = (c.value != 0) != c.negated;
      if (wantSet) {
        for (std::size_t w = 0; w < words; ++w) match[w] &= mask[w];
      } else {
        for (std::size_t w = 0; w < words; ++w) match[w] &= ~mask[w];
      }
    }
    const auto& data = t.bits[rule.action];
    for (std::size_t w = 0; w < words; ++w) {
      predicted[w] |= match[w] & unclaimed[w] & data[w];
      unclaimed[w] &= ~match[w];
    }
  }
  std::size_t correct = 0;
  for (std::size_t w = 0; w < words; ++w) {
    correct += static_cast<std::size_t>(std::popcount(~(predicted[w] ^ t.truth[w]) & t.tailMask));
  }
  return MuxFitness{static_cast<std::uint32_t>(correct)};
}

std::vector<std::uint8_t> predictAll(const MuxConfig& cfg, const RuleSet& rs) {
  validate(cfg);
  std::vector<std::uint8_t> out(cfg.rows(), 0);
  for (std::size_t r = 0; r < out.size(); ++r) {
    const auto row = static_cast<std::uint32_t>(r);
    for (const auto& rule : rs.rules) {
      if (ruleMatches(rule, row)) {
        out[r] = static_cast<std::uint8_t>((row >> rule.action) & 1U);
        break;
      }
    }
  }
  return out;
}

MuxFitness evaluateRuleSetReference(const MuxConfig& cfg, const RuleSet& rs) {
  const auto predicted = predictAll(cfg, rs);
  std::uint32_t correct = 0;
  for (std::size_t r = 0; r < predicted.size(); ++r) {
    if (predicted[r] == muxTruthRow(cfg, static_cast<std::uint32_t>(r))) ++correct;
  }
  return MuxFitness{correct};
}

std::string formatCondition(const MuxConfig& cfg, const Condition& c) {
  return std::string(c.negated ? "!" : "") + bitName(cfg, c.bit) + "=" + std::to_string(c.value);
}

std::string formatRule(const MuxConfig& cfg, const Rule& rule) {
  std::string out = "<";
  for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
    if (i) out += " & ";
    out += formatCondition(cfg, rule.conditions[i]);
  }
  out += "> -> D" + std::to_string(rule.action);
  return out;
}

std::string formatRuleSet(const MuxConfig& cfg, const RuleSet& rs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < rs.rules.size(); ++i) {
    if (i) out += sep;
    out += formatRule(cfg, rs.rules[i]);
  }
  return out;
}

Rule parseRule(const MuxConfig& cfg, std::string_view text) {
  auto fail = [&](const char* why) {
    throw InputError("bad rule '" + std::string(text) + "': " + why);
  };
  const auto open = text.find('<');
  const auto close = text.find('>');
  const auto arrow = text.find("->");
  if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
      arrow == std::string_view::npos || arrow < close) {
    fail("expected <conditions> -> Dk");
  }
  if (!trim(text.substr(0, open)).empty()) fail("text before '<'");
  Rule rule;
  std::string_view body = text.substr(open + 1, close - open - 1);
  if (!trim(body).empty()) {
    std::size_t start = 0;
    while (true) {
      const auto amp = body.find('&', start);
      std::string term =
          trim(body.substr(start, amp == std::string_view::npos ? body.size() - start : amp - start));
      Condition c;
      std::string_view tv(term);
      if (!tv.empty() && tv[0] == '!') {
        c.negated = true;
        tv.remove_prefix(1);
      }
      const auto eq = tv.find('=');
      if (eq == std::string_view::npos || eq + 2 != tv.size() || (tv[eq + 1] != '0' && tv[eq + 1] != '1')) {
        fail("condition must read X=0 or X=1");
      }
      c.bit = static_cast<std::uint16_t>(parseBitName(cfg, tv.substr(0, eq), text));
      c.value = static_cast<std::uint8_t>(tv[eq + 1] - '0');
      rule.conditions.push_back(c);
      if (amp == std::string_view::npos) break;
      start = amp + 1;
    }
  }
  if (!trim(text.substr(close + 1, arrow - close - 1)).empty()) fail("text between '>' and '->'");
  const std::string action = trim(text.substr(arrow + 2));
  if (action.empty() || action[0] != 'D') fail("action must be a data bit");
  rule.action = static_cast<std::uint16_t>(parseBitName(cfg, action, text));
  if (rule.conditions.size() > kMaxConditions) fail("more than 64 conditions");
  return rule;
}

RuleSet perfectRuleSet(const MuxConfig& cfg) {
  validate(cfg);
  RuleSet rs;
  for (std::size_t address = 0; address < cfg.dataBits(); ++address) {
    Rule rule;
    for (int i = cfg.u - 1; i >= 0; --i) {
      rule.conditions.push_back(Condition{static_cast<std::uint16_t>(cfg.addressBit(i)),
                                          static_cast<std::uint8_t>((address >> i) & 1U), false});
    }
    rule.action = static_cast<std::uint16_t>(address);
    rs.rules.push_back(std::move(rule));
  }
  return rs;
}

Condition randomCondition(const MuxConfig& cfg, Rng& rng) {
  return Condition{static_cast<std::uint16_t>(rng.below(cfg.totalBits())),
                   static_cast<std::uint8_t>(rng.below(2)), rng.chance(0.5)};
}

Rule randomRule(const MuxConfig& cfg, const MuxOperatorOptions& opts, Rng& rng) {
  Rule rule;
  const auto hi = std::min(opts.newRuleMaxConditions, opts.maxConditions);
  const auto lo = std::min(opts.newRuleMinConditions, hi);
  const auto n = static_cast<std::size_t>(
      rng.between(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  for (std::size_t i = 0; i < n; ++i) rule.conditions.push_back(randomCondition(cfg, rng));
  rule.action = static_cast<std::uint16_t>(rng.below(cfg.dataBits()));
  return rule;
}

RuleSet mutateRuleSet(const MuxConfig& cfg, const RuleSet& rs, MutationKind kind, Rng& rng,
                      const MuxOperatorOptions& opts) {
  RuleSet out = rs;
  auto& rules = out.rules;
  auto pickRule = [&]() -> Rule& { return rules[rng.below(rules.size())]; };
  switch (kind) {
    case MutationKind::AddRule:
      if (rules.size() < opts.maxRules) {
        const auto at = rng.below(rules.size() + 1);
        rules.insert(rules.begin() + static_cast<std::ptrdiff_t>(at), randomRule(cfg, opts, rng));
      }
      break;
    case MutationKind::DeleteRule:
      if (!rules.empty()) rules.erase(rules.begin() + static_cast<std::ptrdiff_t>(rng.below(rules.size())));
      break;
    case MutationKind::AddCondition:
      if (!rules.empty()) {
        Rule& r = pickRule();
        if (r.conditions.size() < opts.maxConditions) r.conditions.push_back(randomCondition(cfg, rng));
      }
      break;
    case MutationKind::DeleteCondition:
      if (!rules.empty()) {
        Rule& r = pickRule();
        if (!r.conditions.empty()) {
          r.conditions.erase(r.conditions.begin() +
                             static_cast<std::ptrdiff_t>(rng.below(r.conditions.size())));
        }
      }
      break;
    case MutationKind::FlipCondition:
      if (!rules.empty()) {
        Rule& r = pickRule();
        if (!r.conditions.empty()) {
          Condition& c = r.conditions[rng.below(r.conditions.size())];
          if (rng.chance(0.5)) {
            c.value ^= 1U;
          } else {
            c.negated = !c.negated;
          }
        }
      }
      break;
    case MutationKind::ChangeAction:
      if (!rules.empty()) pickRule().action = static_cast<std::uint16_t>(rng.below(cfg.dataBits()));
      break;
  }
  return out;
}

RuleSet mutateRuleSet(const MuxConfig& cfg, const RuleSet& rs, Rng& rng,
                      const MuxOperatorOptions& opts) {
  std::array<MutationKind, 6> allowed{};
  std::size_t count = 0;
  const bool anyRule = !rs.rules.empty();
  const bool anyCondition = std::any_of(rs.rules.begin(), rs.rules.end(),
                                        [](const Rule& r) { return !r.conditions.empty(); });
  if (rs.rules.size() < opts.maxRules) allowed[count++] = MutationKind::AddRule;
  if (anyRule) {
    allowed[count++] = MutationKind::DeleteRule;
    allowed[count++] = MutationKind::AddCondition;
    allowed[count++] = MutationKind::ChangeAction;
  }
  if (anyCondition) {
    allowed[count++] = MutationKind::DeleteCondition;
    allowed[count++] = MutationKind::FlipCondition;
  }
  if (count == 0) return rs;
  return mutateRuleSet(cfg, rs, allowed[rng.below(count)], rng, opts);
}

RuleSet crossoverRuleSets(const RuleSet& a, const RuleSet& b, Rng& rng,
                          const MuxOperatorOptions& opts) {
  auto span = [&](std::size_t n) {
    std::size_t i = rng.below(n + 1);
    std::size_t j = rng.below(n + 1);
    if (i > j) std::swap(i, j);
    return std::pair{i, j};
  };
  const auto [ai, aj] = span(a.rules.size());
  const auto [bi, bj] = span(b.rules.size());
  RuleSet child;
  child.rules.reserve(ai + (bj - bi) + (a.rules.size() - aj));
  child.rules.insert(child.rules.end(), a.rules.begin(), a.rules.begin() + static_cast<std::ptrdiff_t>(ai));
  child.rules.insert(child.rules.end(), b.rules.begin() + static_cast<std::ptrdiff_t>(bi),
                     b.rules.begin() + static_cast<std::ptrdiff_t>(bj));
  child.rules.insert(child.rules.end(), a.rules.begin() + static_cast<std::ptrdiff_t>(aj), a.rules.end());
  if (child.rules.size() > opts.maxRules) child.rules.resize(opts.maxRules);
  for (auto& r : child.rules) {
    if (r.conditions.size() > opts.maxConditions) r.conditions.resize(opts.maxConditions);
  }
  return child;
}

}  // namespace aes::mux
