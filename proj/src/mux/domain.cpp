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

#include "aes/mux/domain.hpp"

#include "aes/errors.hpp"

namespace aes::mux {

MuxDomain::MuxDomain(MuxOptions options) : options_(options) {
  validate(options_.config);
  if (options_.initMinRules > options_.initMaxRules ||
      options_.initMaxRules > options_.operators.maxRules) {
    throw ConfigError("initial rule count range must satisfy min <= max <= maxRules");
  }
  if (options_.operators.maxRules > kMaxRules || options_.operators.maxConditions > kMaxConditions) {
    throw ConfigError("rule limits cannot exceed 256 rules / 64 conditions");
  }
}

RuleSet MuxDomain::randomGenome(Rng& rng) const {
  const auto n = static_cast<std::size_t>(
      rng.between(static_cast<std::int64_t>(options_.initMinRules),
                  static_cast<std::int64_t>(options_.initMaxRules)));
  RuleSet rs;
  rs.rules.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    rs.rules.push_back(randomRule(options_.config, options_.operators, rng));
  }
  return rs;
}

std::size_t MuxDomain::genomeSize(const RuleSet& g) const {
  std::size_t n = g.rules.size();
  for (const auto& r : g.rules) n += r.conditions.size();
  return n;
}

}  // namespace aes::mux
