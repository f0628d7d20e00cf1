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

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "aes/bench/experiment.hpp"
#include "aes/errors.hpp"

namespace aes::bench {

namespace {

using nlohmann::json;

void rejectUnknown(const json& obj, const std::string& where, std::set<std::string> known) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

DelayModel parseDelay(const json& j) {
  rejectUnknown(j, "delayModel",
                {"type", "t", "tUnit", "meanSlope", "meanIntercept", "stdSlope", "stdIntercept", "floor"});
  const auto type = j.at("type").get<std::string>();
  if (type == "constant") {
    ConstantDelay d;
    read(j, "t", d.t);
    return d;
  }
  if (type == "linear") {
    LinearInSizeDelay d;
    read(j, "tUnit", d.tUnit);
    return d;
  }
  if (type == "gaussian") {
    GenerationGaussianDelay d;
    read(j, "meanSlope", d.meanSlope);
    read(j, "meanIntercept", d.meanIntercept);
    read(j, "stdSlope", d.stdSlope);
    read(j, "stdIntercept", d.stdIntercept);
    read(j, "floor", d.floor);
    return d;
  }
  throw ConfigError("unknown delay model type '" + type + "' (expected constant, linear or gaussian)");
}

ExperimentSpec fromJson(const json& j) {
  rejectUnknown(j, "experiment",
                {"domain", "grid", "delayModel", "repeats", "seedBase", "stopRule", "outputDir",
                 "writeTraces", "crossoverRate", "mutationRate", "sorting", "mux", "cdn"});
  ExperimentSpec s;
  if (!j.contains("domain")) throw ConfigError("missing key 'domain'");
  s.domain = parseDomain(j.at("domain").get<std::string>());
  if (!j.contains("grid") || !j.at("grid").is_array()) throw ConfigError("'grid' must be an array");
  for (const auto& g : j.at("grid")) {
    rejectUnknown(g, "grid point", {"K", "M", "L", "R"});
    GridPoint p;
    read(g, "K", p.K);
    read(g, "M", p.M);
    read(g, "L", p.L);
    read(g, "R", p.R);
    s.grid.push_back(p);
  }
  if (j.contains("delayModel")) s.delayModel = parseDelay(j.at("delayModel"));
  read(j, "repeats", s.repeats);
  read(j, "seedBase", s.seedBase);
  if (j.contains("stopRule")) {
    const auto& r = j.at("stopRule");
    rejectUnknown(r, "stopRule", {"maxGenerations", "maxEvaluations", "targetFitness"});
    read(r, "maxGenerations", s.stopRule.maxGenerations);
    read(r, "maxEvaluations", s.stopRule.maxEvaluations);
    if (r.contains("targetFitness")) s.stopRule.targetFitness = r.at("targetFitness").get<double>();
  }
  if (j.contains("outputDir")) s.outputDir = j.at("outputDir").get<std::string>();
  read(j, "writeTraces", s.writeTraces);
  read(j, "crossoverRate", s.crossoverRate);
  read(j, "mutationRate", s.mutationRate);
  if (j.contains("sorting")) {
    const auto& o = j.at("sorting");
    rejectUnknown(o, "sorting", {"nLines", "maxLength", "initMinLength", "initMaxLength", "targetComparators"});
    read(o, "nLines", s.sorting.nLines);
    read(o, "maxLength", s.sorting.maxLength);
    read(o, "initMinLength", s.sorting.initMinLength);
    read(o, "initMaxLength", s.sorting.initMaxLength);
    read(o, "targetComparators", s.sorting.targetComparators);
  }
  if (j.contains("mux")) {
    const auto& o = j.at("mux");
    rejectUnknown(o, "mux", {"u", "initMinRules", "initMaxRules", "newRuleMinConditions",
                             "newRuleMaxConditions"});
    read(o, "u", s.mux.config.u);
    read(o, "initMinRules", s.mux.initMinRules);
    read(o, "initMaxRules", s.mux.initMaxRules);
    read(o, "newRuleMinConditions", s.mux.operators.newRuleMinConditions);
    read(o, "newRuleMaxConditions", s.mux.operators.newRuleMaxConditions);
  }
  if (j.contains("cdn")) {
    const auto& o = j.at("cdn");
    rejectUnknown(o, "cdn", {"blueprintPopulation", "modulePopulation", "blueprintSpecies",
                             "moduleSpecies", "noiseSigma"});
    read(o, "blueprintPopulation", s.cdn.blueprintPopulation);
    read(o, "modulePopulation", s.cdn.modulePopulation);
    read(o, "blueprintSpecies", s.cdn.blueprintSpecies);
    read(o, "moduleSpecies", s.cdn.moduleSpecies);
    read(o, "noiseSigma", s.cdn.noiseSigma);
  }
  return s;
}

}  // namespace

ExperimentSpec parseSpec(std::string_view text) {
  ExperimentSpec spec;
  try {
    spec = fromJson(json::parse(text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid experiment config: ") + e.what());
  }
  validate(spec);
  return spec;
}

ExperimentSpec loadSpec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parseSpec(ss.str());
}

}  // namespace aes::bench
