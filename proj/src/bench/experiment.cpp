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

#include "aes/bench/experiment.hpp"

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>

#include "aes/bench/stats.hpp"
#include "aes/cdn/surrogate.hpp"
#include "aes/engine.hpp"
#include "aes/errors.hpp"
#include "aes/format.hpp"
#include "aes/sim_cluster.hpp"

namespace aes::bench {

std::string_view toString(DomainKind kind) {
  switch (kind) {
    case DomainKind::Sorting: return "sorting";
    case DomainKind::Mux: return "mux";
    case DomainKind::Cdn: return "cdn";
  }
  return "?";
}

DomainKind parseDomain(std::string_view name) {
  if (name == "sorting") return DomainKind::Sorting;
  if (name == "mux") return DomainKind::Mux;
  if (name == "cdn") return DomainKind::Cdn;
  throw ConfigError("unknown domain '" + std::string(name) + "' (expected sorting, mux or cdn)");
}

void validate(const ExperimentSpec& spec) {
  if (spec.repeats == 0) throw ConfigError("repeats must be at least 1");
  if (spec.grid.empty()) throw ConfigError("experiment grid is empty");
  for (const auto& p : spec.grid) {
    if (p.K == 0 || p.M == 0 || p.R == 0) throw ConfigError("K, M and R must be positive");
    if (p.M > p.K) {
      throw ConfigError("grid point M=" + std::to_string(p.M) + " exceeds K=" + std::to_string(p.K));
    }
    if (spec.domain == DomainKind::Cdn && (p.L == 0 || p.L > 100)) {
      throw ConfigError("cdn elite percentage L must lie in 1..100");
    }
  }
  if (spec.stopRule.maxGenerations == 0) throw ConfigError("stopRule.maxGenerations must be positive");
  validate(spec.delayModel);
}

namespace {

double score(const sorting::SortingFitness& f) { return f.sortedFraction(); }
double score(const mux::MuxFitness& f) { return static_cast<double>(f.correct); }

template <class D>
RunOutcome runEngine(const ExperimentSpec& spec, const D& domain, const GridPoint& p,
                     std::uint64_t seed, bool keepTrace) {
  SimulatedCluster<D> cluster(domain, SimOptions{p.R, spec.delayModel, seed, 1.0, keepTrace});
  AesConfig cfg;
  cfg.K = p.K;
  cfg.M = p.M;
  cfg.L = p.L;
  cfg.targetGenerations = spec.stopRule.maxGenerations;
  cfg.rngSeed = seed;
  cfg.stopOnSolution = true;
  cfg.crossoverRate = spec.crossoverRate;
  cfg.mutationRate = spec.mutationRate;
  AesEngine<D> engine(cfg, domain, cluster);

  RunOutcome out;
  std::optional<typename D::Fitness> lastElite;
  engine.setObserver([&](const StepRecord<typename D::Genome, typename D::Fitness>& rec) {
    if (rec.children.size() != p.M) out.record.populationConstant = false;
    if (!rec.elites.empty()) {
      const auto& best = rec.elites.best().fitness;
      if (lastElite && best < *lastElite) out.record.eliteMonotone = false;
      lastElite = best;
    }
  });
  engine.init();
  const std::size_t cap = spec.stopRule.maxEvaluations;
  while (engine.generation() < spec.stopRule.maxGenerations && !engine.converged() &&
         (cap == 0 || engine.totalSubmitted() < cap)) {
    const auto report = engine.step();
    out.bestPerGeneration.push_back(score(report.bestSoFar));
    out.timePerGeneration.push_back(report.time);
    out.record.bestFitness = score(report.bestSoFar);
  }
  out.record.convergedTime = engine.convergedTime();
  out.record.generations = engine.generation();
  out.record.evaluations = engine.totalSubmitted();
  out.record.elapsedTime = cluster.now();
  out.record.meanUtilization = cluster.utilization().meanBusyFraction();
  if (keepTrace) out.trace = cluster.trace();
  return out;
}

RunOutcome runCdn(const ExperimentSpec& spec, const GridPoint& p, std::uint64_t seed, bool keepTrace) {
  cdn::SurrogateTrainer trainer(cdn::SurrogateOptions{spec.cdn.noiseSigma, seed});
  SimulatedCluster<cdn::SurrogateTrainer> cluster(
      trainer, SimOptions{p.R, spec.delayModel, seed, 1.0, keepTrace});
  cdn::CdnConfig cfg;
  cfg.blueprintPopulation = spec.cdn.blueprintPopulation;
  cfg.modulePopulation = spec.cdn.modulePopulation;
  cfg.blueprintSpecies = spec.cdn.blueprintSpecies;
  cfg.moduleSpecies = spec.cdn.moduleSpecies;
  cfg.blueprintElitePercent = static_cast<double>(p.L) / 100.0;
  cfg.moduleElitePercent = cfg.blueprintElitePercent;
  cfg.K = p.K;
  cfg.M = p.M;
  cfg.targetGenerations = spec.stopRule.maxGenerations;
  cfg.seed = seed;
  cdn::CdnAes loop(cfg, cluster);

  RunOutcome out;
  loop.init();
  const std::size_t cap = spec.stopRule.maxEvaluations;
  double last = 0.0;
  std::size_t submitted = cfg.K;
  while (loop.generation() < spec.stopRule.maxGenerations && (cap == 0 || submitted < cap)) {
    const auto report = loop.step();
    submitted += cfg.M;
    if (report.bestSoFar < last) out.record.eliteMonotone = false;
    last = report.bestSoFar;
    if (report.blueprints != cfg.blueprintPopulation || report.modules != cfg.modulePopulation) {
      out.record.populationConstant = false;
    }
    out.bestPerGeneration.push_back(report.bestSoFar);
    out.timePerGeneration.push_back(report.time);
    out.record.bestFitness = report.bestSoFar;
    if (spec.stopRule.targetFitness && report.bestSoFar >= *spec.stopRule.targetFitness) {
      out.record.convergedTime = report.time;
      break;
    }
  }
  out.record.generations = loop.generation();
  out.record.evaluations = submitted;
  out.record.elapsedTime = cluster.now();
  out.record.meanUtilization = cluster.utilization().meanBusyFraction();
  if (keepTrace) out.trace = cluster.trace();
  return out;
}

std::string traceName(const RunRecord& r) {
  std::ostringstream os;
  os << "trace_" << toString(r.domain) << "_K" << r.point.K << "_M" << r.point.M << "_L"
     << r.point.L << "_R" << r.point.R << "_seed" << r.seed << ".csv";
  return os.str();
}

}  // namespace

RunOutcome runSingle(const ExperimentSpec& spec, const GridPoint& point, std::uint64_t seed,
                     bool keepTrace) {
  RunOutcome out;
  switch (spec.domain) {
    case DomainKind::Sorting: {
      sorting::SortingDomain domain(spec.sorting);
      out = runEngine(spec, domain, point, seed, keepTrace);
      break;
    }
    case DomainKind::Mux: {
      mux::MuxDomain domain(spec.mux);
      out = runEngine(spec, domain, point, seed, keepTrace);
      break;
    }
    case DomainKind::Cdn:
      out = runCdn(spec, point, seed, keepTrace);
      break;
  }
  out.record.domain = spec.domain;
  out.record.point = point;
  out.record.seed = seed;
  return out;
}

std::vector<RunRecord> runExperiment(const ExperimentSpec& spec) {
  validate(spec);
  const bool toDisk = !spec.outputDir.empty();
  std::ofstream csv;
  if (toDisk) {
    std::error_code ec;
    std::filesystem::create_directories(spec.outputDir, ec);
    csv.open(spec.outputDir / "runs.csv", std::ios::binary | std::ios::trunc);
    if (ec || !csv) {
      throw IoError("cannot write to output directory " + spec.outputDir.string());
    }
  }

  const std::size_t n = spec.grid.size() * spec.repeats;
  std::vector<RunRecord> records(n);
  std::vector<std::exception_ptr> errors(n);
  const bool traces = toDisk && spec.writeTraces;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      const auto& point = spec.grid[idx / spec.repeats];
      const std::uint64_t seed = spec.seedBase + idx % spec.repeats;
      auto outcome = runSingle(spec, point, seed, traces);
      if (traces) {
        const auto path = spec.outputDir / traceName(outcome.record);
        writeTrace(path, outcome.trace);
        outcome.record.eventTracePath = path.string();
      }
      records[idx] = std::move(outcome.record);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (toDisk) {
    writeRecords(csv, records);
    if (!csv) throw IoError("failed writing " + (spec.outputDir / "runs.csv").string());
  }
  return records;
}

void writeRecords(std::ostream& out, std::span<const RunRecord> records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    out << toString(r.domain) << ',' << r.point.K << ',' << r.point.M << ',' << r.point.L << ','
        << r.point.R << ',' << r.seed << ',';
    if (r.convergedTime) out << formatDouble(*r.convergedTime);
    out << ',' << r.generations << ',' << formatDouble(r.bestFitness) << ','
        << formatFixed(r.meanUtilization, 6) << '\n';
  }
}

std::string recordsCsv(std::span<const RunRecord> records) {
  std::ostringstream os;
  writeRecords(os, records);
  return os.str();
}

std::vector<RunRecord> readRecords(std::istream& in) {
  std::string line;
  std::size_t lineNo = 0;
  if (!std::getline(in, line)) throw ParseError("line 1: missing header");
  ++lineNo;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader) throw ParseError("line 1: unexpected header '" + line + "'");
  std::vector<RunRecord> out;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = splitCsvLine(line);
    if (f.size() != 10) {
      throw ParseError("line " + std::to_string(lineNo) + ": expected 10 fields, got " +
                       std::to_string(f.size()));
    }
    try {
      RunRecord r;
      r.domain = parseDomain(f[0]);
      r.point.K = std::stoull(std::string(f[1]));
      r.point.M = std::stoull(std::string(f[2]));
      r.point.L = std::stoull(std::string(f[3]));
      r.point.R = std::stoull(std::string(f[4]));
      r.seed = std::stoull(std::string(f[5]));
      if (!f[6].empty()) r.convergedTime = parseDouble(f[6]);
      r.generations = std::stoull(std::string(f[7]));
      r.bestFitness = parseDouble(f[8]);
      r.meanUtilization = parseDouble(f[9]);
      out.push_back(r);
    } catch (const std::exception& e) {
      throw ParseError("line " + std::to_string(lineNo) + ": " + e.what());
    }
  }
  return out;
}

std::vector<RunRecord> readRecords(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return readRecords(in);
}

Comparison compareTimes(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ComparisonError("comparison needs two non-empty groups");
  Comparison c;
  c.medianA = median({a.begin(), a.end()});
  c.medianB = median({b.begin(), b.end()});
  if (!(c.medianA > 0.0)) throw ComparisonError("median of group A is not positive");
  c.speedup = c.medianB / c.medianA;
  const auto test = mannWhitney(a, b);
  c.pValue = test.pValue;
  c.exact = test.exact;
  c.usedA = a.size();
  c.usedB = b.size();
  return c;
}

Comparison compareRuns(std::span<const RunRecord> a, std::span<const RunRecord> b) {
  std::vector<std::string> warnings;
  auto times = [&](std::span<const RunRecord> group, const char* name) {
    std::vector<double> t;
    std::size_t dropped = 0;
    for (const auto& r : group) {
      if (r.convergedTime) {
        t.push_back(*r.convergedTime);
      } else {
        ++dropped;
      }
    }
    if (dropped > 0) {
      warnings.push_back("group " + std::string(name) + ": excluded " + std::to_string(dropped) +
                         " non-converged run(s)");
    }
    if (t.empty()) {
      throw ComparisonError("group " + std::string(name) + " has no converged runs");
    }
    return t;
  };
  const auto ta = times(a, "A");
  const auto tb = times(b, "B");
  Comparison c = compareTimes(ta, tb);
  c.warnings = std::move(warnings);
  return c;
}

}  // namespace aes::bench
