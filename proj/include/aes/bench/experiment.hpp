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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aes/cdn/cdn_aes.hpp"
#include "aes/delay_model.hpp"
#include "aes/mux/domain.hpp"
#include "aes/sorting/domain.hpp"
#include "aes/trace.hpp"

namespace aes::bench {

enum class DomainKind { Sorting, Mux, Cdn };

std::string_view toString(DomainKind kind);
/// Throws ConfigError on an unknown name.
DomainKind parseDomain(std::string_view name);

/// One (K, M, L, R) configuration. For the cdn domain L is the elite
/// percentage applied to both populations.
struct GridPoint {
  std::size_t K = 1000;
  std::size_t M = 10;
  std::size_t L = 1;
  std::size_t R = 32;
  bool operator==(const GridPoint&) const = default;
};

struct StopRule {
  std::size_t maxGenerations = 1000;
  /// Stop once this many individuals were submitted; 0 disables the cap.
  std::size_t maxEvaluations = 0;
  /// cdn: converged once the best returned fitness reaches this value.
  /// The other domains converge on their own solution predicate.
  std::optional<double> targetFitness;
};

struct CdnSettings {
  std::size_t blueprintPopulation = 20;
  std::size_t modulePopulation = 60;
  std::size_t blueprintSpecies = 1;
  std::size_t moduleSpecies = 3;
  double noiseSigma = 0.02;
};

struct ExperimentSpec {
  DomainKind domain = DomainKind::Sorting;
  std::vector<GridPoint> grid;
  DelayModel delayModel = LinearInSizeDelay{1.0};
  std::size_t repeats = 1;
  std::uint64_t seedBase = 0;
  StopRule stopRule{};
  std::filesystem::path outputDir;
  bool writeTraces = false;
  double crossoverRate = 0.7;
  double mutationRate = 0.3;
  sorting::SortingOptions sorting{};
  mux::MuxOptions mux{};
  CdnSettings cdn{};
};

/// Throws ConfigError: repeats == 0, empty grid, M > K or a zero field.
void validate(const ExperimentSpec& spec);

struct RunRecord {
  DomainKind domain = DomainKind::Sorting;
  GridPoint point{};
  std::uint64_t seed = 0;
  std::optional<double> convergedTime;
  std::size_t generations = 0;
  double bestFitness = 0.0;
  double meanUtilization = 0.0;
  std::string eventTracePath;
  std::size_t evaluations = 0;
  double elapsedTime = 0.0;
  /// Elite best never decreased across generations.
  bool eliteMonotone = true;
  /// Every generation submitted exactly M (cdn: both populations kept N).
  bool populationConstant = true;
};

/// Full outcome of one seeded run, including the event trace.
struct RunOutcome {
  RunRecord record;
  EventTrace trace;
  /// Best fitness seen so far, then virtual time, per generation.
  std::vector<double> bestPerGeneration;
  std::vector<double> timePerGeneration;
};

/// Scalar reported as best_fitness: sortedFraction for sorting, correct
/// rows for mux, surrogate fitness for cdn.
RunOutcome runSingle(const ExperimentSpec& spec, const GridPoint& point, std::uint64_t seed,
                     bool keepTrace = false);

/// repeats x |grid| runs (seed = seedBase + repeat index), OpenMP parallel
/// across runs, records in grid-major order. With a non-empty outputDir,
/// writes runs.csv there (and per-run traces with writeTraces); an
/// unwritable directory raises IoError before any run starts.
std::vector<RunRecord> runExperiment(const ExperimentSpec& spec);

inline constexpr std::string_view kRecordHeader =
    "domain,K,M,L,R,seed,converged_time,generations,best_fitness,utilization";

void writeRecords(std::ostream& out, std::span<const RunRecord> records);
std::string recordsCsv(std::span<const RunRecord> records);
/// Throws ParseError naming the line of the first malformed row.
std::vector<RunRecord> readRecords(std::istream& in);
std::vector<RunRecord> readRecords(const std::filesystem::path& path);

/// JSON document whose keys mirror the ExperimentSpec fields. Throws
/// ConfigError on malformed or invalid configuration.
ExperimentSpec parseSpec(std::string_view json);
ExperimentSpec loadSpec(const std::filesystem::path& path);

struct Comparison {
  double medianA = 0.0;
  double medianB = 0.0;
  double speedup = 0.0;  ///< medianB / medianA
  double pValue = 1.0;
  bool exact = false;
  std::size_t usedA = 0;
  std::size_t usedB = 0;
  std::vector<std::string> warnings;
};

/// Mann-Whitney comparison of converged times. Non-converged runs are
/// dropped with a warning; an empty group afterwards throws ComparisonError.
Comparison compareRuns(std::span<const RunRecord> a, std::span<const RunRecord> b);
Comparison compareTimes(std::span<const double> a, std::span<const double> b);

}  // namespace aes::bench
