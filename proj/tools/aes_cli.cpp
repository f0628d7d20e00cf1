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

// aes: experiment harness for the asynchronous evolution strategy.
//
//   aes run --config exp.json
//   aes sweep --domain sorting --M 2,10,50,250,1000 --K 1000 --L 1 --R 32 \
//       --repeats 10 --seed 42 --out results/
//   aes compare a.csv b.csv
//   aes histogram trace.csv --out hist/

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aes/bench/experiment.hpp"
#include "aes/bench/histogram.hpp"
#include "aes/bench/stats.hpp"
#include "aes/errors.hpp"
#include "aes/format.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kComparisonError = 3;

using namespace aes;
using namespace aes::bench;

void report(const ExperimentSpec& spec, const std::vector<RunRecord>& records) {
  if (spec.outputDir.empty()) {
    writeRecords(std::cout, records);
  } else {
    std::cout << "wrote " << records.size() << " records to " << (spec.outputDir / "runs.csv").string()
              << "\n";
  }
}

DelayModel delayFromName(const std::string& name, double unit) {
  if (name == "constant") return ConstantDelay{unit};
  if (name == "linear") return LinearInSizeDelay{unit};
  if (name == "gaussian") return GenerationGaussianDelay{};
  throw ConfigError("unknown delay model '" + name + "'");
}

void writeFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asynchronous evolution strategy experiment harness"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  std::string configPath;
  run->add_option("--config", configPath, "Experiment config file")->required();

  auto* sweep = app.add_subcommand("sweep", "Sweep M at fixed K, L, R");
  std::string domain = "sorting";
  std::vector<std::size_t> Ms;
  std::size_t K = 1000, L = 1, R = 32, repeats = 10, maxGenerations = 1000, maxEvaluations = 0;
  std::uint64_t seed = 0;
  std::string outDir;
  std::string delayName = "linear";
  double delayUnit = 1.0;
  double targetFitness = -1.0;
  bool traces = false;
  sweep->add_option("--domain", domain, "sorting, mux or cdn");
  sweep->add_option("--M", Ms, "Comma-separated batch sizes")->required()->delimiter(',');
  sweep->add_option("--K", K, "Queue population size");
  sweep->add_option("--L", L, "Elite count (cdn: elite percentage)");
  sweep->add_option("--R", R, "Worker count");
  sweep->add_option("--repeats", repeats, "Seeded repeats per M");
  sweep->add_option("--seed", seed, "Seed base");
  sweep->add_option("--out", outDir, "Output directory for runs.csv");
  sweep->add_option("--delay", delayName, "constant, linear or gaussian");
  sweep->add_option("--delay-unit", delayUnit, "Constant duration or per-unit cost");
  sweep->add_option("--max-generations", maxGenerations, "Generation cap per run");
  sweep->add_option("--max-evaluations", maxEvaluations, "Evaluation cap per run (0 = none)");
  sweep->add_option("--target-fitness", targetFitness, "cdn convergence threshold");
  sweep->add_flag("--traces", traces, "Write per-run event traces");

  auto* compare = app.add_subcommand("compare", "Compare converged times of two run CSVs");
  std::string csvA, csvB;
  compare->add_option("csvA", csvA, "Baseline group (speedup numerator is B's median)")->required();
  compare->add_option("csvB", csvB, "Other group")->required();

  auto* histogram = app.add_subcommand("histogram", "Export return-time and queue-delay tables");
  std::string tracePath;
  std::string histOut;
  std::size_t bins = 20;
  histogram->add_option("trace", tracePath, "Event trace CSV")->required();
  histogram->add_option("--out", histOut, "Directory for the two CSVs (default: next to trace)");
  histogram->add_option("--bins", bins, "Bins in the printed summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) {
      const auto spec = loadSpec(configPath);
      report(spec, runExperiment(spec));
    } else if (*sweep) {
      ExperimentSpec spec;
      spec.domain = parseDomain(domain);
      for (auto m : Ms) spec.grid.push_back({K, m, L, R});
      spec.delayModel = delayFromName(delayName, delayUnit);
      spec.repeats = repeats;
      spec.seedBase = seed;
      spec.stopRule.maxGenerations = maxGenerations;
      spec.stopRule.maxEvaluations = maxEvaluations;
      if (targetFitness >= 0.0) spec.stopRule.targetFitness = targetFitness;
      spec.outputDir = outDir;
      spec.writeTraces = traces;
      report(spec, runExperiment(spec));
    } else if (*compare) {
      std::vector<RunRecord> a, b;
      try {
        a = readRecords(std::filesystem::path(csvA));
        b = readRecords(std::filesystem::path(csvB));
      } catch (const std::runtime_error& e) {
        throw ComparisonError(e.what());
      }
      const auto c = compareRuns(a, b);
      for (const auto& w : c.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "test,medianA,medianB,speedup,pValue,nA,nB\n"
                << (c.exact ? "mann-whitney-exact" : "mann-whitney-normal") << ','
                << formatDouble(c.medianA) << ',' << formatDouble(c.medianB) << ','
                << formatDouble(c.speedup) << ',' << formatDouble(c.pValue) << ',' << c.usedA << ','
                << c.usedB << "\n";
    } else if (*histogram) {
      const std::filesystem::path trace(tracePath);
      const auto h = exportHistograms(readTrace(trace));
      const std::filesystem::path dir = histOut.empty() ? trace.parent_path() : std::filesystem::path(histOut);
      if (!dir.empty()) std::filesystem::create_directories(dir);
      const auto stem = trace.stem().string();
      writeFile(dir / (stem + "_return_times.csv"), h.returnTimesCsv());
      writeFile(dir / (stem + "_queue_delay.csv"), h.queueDelayCsv());
      const auto norm = h.normalizedReturnTimes();
      std::cout << "returns=" << norm.size() << " ks_uniform=" << formatFixed(ksDistanceToUniform(norm), 6)
                << " mean_queue_delay=" << formatFixed(h.meanQueueDelay(), 6) << "\n";
      const auto counts = binUnit(norm, bins);
      for (std::size_t i = 0; i < counts.size(); ++i) {
        std::cout << formatFixed(static_cast<double>(i) / static_cast<double>(bins), 3) << ','
                  << counts[i] << "\n";
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ComparisonError& e) {
    std::cerr << "comparison error: " << e.what() << "\n";
    return kComparisonError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
