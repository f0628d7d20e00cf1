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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aes/bench/experiment.hpp"
#include "aes/bench/histogram.hpp"
#include "aes/bench/stats.hpp"
#include "aes/engine.hpp"
#include "aes/errors.hpp"
#include "aes/sim_cluster.hpp"
#include "aes/sorting/domain.hpp"

using namespace aes;
using namespace aes::bench;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("aes_tests_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int runCli(const std::string& args) {
  const std::string cmd = std::string(AES_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ExperimentSpec sortingSweep() {
  ExperimentSpec spec;
  spec.domain = DomainKind::Sorting;
  for (std::size_t m : {2U, 10U, 50U, 250U, 1000U}) spec.grid.push_back({1000, m, 1, 32});
  spec.repeats = 10;
  spec.seedBase = 42;
  spec.stopRule.maxGenerations = 3;
  return spec;
}

}  // namespace

TEST_CASE("median and mean") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  CHECK(median({}) == 0.0);
  const std::vector<double> v{1, 2, 3, 6};
  CHECK(mean(v) == 3.0);
}

TEST_CASE("exact rank-sum null distribution") {
  const auto c = rankSumCounts(2, 2);
  CHECK(c == std::vector<double>{1, 1, 2, 1, 1});
  const auto big = rankSumCounts(10, 10);
  double total = 0.0;
  for (double x : big) total += x;
  CHECK(total == 184756.0);
}

TEST_CASE("Mann-Whitney on identical and disjoint groups") {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const auto same = mannWhitney(a, a);
  CHECK(same.pValue == doctest::Approx(1.0));

  std::vector<double> lo, hi;
  for (int i = 0; i < 10; ++i) {
    lo.push_back(i);
    hi.push_back(100 + i);
  }
  const auto r = mannWhitney(lo, hi);
  CHECK(r.exact);
  CHECK(r.U == 0.0);
  CHECK(r.pValue == doctest::Approx(2.0 / 184756.0));
  CHECK(r.pValue < 0.001);
  CHECK(mannWhitney(hi, lo).U == 100.0);
}

TEST_CASE("Mann-Whitney normal approximation agrees with the exact test on large untied samples") {
  Rng rng(1);
  std::vector<double> a, b;
  for (int i = 0; i < 40; ++i) a.push_back(rng.uniform());
  for (int i = 0; i < 40; ++i) b.push_back(rng.uniform() + 0.2);
  const auto exact = mannWhitney(a, b);
  REQUIRE(exact.exact);
  a.push_back(a.front());  // a tie forces the approximation
  const auto approx = mannWhitney(a, b);
  CHECK_FALSE(approx.exact);
  CHECK(approx.pValue == doctest::Approx(exact.pValue).epsilon(0.5));
}

TEST_CASE("compareTimes speedup and errors") {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{10, 20, 30};
  const auto c = compareTimes(a, b);
  CHECK(c.speedup == 10.0);
  CHECK(c.medianA == 2.0);
  CHECK(c.medianB == 20.0);
  const auto same = compareTimes(a, a);
  CHECK(same.speedup == 1.0);
  CHECK(same.pValue == doctest::Approx(1.0));
  const std::vector<double> none;
  CHECK_THROWS_AS(compareTimes(none, b), ComparisonError);
}

TEST_CASE("compareRuns drops non-converged runs with a warning") {
  std::vector<RunRecord> a(3), b(3);
  for (int i = 0; i < 3; ++i) {
    a[static_cast<std::size_t>(i)].convergedTime = 1.0 + i;
    b[static_cast<std::size_t>(i)].convergedTime = 10.0 * (1 + i);
  }
  b[0].convergedTime.reset();
  const auto c = compareRuns(a, b);
  CHECK(c.usedA == 3);
  CHECK(c.usedB == 2);
  CHECK_FALSE(c.warnings.empty());
  for (auto& r : a) r.convergedTime.reset();
  CHECK_THROWS_AS(compareRuns(a, b), ComparisonError);
}

TEST_CASE("KS distance to uniform") {
  std::vector<double> even;
  for (int i = 0; i < 100; ++i) even.push_back((i + 0.5) / 100.0);
  CHECK(ksDistanceToUniform(even) == doctest::Approx(0.005));
  CHECK(ksDistanceToUniform({1.0, 1.0, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("sorting sweep gives 50 records, mux sweep 30, single point 1") {
  const auto sorting = runExperiment(sortingSweep());
  CHECK(sorting.size() == 50);
  CHECK(sorting[0].point.M == 2);
  CHECK(sorting[0].seed == 42);
  CHECK(sorting[9].seed == 51);
  CHECK(sorting[10].point.M == 10);
  for (const auto& r : sorting) {
    CHECK(r.eliteMonotone);
    CHECK(r.populationConstant);
    CHECK(r.bestFitness >= 0.0);
    CHECK(r.bestFitness <= 1.0);
  }

  ExperimentSpec mux;
  mux.domain = DomainKind::Mux;
  for (std::size_t m : {500U, 1000U, 4000U}) mux.grid.push_back({4000, m, 100, 4000});
  mux.repeats = 10;
  mux.stopRule.maxGenerations = 1;
  CHECK(runExperiment(mux).size() == 30);

  ExperimentSpec one;
  one.grid.push_back({20, 5, 1, 4});
  one.stopRule.maxGenerations = 2;
  CHECK(runExperiment(one).size() == 1);
}

TEST_CASE("cdn grid point runs") {
  ExperimentSpec spec;
  spec.domain = DomainKind::Cdn;
  spec.grid.push_back({60, 20, 50, 20});
  spec.stopRule.maxGenerations = 5;
  spec.stopRule.targetFitness = 2.0;
  const auto recs = runExperiment(spec);
  REQUIRE(recs.size() == 1);
  CHECK_FALSE(recs[0].convergedTime);
  CHECK(recs[0].generations == 5);
  CHECK(recs[0].populationConstant);
  CHECK(recs[0].eliteMonotone);
}

TEST_CASE("rerunning a seeded experiment reproduces runs.csv byte for byte") {
  auto spec = sortingSweep();
  spec.grid.resize(2);
  spec.repeats = 3;
  spec.outputDir = scratch("rerun_a");
  spec.writeTraces = true;
  runExperiment(spec);
  const auto first = slurp(spec.outputDir / "runs.csv");
  spec.outputDir = scratch("rerun_b");
  runExperiment(spec);
  CHECK(slurp(spec.outputDir / "runs.csv") == first);
  CHECK(first.rfind(std::string(kRecordHeader) + "\n", 0) == 0);

  std::size_t traces = 0;
  for (const auto& e : fs::directory_iterator(spec.outputDir)) {
    traces += e.path().filename().string().rfind("trace_", 0) == 0 ? 1 : 0;
  }
  CHECK(traces == 6);
}

TEST_CASE("unwritable output directory fails before any run") {
  const auto dir = scratch("blocked");
  const auto file = dir / "not_a_dir";
  std::ofstream(file) << "x";
  ExperimentSpec spec;
  spec.grid.push_back({20, 5, 1, 4});
  spec.outputDir = file / "sub";
  CHECK_THROWS_AS(runExperiment(spec), IoError);
}

TEST_CASE("spec validation") {
  ExperimentSpec spec;
  CHECK_THROWS_AS(validate(spec), ConfigError);  // empty grid
  spec.grid.push_back({10, 11, 1, 4});
  CHECK_THROWS_AS(validate(spec), ConfigError);
  spec.grid[0] = {10, 5, 1, 4};
  spec.repeats = 0;
  CHECK_THROWS_AS(validate(spec), ConfigError);
  spec.repeats = 1;
  CHECK_NOTHROW(validate(spec));
  spec.domain = DomainKind::Cdn;
  spec.grid[0].L = 150;
  CHECK_THROWS_AS(validate(spec), ConfigError);
}

TEST_CASE("records round trip through CSV") {
  std::vector<RunRecord> recs(2);
  recs[0].point = {1000, 10, 1, 32};
  recs[0].seed = 3;
  recs[0].convergedTime = 123.5;
  recs[0].generations = 40;
  recs[0].bestFitness = 1.0;
  recs[0].meanUtilization = 0.987654;
  recs[1].domain = DomainKind::Mux;
  recs[1].generations = 7;
  const auto text = recordsCsv(recs);
  std::istringstream in(text);
  const auto back = readRecords(in);
  REQUIRE(back.size() == 2);
  CHECK(back[0].point == recs[0].point);
  CHECK(back[0].convergedTime == recs[0].convergedTime);
  CHECK(back[0].meanUtilization == doctest::Approx(0.987654));
  CHECK((back[1].domain == DomainKind::Mux));
  CHECK_FALSE(back[1].convergedTime);

  std::istringstream bad(std::string(kRecordHeader) + "\nsorting,1,2\n");
  try {
    readRecords(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("config parsing") {
  const auto spec = parseSpec(R"({
    "domain": "mux",
    "grid": [{"K": 4000, "M": 500, "L": 100, "R": 4000}],
    "delayModel": {"type": "constant", "t": 2},
    "repeats": 3,
    "seedBase": 7,
    "stopRule": {"maxGenerations": 10}
  })");
  CHECK((spec.domain == DomainKind::Mux));
  CHECK(spec.grid.size() == 1);
  CHECK(spec.repeats == 3);
  CHECK(spec.seedBase == 7);
  CHECK(std::get<ConstantDelay>(spec.delayModel).t == 2.0);

  CHECK_THROWS_AS(parseSpec("{"), ConfigError);
  CHECK_THROWS_AS(parseSpec(R"({"domain": "chess", "grid": [{"K": 2, "M": 1}]})"), ConfigError);
  CHECK_THROWS_AS(parseSpec(R"({"domain": "sorting", "grid": [{"K": 2, "M": 3}]})"), ConfigError);
  CHECK_THROWS_AS(parseSpec(R"({"domain": "sorting", "grid": [{"K": 2, "M": 1}], "typo": 1})"), ConfigError);
  CHECK_THROWS_AS(parseSpec(R"({"domain": "sorting", "grid": [{"K": 2, "M": 1}], "delayModel": {"type": "constant", "t": 0}})"),
                  ConfigError);
  CHECK_THROWS_AS(parseSpec(R"({"grid": [{"K": 2, "M": 1}]})"), ConfigError);
  CHECK_NOTHROW(parseSpec(R"({"domain": "sorting", "grid": [{"K": 2, "M": 1}]})"));
  CHECK_THROWS_AS(loadSpec("/nonexistent/exp.json"), ConfigError);
}

TEST_CASE("histogram export from a simulated trace") {
  sorting::SortingDomain dom;
  SimulatedCluster<sorting::SortingDomain> sim(dom, {8, LinearInSizeDelay{1.0}, 5});
  AesConfig cfg;
  cfg.K = 60;
  cfg.M = 20;
  cfg.L = 2;
  AesEngine<sorting::SortingDomain> engine(cfg, dom, sim);
  engine.init();
  for (int g = 0; g < 5; ++g) engine.step();
  const auto h = exportHistograms(sim.trace());
  CHECK(h.returnTimes.size() == 100);
  for (const auto& r : h.returnTimes) {
    CHECK(r.normalized >= 0.0);
    CHECK(r.normalized <= 1.0);
  }
  for (const auto& q : h.queueDelays) CHECK(q.delay >= 0.0);
  const auto bins = binUnit(h.normalizedReturnTimes(), 10);
  std::size_t total = 0;
  for (auto b : bins) total += b;
  CHECK(total == 100);
  CHECK(h.returnTimesCsv().find('\n') != std::string::npos);

  EventTrace broken{{1.0, TraceKind::Dispatch, 0, 9, 0, 0, 1}};
  CHECK_THROWS_AS(exportHistograms(broken), ParseError);
}

TEST_CASE("binUnit puts 1.0 in the last bin") {
  const auto b = binUnit({0.0, 0.5, 1.0}, 4);
  CHECK(b == std::vector<std::size_t>{1, 0, 1, 1});
}

TEST_CASE("command line exit codes") {
  const auto dir = scratch("cli");
  CHECK(runCli("--help") == 0);
  CHECK(runCli("bogus") == 2);
  CHECK(runCli("sweep --domain sorting --M 5 --K 20 --L 1 --R 4 --repeats 2 --max-generations 2 --out " +
               (dir / "a").string()) == 0);
  CHECK(fs::exists(dir / "a" / "runs.csv"));
  CHECK(runCli("sweep --domain sorting --M 30 --K 20") == 2);

  std::ofstream(dir / "bad.json") << "{\"domain\": \"sorting\", \"grid\": []}";
  CHECK(runCli("run --config " + (dir / "bad.json").string()) == 2);

  std::ofstream(dir / "good.json") << R"({"domain": "sorting", "grid": [{"K": 20, "M": 5, "L": 1, "R": 4}],
    "stopRule": {"maxGenerations": 2}, "outputDir": ")" << (dir / "b").string() << "\"}";
  CHECK(runCli("run --config " + (dir / "good.json").string()) == 0);

  // Neither group converged within two generations.
  CHECK(runCli("compare " + (dir / "a" / "runs.csv").string() + " " + (dir / "b" / "runs.csv").string()) == 3);
  CHECK(runCli("compare missing.csv other.csv") == 3);

  CHECK(runCli("sweep --domain sorting --M 5 --K 20 --R 4 --repeats 1 --max-generations 2 --traces --out " +
               (dir / "c").string()) == 0);
  fs::path trace;
  for (const auto& e : fs::directory_iterator(dir / "c")) {
    if (e.path().filename().string().rfind("trace_", 0) == 0) trace = e.path();
  }
  REQUIRE_FALSE(trace.empty());
  CHECK(runCli("histogram " + trace.string() + " --out " + (dir / "h").string()) == 0);
  CHECK(fs::exists(dir / "h" / (trace.stem().string() + "_return_times.csv")));
  CHECK(fs::exists(dir / "h" / (trace.stem().string() + "_queue_delay.csv")));
}
