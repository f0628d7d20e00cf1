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

// Times the evaluation kernels against their serial references:
//   sorting  row-at-a-time vs bit-sliced zero-one evaluation
//   mux      row-at-a-time vs bit-sliced truth-table evaluation
//   batch    serial loop vs OpenMP evaluateBatch
// and checks that every pair agrees.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "aes/batch_eval.hpp"
#include "aes/mux/domain.hpp"
#include "aes/sorting/domain.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds(const std::function<void()>& fn, int reps) {
  const auto start = Clock::now();
  for (int r = 0; r < reps; ++r) fn();
  return std::chrono::duration<double>(Clock::now() - start).count() / reps;
}

void row(const char* name, double reference, double fast, bool agree) {
  std::printf("%-22s %12.3f %12.3f %9.2fx  %s\n", name, reference * 1e3, fast * 1e3, reference / fast,
              agree ? "ok" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs bit-sliced vs OpenMP evaluation kernels"};
  std::size_t population = 1000;
  int reps = 5;
  app.add_option("--population", population, "Genomes per batch");
  app.add_option("--reps", reps, "Timing repetitions");
  CLI11_PARSE(app, argc, argv);

  aes::Rng rng(1);
  aes::sorting::SortingDomain sortingDom;
  aes::mux::MuxDomain muxDom;
  std::vector<aes::Individual<aes::sorting::SortingNetwork>> nets;
  std::vector<aes::Individual<aes::mux::RuleSet>> rules;
  for (std::size_t i = 0; i < population; ++i) {
    nets.push_back({i, sortingDom.randomGenome(rng), 0, {}});
    rules.push_back({i, muxDom.randomGenome(rng), 0, {}});
  }

  std::printf("population %zu, %d OpenMP threads, times in ms per batch\n", population, omp_get_max_threads());
  std::printf("%-22s %12s %12s %10s\n", "kernel", "reference", "fast", "speedup");

  std::vector<aes::sorting::SortingFitness> sa, sb;
  const double sRef = seconds([&] {
    sa.clear();
    for (const auto& n : nets) sa.push_back(aes::sorting::evaluateNetworkReference(n.genome));
  }, reps);
  const double sFast = seconds([&] {
    sb.clear();
    for (const auto& n : nets) sb.push_back(aes::sorting::evaluateNetwork(n.genome));
  }, reps);
  row("sorting bit-sliced", sRef, sFast, sa == sb);

  std::vector<aes::mux::MuxFitness> ma, mb;
  const double mRef = seconds([&] {
    ma.clear();
    for (const auto& r : rules) ma.push_back(aes::mux::evaluateRuleSetReference(muxDom.config(), r.genome));
  }, reps);
  const double mFast = seconds([&] {
    mb.clear();
    for (const auto& r : rules) mb.push_back(aes::mux::evaluateRuleSet(muxDom.config(), r.genome));
  }, reps);
  row("mux bit-sliced", mRef, mFast, ma == mb);

  std::span<const aes::Individual<aes::sorting::SortingNetwork>> netSpan(nets);
  const double bRef = seconds([&] { sa = aes::evaluateBatchSerial(sortingDom, netSpan); }, reps);
  const double bFast = seconds([&] { sb = aes::evaluateBatch(sortingDom, netSpan); }, reps);
  row("sorting batch OpenMP", bRef, bFast, sa == sb);

  std::span<const aes::Individual<aes::mux::RuleSet>> ruleSpan(rules);
  const double rRef = seconds([&] { ma = aes::evaluateBatchSerial(muxDom, ruleSpan); }, reps);
  const double rFast = seconds([&] { mb = aes::evaluateBatch(muxDom, ruleSpan); }, reps);
  row("mux batch OpenMP", rRef, rFast, ma == mb);
  return (sa == sb && ma == mb) ? 0 : 1;
}
