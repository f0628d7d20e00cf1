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

#include <algorithm>
#include <atomic>
#include <set>

#include "aes/engine.hpp"
#include "aes/sim_cluster.hpp"
#include "aes/thread_pool_executor.hpp"
#include "support/onemax.hpp"

using namespace aes;
using aes::testing::OneMax;

namespace {

std::vector<Individual<OneMax::Genome>> batchOf(std::size_t n, IndividualId firstId = 0) {
  std::vector<Individual<OneMax::Genome>> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({firstId + i, OneMax::Genome(4 + i % 5, 1), 0, {}});
  }
  return out;
}

std::set<IndividualId> ids(const std::vector<EvaluatedIndividual<OneMax::Genome, int>>& batch) {
  std::set<IndividualId> s;
  for (const auto& e : batch) s.insert(e.id());
  return s;
}

}  // namespace

TEST_CASE("thread pool evaluates everything it is given") {
  OneMax dom;
  ThreadPoolExecutor<OneMax> pool(dom, {4, ConstantDelay{1.0}, 0});
  pool.submit(batchOf(50));
  const auto got = pool.awaitBatch(50);
  CHECK(got.size() == 50);
  CHECK(ids(got).size() == 50);
  for (const auto& e : got) {
    CHECK(e.fitness == dom.evaluate(e.individual.genome));
    CHECK_FALSE(e.failed);
    CHECK(e.dispatchTime >= e.submitTime);
    CHECK(e.finishTime >= e.dispatchTime);
  }
  CHECK(pool.idle());
  CHECK_THROWS_AS(pool.awaitBatch(1), ConfigError);
}

TEST_CASE("wall-clock and virtual-time executors consume the same batches") {
  // Constant 30 ms per evaluation with K = 12, R = 4, M = 4: every batch is
  // one wave of four, so batch membership is fixed by FIFO order alone.
  OneMax dom;
  AesConfig cfg;
  cfg.K = 12;
  cfg.M = 4;
  cfg.L = 2;
  cfg.rngSeed = 6;
  cfg.stopOnSolution = false;

  auto batches = [&](Executor<OneMax::Genome, int>& exec) {
    AesEngine<OneMax> engine(cfg, dom, exec);
    std::vector<std::set<IndividualId>> out;
    engine.setObserver([&](const StepRecord<OneMax::Genome, int>& rec) {
      std::set<IndividualId> s;
      for (const auto& r : rec.returned) s.insert(r.id());
      out.push_back(std::move(s));
    });
    engine.init();
    for (int g = 0; g < 6; ++g) engine.step();
    return out;
  };

  SimulatedCluster<OneMax> sim(dom, {4, ConstantDelay{1.0}, 0});
  ThreadPoolExecutor<OneMax> pool(dom, {4, ConstantDelay{1.0}, 0, 0.03});
  const auto virtualBatches = batches(sim);
  const auto wallBatches = batches(pool);
  CHECK(virtualBatches == wallBatches);
  CHECK(pool.now() >= 0.03 * 3);
}

TEST_CASE("a failed evaluation is retried once at the head of the queue") {
  OneMax dom;
  ThreadPoolOptions opts{2, ConstantDelay{1.0}, 0};
  opts.failure = [](std::size_t, IndividualId id, int attempt) { return id == 3 && attempt == 0; };
  ThreadPoolExecutor<OneMax> pool(dom, opts);
  pool.submit(batchOf(10));
  const auto got = pool.awaitBatch(10);
  CHECK(ids(got).size() == 10);
  for (const auto& e : got) CHECK_FALSE(e.failed);
  CHECK(pool.aliveWorkers() == 1);
}

TEST_CASE("a second failure returns the individual flagged with the worst fitness") {
  OneMax dom;
  ThreadPoolOptions opts{3, ConstantDelay{1.0}, 0};
  opts.failure = [](std::size_t, IndividualId id, int) { return id == 0; };
  ThreadPoolExecutor<OneMax> pool(dom, opts);
  pool.submit(batchOf(6));
  const auto got = pool.awaitBatch(6);
  const auto it = std::find_if(got.begin(), got.end(), [](const auto& e) { return e.id() == 0; });
  REQUIRE(it != got.end());
  CHECK(it->failed);
  CHECK(it->fitness == dom.worstFitness());
  CHECK(pool.aliveWorkers() == 1);
}

TEST_CASE("losing every worker aborts the run") {
  OneMax dom;
  ThreadPoolOptions opts{2, ConstantDelay{1.0}, 0};
  opts.failure = [](std::size_t, IndividualId, int) { return true; };
  ThreadPoolExecutor<OneMax> pool(dom, opts);
  pool.submit(batchOf(5));
  CHECK_THROWS_AS(pool.awaitBatch(5), RunAborted);
  CHECK(pool.aliveWorkers() == 0);
}

TEST_CASE("thread pool trace keeps FIFO dispatch order on one worker") {
  OneMax dom;
  ThreadPoolExecutor<OneMax> pool(dom, {1, ConstantDelay{1.0}, 0});
  pool.submit(batchOf(8));
  pool.awaitBatch(8);
  std::vector<IndividualId> dispatched;
  for (const auto& e : pool.trace()) {
    if (e.kind == TraceKind::Dispatch) dispatched.push_back(e.individualId);
  }
  CHECK(dispatched == std::vector<IndividualId>{0, 1, 2, 3, 4, 5, 6, 7});
}
