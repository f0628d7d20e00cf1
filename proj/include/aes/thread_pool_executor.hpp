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

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "aes/delay_model.hpp"
#include "aes/errors.hpp"
#include "aes/executor.hpp"
#include "aes/rng.hpp"

namespace aes {

/// Returns true when `worker` dies while evaluating `individual` on the
/// given attempt (0 = first try). Used to inject spot-instance style loss.
using FailurePredicate =
    std::function<bool(std::size_t worker, IndividualId individual, int attempt)>;

struct ThreadPoolOptions {
  std::size_t workers = 1;
  DelayModel delay = ConstantDelay{1.0};
  std::uint64_t seed = 0;
  /// Wall-clock seconds slept per unit of sampled delay.
  double secondsPerUnit = 0.0;
  FailurePredicate failure;
  bool recordTrace = true;
};

/// Wall-clock executor: R worker threads pull from one mutex-guarded FIFO
/// and push results onto a single ordered return channel.
///
/// A worker that dies requeues its individual at the queue head once; on a
/// second failure the individual comes back flagged `failed` with the
/// evaluator's worst fitness. When every worker has died, awaitBatch throws
/// RunAborted.
template <Evaluator E>
class ThreadPoolExecutor final : public Executor<typename E::Genome, typename E::Fitness> {
 public:
  using Genome = typename E::Genome;
  using Fitness = typename E::Fitness;
  using Evaluated = EvaluatedIndividual<Genome, Fitness>;

  ThreadPoolExecutor(const E& evaluator, ThreadPoolOptions options)
      : evaluator_(evaluator),
        options_(std::move(options)),
        start_(std::chrono::steady_clock::now()),
        busy_(options_.workers, 0.0),
        alive_(options_.workers) {
    if (options_.workers == 0) throw ConfigError("worker count R must be positive");
    if (options_.secondsPerUnit < 0.0) throw ConfigError("secondsPerUnit must be non-negative");
    validate(options_.delay);
    threads_.reserve(options_.workers);
    for (std::size_t w = 0; w < options_.workers; ++w) {
      threads_.emplace_back([this, w] { workerLoop(w); });
    }
  }

  ~ThreadPoolExecutor() override {
    {
      std::lock_guard lock(mutex_);
      stop_ = true;
    }
    work_.notify_all();
    for (auto& t : threads_) t.join();
  }

  ThreadPoolExecutor(const ThreadPoolExecutor&) = delete;
  ThreadPoolExecutor& operator=(const ThreadPoolExecutor&) = delete;

  void submit(std::vector<Individual<Genome>> batch) override {
    if (batch.empty()) return;
    {
      std::lock_guard lock(mutex_);
      const Timestamp t = clock();
      for (auto& ind : batch) {
        const auto id = ind.id;
        const auto gen = ind.birthGeneration;
        queue_.push(std::move(ind), t);
        record({t, TraceKind::Submit, -1, id, gen, queue_.size(), inFlight_});
      }
    }
    work_.notify_all();
  }

  std::vector<Evaluated> awaitBatch(std::size_t m) override {
    std::unique_lock lock(mutex_);
    const std::size_t outstanding = queue_.size() + inFlight_ + returned_.size();
    if (m > outstanding) {
      throw ConfigError("starvation: awaiting " + std::to_string(m) + " but only " +
                        std::to_string(outstanding) + " outstanding");
    }
    returnedCv_.wait(lock, [&] { return returned_.size() >= m || alive_ == 0; });
    if (returned_.size() < m) throw RunAborted("all workers failed before the batch completed");
    std::vector<Evaluated> batch;
    batch.reserve(m);
    const Timestamp t = clock();
    for (std::size_t i = 0; i < m; ++i) {
      batch.push_back(std::move(returned_.front()));
      returned_.pop_front();
      record({t, TraceKind::Consume, -1, batch.back().id(), batchesConsumed_, queue_.size(),
              inFlight_});
    }
    ++batchesConsumed_;
    return batch;
  }

  Timestamp now() const override { return clock(); }
  std::size_t workerCount() const override { return options_.workers; }
  std::size_t queued() const override {
    std::lock_guard lock(mutex_);
    return queue_.size();
  }
  std::size_t inFlight() const override {
    std::lock_guard lock(mutex_);
    return inFlight_;
  }
  std::size_t returnedPending() const override {
    std::lock_guard lock(mutex_);
    return returned_.size();
  }
  std::size_t aliveWorkers() const {
    std::lock_guard lock(mutex_);
    return alive_;
  }
  const EventTrace& trace() const override { return trace_; }

  UtilizationReport utilization() const override {
    std::lock_guard lock(mutex_);
    UtilizationReport report;
    report.totalTime = clock();
    for (double b : busy_) {
      report.perWorkerBusyFraction.push_back(report.totalTime > 0.0 ? b / report.totalTime : 0.0);
      report.idleTime += report.totalTime - b;
    }
    for (std::size_t i = 1; i < finishTimes_.size(); ++i) {
      report.interReturnTimes.push_back(finishTimes_[i] - finishTimes_[i - 1]);
    }
    return report;
  }

 private:
  Timestamp clock() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void record(const TraceEvent& e) {
    if (options_.recordTrace) trace_.push_back(e);
  }

  void workerLoop(std::size_t w) {
    while (true) {
      typename EvaluationQueue<Genome>::Entry entry;
      Timestamp dispatched = 0.0;
      {
        std::unique_lock lock(mutex_);
        work_.wait(lock, [&] { return stop_ || !queue_.empty(); });
        if (stop_) return;
        entry = queue_.pop();
        ++inFlight_;
        dispatched = clock();
        record({dispatched, TraceKind::Dispatch, static_cast<std::int64_t>(w), entry.individual.id,
                entry.individual.birthGeneration, queue_.size(), inFlight_});
      }

      Fitness fitness = evaluator_.evaluate(entry.individual.genome);
      Rng rng(mixSeed(options_.seed, entry.individual.id));
      const double units = sampleDelay(options_.delay, evaluator_.genomeSize(entry.individual.genome),
                                       entry.individual.birthGeneration, rng);
      if (options_.secondsPerUnit > 0.0) {
        std::this_thread::sleep_for(std::chrono::duration<double>(units * options_.secondsPerUnit));
      }
      const bool dies =
          options_.failure && options_.failure(w, entry.individual.id, entry.attempts);

      std::lock_guard lock(mutex_);
      const Timestamp finished = clock();
      busy_[w] += finished - dispatched;
      --inFlight_;
      if (dies) {
        --alive_;
        if (entry.attempts == 0) {
          entry.attempts = 1;
          queue_.pushFront(std::move(entry));
          work_.notify_one();
        } else {
          deliver(std::move(entry), evaluator_.worstFitness(), dispatched, finished, w, true);
        }
        returnedCv_.notify_all();
        return;
      }
      deliver(std::move(entry), std::move(fitness), dispatched, finished, w, false);
    }
  }

  // Requires mutex_ held.
  void deliver(typename EvaluationQueue<Genome>::Entry entry, Fitness fitness, Timestamp dispatched,
               Timestamp finished, std::size_t w, bool failed) {
    Evaluated out;
    out.fitness = std::move(fitness);
    out.submitTime = entry.submitTime;
    out.dispatchTime = dispatched;
    out.finishTime = finished;
    out.workerId = w;
    out.failed = failed;
    const auto id = entry.individual.id;
    const auto gen = entry.individual.birthGeneration;
    out.individual = std::move(entry.individual);
    returned_.push_back(std::move(out));
    finishTimes_.push_back(finished);
    record({finished, TraceKind::Finish, static_cast<std::int64_t>(w), id, gen, queue_.size(),
            inFlight_});
    returnedCv_.notify_all();
  }

  const E& evaluator_;
  ThreadPoolOptions options_;
  std::chrono::steady_clock::time_point start_;
  mutable std::mutex mutex_;
  std::condition_variable work_;
  std::condition_variable returnedCv_;
  EvaluationQueue<Genome> queue_;
  std::deque<Evaluated> returned_;
  std::vector<double> busy_;
  std::vector<Timestamp> finishTimes_;
  EventTrace trace_;
  std::vector<std::thread> threads_;
  std::size_t inFlight_ = 0;
  std::size_t alive_ = 0;
  std::size_t batchesConsumed_ = 0;
  bool stop_ = false;
};

}  // namespace aes
