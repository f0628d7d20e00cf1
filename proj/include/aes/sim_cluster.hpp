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
#include <deque>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "aes/batch_eval.hpp"
#include "aes/delay_model.hpp"
#include "aes/errors.hpp"
#include "aes/executor.hpp"
#include "aes/rng.hpp"

namespace aes {

struct SimOptions {
  std::size_t workers = 1;
  DelayModel delay = ConstantDelay{1.0};
  std::uint64_t seed = 0;
  /// Uniform worker speed; sampled durations are divided by it.
  double speed = 1.0;
  bool recordTrace = true;
};

/// Deterministic virtual-time cluster of R identical workers.
///
/// Single-threaded discrete-event loop. Finish events are ordered by
/// (time, workerId, individualId). Each individual's duration comes from a
/// stream seeded by (seed, individualId), so durations do not depend on
/// dispatch order.
template <Evaluator E>
class SimulatedCluster final : public Executor<typename E::Genome, typename E::Fitness> {
 public:
  using Genome = typename E::Genome;
  using Fitness = typename E::Fitness;
  using Evaluated = EvaluatedIndividual<Genome, Fitness>;
  /// Called after every dispatch and finish event.
  using Observer = std::function<void(const SimulatedCluster&, const TraceEvent&)>;

  SimulatedCluster(const E& evaluator, SimOptions options)
      : evaluator_(evaluator), options_(std::move(options)), workers_(options_.workers) {
    if (options_.workers == 0) throw ConfigError("worker count R must be positive");
    if (!(options_.speed > 0.0)) throw ConfigError("worker speed must be positive");
    validate(options_.delay);
  }

  void setObserver(Observer observer) { observer_ = std::move(observer); }

  void submit(std::vector<Individual<Genome>> batch) override {
    if (batch.empty()) return;
    auto fitness = evaluateBatch(evaluator_, std::span<const Individual<Genome>>(batch));
    for (std::size_t i = 0; i < batch.size(); ++i) {
      fitness_.emplace(batch[i].id, std::move(fitness[i]));
      const auto id = batch[i].id;
      const auto gen = batch[i].birthGeneration;
      queue_.push(std::move(batch[i]), now_);
      record({now_, TraceKind::Submit, -1, id, gen, queue_.size(), inFlight_});
    }
    dispatchIdle();
  }

  std::vector<Evaluated> awaitBatch(std::size_t m) override {
    if (m > this->outstanding()) {
      throw ConfigError("starvation: awaiting " + std::to_string(m) + " but only " +
                        std::to_string(this->outstanding()) + " outstanding");
    }
    while (returned_.size() < m) advance();
    std::vector<Evaluated> batch;
    batch.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      batch.push_back(std::move(returned_.front()));
      returned_.pop_front();
    }
    for (const auto& e : batch) {
      record({now_, TraceKind::Consume, -1, e.id(), batchesConsumed_, queue_.size(), inFlight_});
    }
    ++batchesConsumed_;
    return batch;
  }

  Timestamp now() const override { return now_; }
  std::size_t workerCount() const override { return workers_.size(); }
  std::size_t queued() const override { return queue_.size(); }
  std::size_t inFlight() const override { return inFlight_; }
  std::size_t returnedPending() const override { return returned_.size(); }
  const EventTrace& trace() const override { return trace_; }

  UtilizationReport utilization() const override {
    UtilizationReport report;
    report.totalTime = now_;
    for (const auto& w : workers_) {
      double busy = w.busyTime;
      if (w.current) busy += now_ - w.current->dispatchTime;
      report.perWorkerBusyFraction.push_back(now_ > 0.0 ? busy / now_ : 0.0);
      report.idleTime += now_ - busy;
    }
    for (std::size_t i = 1; i < finishTimes_.size(); ++i) {
      report.interReturnTimes.push_back(finishTimes_[i] - finishTimes_[i - 1]);
    }
    return report;
  }

  /// Time the given worker becomes free (its current finish, or the past).
  Timestamp busyUntil(std::size_t worker) const { return workers_.at(worker).busyUntil; }

 private:
  struct Running {
    Individual<Genome> individual;
    Timestamp submitTime = 0.0;
    Timestamp dispatchTime = 0.0;
  };
  struct Worker {
    std::optional<Running> current;
    double busyTime = 0.0;
    Timestamp busyUntil = 0.0;
  };
  struct FinishEvent {
    Timestamp time;
    std::size_t worker;
    IndividualId id;
    bool operator>(const FinishEvent& o) const {
      return std::tie(time, worker, id) > std::tie(o.time, o.worker, o.id);
    }
  };

  void record(const TraceEvent& e) {
    if (options_.recordTrace) trace_.push_back(e);
  }

  void notify(const TraceEvent& e) {
    if (observer_) observer_(*this, e);
  }

  void dispatchIdle() {
    for (std::size_t w = 0; w < workers_.size() && !queue_.empty(); ++w) {
      if (!workers_[w].current) dispatch(w);
    }
  }

  void dispatch(std::size_t w) {
    auto entry = queue_.pop();
    Rng rng(mixSeed(options_.seed, entry.individual.id));
    const double duration =
        sampleDelay(options_.delay, evaluator_.genomeSize(entry.individual.genome),
                    entry.individual.birthGeneration, rng) /
        options_.speed;
    const auto id = entry.individual.id;
    const auto gen = entry.individual.birthGeneration;
    workers_[w].busyUntil = now_ + duration;
    workers_[w].current = Running{std::move(entry.individual), entry.submitTime, now_};
    ++inFlight_;
    events_.push({now_ + duration, w, id});
    TraceEvent ev{now_, TraceKind::Dispatch, static_cast<std::int64_t>(w), id, gen,
                  queue_.size(), inFlight_};
    record(ev);
    notify(ev);
  }

  void advance() {
    // Outstanding work guarantees an event: queued entries imply busy workers.
    const FinishEvent ev = events_.top();
    events_.pop();
    now_ = ev.time;
    auto& worker = workers_[ev.worker];
    Running run = std::move(*worker.current);
    worker.current.reset();
    worker.busyTime += now_ - run.dispatchTime;
    --inFlight_;

    Evaluated out;
    out.fitness = std::move(fitness_.at(ev.id));
    fitness_.erase(ev.id);
    out.submitTime = run.submitTime;
    out.dispatchTime = run.dispatchTime;
    out.finishTime = now_;
    out.workerId = ev.worker;
    const auto gen = run.individual.birthGeneration;
    out.individual = std::move(run.individual);
    returned_.push_back(std::move(out));
    finishTimes_.push_back(now_);

    TraceEvent fe{now_, TraceKind::Finish, static_cast<std::int64_t>(ev.worker), ev.id, gen,
                  queue_.size(), inFlight_};
    record(fe);
    notify(fe);
    if (!queue_.empty()) dispatch(ev.worker);
  }

  const E& evaluator_;
  SimOptions options_;
  std::vector<Worker> workers_;
  EvaluationQueue<Genome> queue_;
  std::unordered_map<IndividualId, Fitness> fitness_;
  std::priority_queue<FinishEvent, std::vector<FinishEvent>, std::greater<>> events_;
  std::deque<Evaluated> returned_;
  std::vector<Timestamp> finishTimes_;
  EventTrace trace_;
  Observer observer_;
  Timestamp now_ = 0.0;
  std::size_t inFlight_ = 0;
  std::size_t batchesConsumed_ = 0;
};

}  // namespace aes
