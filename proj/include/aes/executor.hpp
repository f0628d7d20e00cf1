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
#include <vector>

#include "aes/trace.hpp"
#include "aes/types.hpp"

namespace aes {

struct UtilizationReport {
  std::vector<double> perWorkerBusyFraction;
  /// Sum over workers of time spent without an individual.
  double idleTime = 0.0;
  /// Gaps between consecutive returns, in finish order.
  std::vector<double> interReturnTimes;
  double totalTime = 0.0;

  double meanBusyFraction() const;
};

/// Boundary between the evolutionary loop and its evaluation resources.
/// Only two blocking interactions exist: submit a batch and await returns.
template <class Genome, class Fitness>
class Executor {
 public:
  using Evaluated = EvaluatedIndividual<Genome, Fitness>;

  virtual ~Executor() = default;

  /// Appends to the evaluation queue (FIFO). Idle workers pull immediately.
  virtual void submit(std::vector<Individual<Genome>> batch) = 0;

  /// Blocks until `m` evaluations have returned; yields them in finish order.
  virtual std::vector<Evaluated> awaitBatch(std::size_t m) = 0;

  virtual Timestamp now() const = 0;
  virtual std::size_t workerCount() const = 0;
  virtual std::size_t queued() const = 0;
  virtual std::size_t inFlight() const = 0;
  /// Finished but not yet handed to the engine.
  virtual std::size_t returnedPending() const = 0;

  virtual UtilizationReport utilization() const = 0;
  virtual const EventTrace& trace() const = 0;

  std::size_t outstanding() const { return queued() + inFlight() + returnedPending(); }
  bool idle() const { return outstanding() == 0; }
};

/// Submitted, not yet dispatched. Dispatch order equals submission order.
template <class Genome>
class EvaluationQueue {
 public:
  struct Entry {
    Individual<Genome> individual;
    Timestamp submitTime = 0.0;
    /// Previous failed attempts (wall-clock executor only).
    int attempts = 0;
  };

  void push(Individual<Genome> ind, Timestamp now) {
    entries_.push_back(Entry{std::move(ind), now, 0});
  }
  void pushFront(Entry entry) { entries_.push_front(std::move(entry)); }

  Entry pop() {
    Entry e = std::move(entries_.front());
    entries_.pop_front();
    return e;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::deque<Entry> entries_;
};

}  // namespace aes
