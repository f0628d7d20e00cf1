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
#include <string>
#include <vector>

#include "aes/trace.hpp"

namespace aes::bench {

/// Finish time of a consumed individual, normalized to the window between
/// the previous batch's consume time and the consume time of the batch
/// that took it.
struct ReturnTimeRow {
  IndividualId individualId = 0;
  std::size_t generation = 0;  ///< consuming batch
  Timestamp finishTime = 0.0;
  double normalized = 0.0;
};

struct QueueDelayRow {
  IndividualId individualId = 0;
  Timestamp submitTime = 0.0;
  Timestamp dispatchTime = 0.0;
  double delay = 0.0;
};

struct HistogramExport {
  std::vector<ReturnTimeRow> returnTimes;
  std::vector<QueueDelayRow> queueDelays;

  std::string returnTimesCsv() const;
  std::string queueDelayCsv() const;
  std::vector<double> normalizedReturnTimes() const;
  double meanQueueDelay() const;
};

/// Individuals that were never consumed contribute no return-time row;
/// individuals never dispatched contribute no queue-delay row. Throws
/// ParseError on a trace that dispatches or finishes an unknown individual.
HistogramExport exportHistograms(const EventTrace& trace);

/// Counts of `values` in [0, 1] over `bins` equal bins; 1.0 lands in the last.
std::vector<std::size_t> binUnit(const std::vector<double>& values, std::size_t bins);

}  // namespace aes::bench
