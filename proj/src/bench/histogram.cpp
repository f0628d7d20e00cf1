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

#include "aes/bench/histogram.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "aes/errors.hpp"
#include "aes/format.hpp"

namespace aes::bench {

HistogramExport exportHistograms(const EventTrace& trace) {
  struct Times {
    Timestamp submit = 0.0;
    std::optional<Timestamp> dispatch;
    std::optional<Timestamp> finish;
  };
  std::unordered_map<IndividualId, Times> times;
  std::map<std::size_t, Timestamp> consumeTime;
  std::vector<std::pair<IndividualId, std::size_t>> consumed;
  std::vector<IndividualId> dispatchOrder;

  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& e = trace[i];
    switch (e.kind) {
      case TraceKind::Submit:
        times[e.individualId] = Times{e.time, std::nullopt, std::nullopt};
        break;
      case TraceKind::Dispatch:
      case TraceKind::Finish: {
        auto it = times.find(e.individualId);
        if (it == times.end()) {
          throw ParseError("trace event " + std::to_string(i + 1) + " names unsubmitted individual " +
                           std::to_string(e.individualId));
        }
        if (e.kind == TraceKind::Dispatch) {
          // A retried individual keeps its first dispatch for queue delay.
          if (!it->second.dispatch) {
            it->second.dispatch = e.time;
            dispatchOrder.push_back(e.individualId);
          }
        } else {
          it->second.finish = e.time;
        }
        break;
      }
      case TraceKind::Consume:
        consumeTime.try_emplace(e.generation, e.time);
        consumed.emplace_back(e.individualId, e.generation);
        break;
    }
  }

  HistogramExport out;
  for (const auto& [id, gen] : consumed) {
    auto it = times.find(id);
    if (it == times.end() || !it->second.finish) continue;
    const Timestamp end = consumeTime.at(gen);
    Timestamp start = 0.0;
    if (gen > 0) {
      auto prev = consumeTime.find(gen - 1);
      if (prev != consumeTime.end()) start = prev->second;
    }
    const double width = end - start;
    double x = width > 0.0 ? (*it->second.finish - start) / width : 1.0;
    out.returnTimes.push_back({id, gen, *it->second.finish, std::clamp(x, 0.0, 1.0)});
  }
  for (IndividualId id : dispatchOrder) {
    const auto& t = times.at(id);
    out.queueDelays.push_back({id, t.submit, *t.dispatch, *t.dispatch - t.submit});
  }
  return out;
}

std::string HistogramExport::returnTimesCsv() const {
  std::ostringstream os;
  os << "individualId,generation,finishTime,normalized\n";
  for (const auto& r : returnTimes) {
    os << r.individualId << ',' << r.generation << ',' << formatDouble(r.finishTime) << ','
       << formatDouble(r.normalized) << '\n';
  }
  return os.str();
}

std::string HistogramExport::queueDelayCsv() const {
  std::ostringstream os;
  os << "individualId,submitTime,dispatchTime,delay\n";
  for (const auto& r : queueDelays) {
    os << r.individualId << ',' << formatDouble(r.submitTime) << ',' << formatDouble(r.dispatchTime)
       << ',' << formatDouble(r.delay) << '\n';
  }
  return os.str();
}

std::vector<double> HistogramExport::normalizedReturnTimes() const {
  std::vector<double> v;
  v.reserve(returnTimes.size());
  for (const auto& r : returnTimes) v.push_back(r.normalized);
  return v;
}

double HistogramExport::meanQueueDelay() const {
  if (queueDelays.empty()) return 0.0;
  double s = 0.0;
  for (const auto& r : queueDelays) s += r.delay;
  return s / static_cast<double>(queueDelays.size());
}

std::vector<std::size_t> binUnit(const std::vector<double>& values, std::size_t bins) {
  std::vector<std::size_t> counts(bins, 0);
  if (bins == 0) return counts;
  for (double v : values) {
    auto b = static_cast<std::size_t>(std::clamp(v, 0.0, 1.0) * static_cast<double>(bins));
    ++counts[std::min(b, bins - 1)];
  }
  return counts;
}

}  // namespace aes::bench
