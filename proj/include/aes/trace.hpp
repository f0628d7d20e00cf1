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
#include <string>
#include <vector>

#include "aes/types.hpp"

namespace aes {

enum class TraceKind { Submit, Dispatch, Finish, Consume };

std::string_view toString(TraceKind kind);

/// One line of the event log. `workerId` is -1 for events without a worker
/// (submit, consume). `generation` is the individual's birth generation for
/// submit/dispatch/finish and the consuming engine generation for consume.
struct TraceEvent {
  Timestamp time = 0.0;
  TraceKind kind = TraceKind::Submit;
  std::int64_t workerId = -1;
  IndividualId individualId = 0;
  std::size_t generation = 0;
  std::size_t queueLen = 0;
  std::size_t inFlight = 0;

  bool operator==(const TraceEvent&) const = default;
};

using EventTrace = std::vector<TraceEvent>;

inline constexpr std::string_view kTraceHeader =
    "time,event,workerId,individualId,generation,queueLen,inFlight";

void writeTrace(std::ostream& out, const EventTrace& trace);
void writeTrace(const std::filesystem::path& path, const EventTrace& trace);

/// Throws ParseError naming the 1-based line number of the first bad row.
EventTrace readTrace(std::istream& in);
EventTrace readTrace(const std::filesystem::path& path);

}  // namespace aes
