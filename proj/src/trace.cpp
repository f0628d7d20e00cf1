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

#include "aes/trace.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "aes/errors.hpp"
#include "aes/format.hpp"

namespace aes {

std::string_view toString(TraceKind kind) {
  switch (kind) {
    case TraceKind::Submit: return "submit";
    case TraceKind::Dispatch: return "dispatch";
    case TraceKind::Finish: return "finish";
    case TraceKind::Consume: return "consume";
  }
  return "unknown";
}

void writeTrace(std::ostream& out, const EventTrace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& e : trace) {
    out << formatDouble(e.time) << ',' << toString(e.kind) << ',' << e.workerId << ','
        << e.individualId << ',' << e.generation << ',' << e.queueLen << ',' << e.inFlight
        << '\n';
  }
}

void writeTrace(const std::filesystem::path& path, const EventTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open trace file for writing: " + path.string());
  writeTrace(out, trace);
}

namespace {

TraceKind parseKind(std::string_view s, std::size_t line) {
  if (s == "submit") return TraceKind::Submit;
  if (s == "dispatch") return TraceKind::Dispatch;
  if (s == "finish") return TraceKind::Finish;
  if (s == "consume") return TraceKind::Consume;
  throw ParseError("trace line " + std::to_string(line) + ": unknown event '" + std::string(s) +
                   "'");
}

template <class T>
T parseNumber(std::string_view s, std::size_t line, const char* field) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("trace line " + std::to_string(line) + ": bad " + field + " '" +
                     std::string(s) + "'");
  }
  return value;
}

}  // namespace

EventTrace readTrace(std::istream& in) {
  EventTrace trace;
  std::string line;
  std::size_t lineNo = 0;
  if (!std::getline(in, line)) throw ParseError("trace line 1: missing header");
  ++lineNo;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) throw ParseError("trace line 1: unexpected header '" + line + "'");
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = splitCsvLine(line);
    if (fields.size() != 7) {
      throw ParseError("trace line " + std::to_string(lineNo) + ": expected 7 fields, got " +
                       std::to_string(fields.size()));
    }
    TraceEvent e;
    e.time = parseNumber<double>(fields[0], lineNo, "time");
    e.kind = parseKind(fields[1], lineNo);
    e.workerId = parseNumber<std::int64_t>(fields[2], lineNo, "workerId");
    e.individualId = parseNumber<IndividualId>(fields[3], lineNo, "individualId");
    e.generation = parseNumber<std::size_t>(fields[4], lineNo, "generation");
    e.queueLen = parseNumber<std::size_t>(fields[5], lineNo, "queueLen");
    e.inFlight = parseNumber<std::size_t>(fields[6], lineNo, "inFlight");
    trace.push_back(e);
  }
  return trace;
}

EventTrace readTrace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open trace file: " + path.string());
  return readTrace(in);
}

}  // namespace aes
