// Copyright 2026 The cbcov Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trace.hpp"

#include <charconv>
#include <sstream>

namespace cbcov {

namespace {

std::string trim(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  std::size_t end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

[[noreturn]] void fail_line(const std::string& msg, std::size_t line) {
  throw TraceError(msg + " at line " + std::to_string(line));
}

}  // namespace

Trace parse_trace(const std::string& document, const std::string& source) {
  Trace trace;
  trace.source = source;
  std::istringstream stream(document);
  std::string line;
  std::size_t line_number = 0;
  std::int64_t previous = -1;
  while (std::getline(stream, line)) {
    ++line_number;
    std::string content = trim(line);
    if (content.empty()) continue;
    if (content.front() != '(' || content.back() != ')')
      fail_line("malformed trace record", line_number);
    content = content.substr(1, content.size() - 2);
    // The signature may itself contain commas; split on the first and the
    // last one.
    std::size_t first_comma = content.find(',');
    std::size_t last_comma = content.rfind(',');
    if (first_comma == std::string::npos || first_comma == last_comma)
      fail_line("malformed trace record", line_number);

    TraceRecord record;
    std::string ts_text = trim(content.substr(0, first_comma));
    auto [ptr, ec] = std::from_chars(ts_text.data(), ts_text.data() + ts_text.size(),
                                     record.timestamp_ms);
    if (ec != std::errc() || ptr != ts_text.data() + ts_text.size())
      fail_line("malformed timestamp", line_number);
    if (record.timestamp_ms < 0) fail_line("negative timestamp", line_number);
    if (record.timestamp_ms < previous)
      fail_line("decreasing timestamp", line_number);
    previous = record.timestamp_ms;

    record.callback = trim(content.substr(first_comma + 1, last_comma - first_comma - 1));
    if (record.callback.empty()) fail_line("empty callback signature", line_number);

    std::string point = trim(content.substr(last_comma + 1));
    if (point == "ENTRY") {
      record.point = Point::Entry;
    } else if (point == "EXIT") {
      record.point = Point::Exit;
    } else {
      fail_line("unknown point kind", line_number);
    }
    trace.records.push_back(std::move(record));
  }
  return trace;
}

std::string render_trace(const Trace& trace) {
  std::string text;
  for (const TraceRecord& record : trace.records) {
    text += "(" + std::to_string(record.timestamp_ms) + ", " + record.callback +
            ", " + (record.point == Point::Entry ? "ENTRY" : "EXIT") + ")\n";
  }
  return text;
}

Trace filter_by_kind(const Trace& trace, const std::set<CallbackKind>& keep,
                     const CallbackKindMap& kinds,
                     std::vector<std::string>* warnings) {
  Trace result;
  result.source = trace.source;
  std::set<std::string> unknown_reported;
  for (const TraceRecord& record : trace.records) {
    auto it = kinds.find(record.callback);
    if (it == kinds.end()) {
      if (warnings != nullptr && unknown_reported.insert(record.callback).second)
        warnings->push_back("dropping unknown callback \"" + record.callback +
                            "\" not in the CCFA");
      continue;
    }
    if (keep.count(it->second)) result.records.push_back(record);
  }
  return result;
}

bool contains_sequence(const Trace& trace, const RequiredSequence& seq) {
  if (seq.symbols.empty()) return true;
  if (trace.records.size() < seq.symbols.size()) return false;
  for (std::size_t start = 0;
       start + seq.symbols.size() <= trace.records.size(); ++start) {
    bool match = true;
    for (std::size_t k = 0; k < seq.symbols.size(); ++k) {
      const TraceRecord& record = trace.records[start + k];
      const EndpointSymbol& symbol = seq.symbols[k];
      if (record.callback != symbol.callback || record.point != symbol.point) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

Trace filter_for_criterion(const Trace& trace, Criterion criterion,
                           const CallbackKindMap& kinds,
                           std::vector<std::string>* warnings) {
  switch (criterion) {
    case Criterion::EventEvent:
    case Criterion::GuiPair:
      return filter_by_kind(trace, {CallbackKind::Event}, kinds, warnings);
    case Criterion::EventApiAsync:
      return filter_by_kind(
          trace, {CallbackKind::Event, CallbackKind::ApiAsync}, kinds, warnings);
    case Criterion::EventApiSync:
      // Consecutive on the CCFA means consecutive in the trace; no filter.
      return filter_by_kind(
          trace,
          {CallbackKind::Event, CallbackKind::ApiSync, CallbackKind::ApiAsync},
          kinds, warnings);
  }
  return trace;
}

std::vector<RequiredSequence> covered_set(const RequiredSet& required,
                                          const std::vector<Trace>& traces,
                                          const CallbackKindMap& kinds) {
  std::vector<Trace> filtered;
  filtered.reserve(traces.size());
  for (const Trace& trace : traces)
    filtered.push_back(filter_for_criterion(trace, required.criterion, kinds));

  std::vector<RequiredSequence> covered;
  for (const RequiredSequence& seq : required.sequences) {
    for (const Trace& trace : filtered) {
      if (contains_sequence(trace, seq)) {
        covered.push_back(seq);
        break;
      }
    }
  }
  return covered;
}

}  // namespace cbcov
