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

#ifndef CBCOV_TRACE_H_
#define CBCOV_TRACE_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ccfa.hpp"
#include "seqgen.hpp"

namespace cbcov {

// One instrumentation record: the tuple (t, s, k).
struct TraceRecord {
  std::int64_t timestamp_ms = 0;
  std::string callback;
  Point point = Point::Entry;

  bool operator==(const TraceRecord&) const = default;
};

// The timestamped entry/exit log of one execution. List order is the
// authoritative event order; timestamps are non-decreasing.
struct Trace {
  std::vector<TraceRecord> records;
  std::string source;

  bool operator==(const Trace&) const = default;
};

class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses the trace file format: one `(<t>, <signature>, <ENTRY|EXIT>)` per
// line, blank lines skipped. Throws TraceError with the line number for
// malformed lines, unknown point kinds and decreasing timestamps.
Trace parse_trace(const std::string& document, const std::string& source = "");

std::string render_trace(const Trace& trace);

// Order- and timestamp-preserving subsequence containing exactly the records
// whose callback kind is in `keep`. Callbacks missing from the kind map are
// dropped; a note per distinct callback lands in `warnings` when given.
Trace filter_by_kind(const Trace& trace, const std::set<CallbackKind>& keep,
                     const CallbackKindMap& kinds,
                     std::vector<std::string>* warnings = nullptr);

// True iff the sequence occurs as a contiguous run of records (callback and
// point; timestamps ignored). The trace must already carry the criterion's
// filter.
bool contains_sequence(const Trace& trace, const RequiredSequence& seq);

// The per-criterion trace filter: EventEvent/GuiPair keep {Event},
// EventApiAsync keeps {Event, ApiAsync}, EventApiSync matches unfiltered.
Trace filter_for_criterion(const Trace& trace, Criterion criterion,
                           const CallbackKindMap& kinds,
                           std::vector<std::string>* warnings = nullptr);

// Union over the traces of the required sequences each one covers, after
// applying the criterion's filter to each trace.
std::vector<RequiredSequence> covered_set(const RequiredSet& required,
                                          const std::vector<Trace>& traces,
                                          const CallbackKindMap& kinds);

}  // namespace cbcov

#endif  // CBCOV_TRACE_H_
