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

#ifndef CBCOV_COVERAGE_H_
#define CBCOV_COVERAGE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ccfa.hpp"
#include "seqgen.hpp"
#include "trace.hpp"

namespace cbcov {

// |C| over |S| for one criterion. A criterion with an empty required set is
// vacuously satisfied: ratio 1, flagged so reports can print "-".
struct CoverageReport {
  Criterion criterion = Criterion::EventEvent;
  std::size_t total = 0;
  std::vector<RequiredSequence> covered;
  std::vector<RequiredSequence> uncovered;
  double ratio = 1.0;
  bool vacuous = true;
};

CoverageReport coverage_report(const RequiredSet& required,
                               const std::vector<Trace>& traces,
                               const CallbackKindMap& kinds);

struct BugEvent {
  std::int64_t timestamp_ms = 0;
  std::string id;

  bool operator==(const BugEvent&) const = default;
};

// Parses the bug-events file: one `<timestamp_ms> <bug-id>` per line.
std::vector<BugEvent> parse_bug_events(const std::string& document);

struct Snapshot {
  std::int64_t window_end_ms = 0;
  std::map<Criterion, double> ratios;
  std::map<Criterion, std::size_t> covered_counts;
};

// Windowed prefix coverage: snapshot k reports coverage over all records
// with timestamp <= k * window.
struct TimeSeries {
  std::int64_t window_ms = 0;
  std::vector<Snapshot> snapshots;
  std::vector<BugEvent> bugs;
  std::map<Criterion, std::size_t> totals;
};

TimeSeries time_series(const std::map<Criterion, RequiredSet>& required,
                       const std::vector<Trace>& traces,
                       const std::vector<BugEvent>& bugs,
                       std::int64_t window_seconds,
                       const CallbackKindMap& kinds);

// Per criterion, the number of bugs (first occurrence per id) whose window
// has a strictly greater ratio than the previous window's; the ratio before
// the first window counts as 0.
std::map<Criterion, std::size_t> correlate_bugs(const TimeSeries& series);

}  // namespace cbcov

#endif  // CBCOV_COVERAGE_H_
