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

#include "coverage.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace cbcov {

CoverageReport coverage_report(const RequiredSet& required,
                               const std::vector<Trace>& traces,
                               const CallbackKindMap& kinds) {
  CoverageReport report;
  report.criterion = required.criterion;
  report.total = required.sequences.size();
  report.covered = covered_set(required, traces, kinds);
  std::set<std::string> covered_keys;
  for (const RequiredSequence& seq : report.covered)
    covered_keys.insert(seq.render());
  for (const RequiredSequence& seq : required.sequences) {
    if (!covered_keys.count(seq.render())) report.uncovered.push_back(seq);
  }
  report.vacuous = report.total == 0;
  report.ratio = report.vacuous
                     ? 1.0
                     : static_cast<double>(report.covered.size()) /
                           static_cast<double>(report.total);
  return report;
}

std::vector<BugEvent> parse_bug_events(const std::string& document) {
  std::vector<BugEvent> bugs;
  std::istringstream stream(document);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::string ts_text, id;
    if (!(fields >> ts_text)) continue;  // blank line
    if (!(fields >> id))
      throw TraceError("missing bug id at line " + std::to_string(line_number));
    BugEvent bug;
    auto [ptr, ec] = std::from_chars(ts_text.data(), ts_text.data() + ts_text.size(),
                                     bug.timestamp_ms);
    if (ec != std::errc() || ptr != ts_text.data() + ts_text.size() ||
        bug.timestamp_ms < 0)
      throw TraceError("malformed bug timestamp at line " +
                       std::to_string(line_number));
    bug.id = id;
    bugs.push_back(std::move(bug));
  }
  return bugs;
}

TimeSeries time_series(const std::map<Criterion, RequiredSet>& required,
                       const std::vector<Trace>& traces,
                       const std::vector<BugEvent>& bugs,
                       std::int64_t window_seconds,
                       const CallbackKindMap& kinds) {
  if (window_seconds <= 0) throw TraceError("window must be positive");
  TimeSeries series;
  series.window_ms = window_seconds * 1000;
  series.bugs = bugs;
  for (const auto& [criterion, set] : required)
    series.totals[criterion] = set.sequences.size();

  std::int64_t max_ts = 0;
  for (const Trace& trace : traces)
    for (const TraceRecord& record : trace.records)
      max_ts = std::max(max_ts, record.timestamp_ms);
  for (const BugEvent& bug : bugs) max_ts = std::max(max_ts, bug.timestamp_ms);

  std::size_t count = static_cast<std::size_t>(
      (max_ts + series.window_ms - 1) / series.window_ms);
  if (count == 0) count = 1;

  for (std::size_t k = 1; k <= count; ++k) {
    Snapshot snapshot;
    snapshot.window_end_ms = static_cast<std::int64_t>(k) * series.window_ms;
    std::vector<Trace> prefix;
    prefix.reserve(traces.size());
    for (const Trace& trace : traces) {
      Trace cut;
      cut.source = trace.source;
      for (const TraceRecord& record : trace.records) {
        if (record.timestamp_ms <= snapshot.window_end_ms)
          cut.records.push_back(record);
      }
      prefix.push_back(std::move(cut));
    }
    for (const auto& [criterion, set] : required) {
      CoverageReport report = coverage_report(set, prefix, kinds);
      snapshot.ratios[criterion] = report.ratio;
      snapshot.covered_counts[criterion] = report.covered.size();
    }
    series.snapshots.push_back(std::move(snapshot));
  }
  return series;
}

std::map<Criterion, std::size_t> correlate_bugs(const TimeSeries& series) {
  std::map<Criterion, std::size_t> counts;
  for (const auto& [criterion, total] : series.totals) {
    (void)total;
    counts[criterion] = 0;
  }
  if (series.snapshots.empty()) return counts;

  // Only the first occurrence of each bug id counts.
  std::map<std::string, std::int64_t> first_seen;
  for (const BugEvent& bug : series.bugs) {
    auto it = first_seen.find(bug.id);
    if (it == first_seen.end() || bug.timestamp_ms < it->second)
      first_seen[bug.id] = bug.timestamp_ms;
  }

  for (const auto& [id, timestamp] : first_seen) {
    (void)id;
    std::size_t window = timestamp <= 0
                             ? 1
                             : static_cast<std::size_t>(
                                   (timestamp + series.window_ms - 1) /
                                   series.window_ms);
    if (window > series.snapshots.size()) window = series.snapshots.size();
    const Snapshot& current = series.snapshots[window - 1];
    for (const auto& [criterion, ratio] : current.ratios) {
      // A vacuously satisfied criterion is constant; it never increases.
      auto total = series.totals.find(criterion);
      if (total != series.totals.end() && total->second == 0) continue;
      double previous =
          window >= 2 ? series.snapshots[window - 2].ratios.at(criterion) : 0.0;
      if (ratio > previous) counts[criterion]++;
    }
  }
  return counts;
}

}  // namespace cbcov
