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

#include "render.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cbcov {

using nlohmann::ordered_json;

namespace {

std::string format_ratio(double ratio) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", ratio);
  return buffer;
}

std::string ratio_cell(const CoverageReport& report) {
  return report.vacuous ? "-" : format_ratio(report.ratio);
}

ordered_json coverage_json_object(const CoverageReport& report) {
  ordered_json obj;
  obj["criterion"] = criterion_name(report.criterion);
  obj["total"] = report.total;
  obj["covered"] = report.covered.size();
  obj["ratio"] = report.ratio;
  obj["uncovered"] = ordered_json::array();
  for (const RequiredSequence& seq : report.uncovered)
    obj["uncovered"].push_back(seq.render());
  return obj;
}

}  // namespace

std::string render_coverage_text(const CoverageReport& report) {
  std::ostringstream text;
  text << "criterion: " << criterion_name(report.criterion) << "\n";
  text << "total: " << report.total << "\n";
  text << "covered: " << report.covered.size() << "\n";
  text << "ratio: " << ratio_cell(report) << "\n";
  if (!report.uncovered.empty()) {
    text << "uncovered:\n";
    for (const RequiredSequence& seq : report.uncovered)
      text << "  " << seq.render() << "\n";
  }
  return text.str();
}

std::string render_coverage_json(const CoverageReport& report) {
  return coverage_json_object(report).dump(2) + "\n";
}

std::string render_report_text(
    const std::vector<CoverageReport>& reports, const TimeSeries& series,
    const std::map<Criterion, std::size_t>& correlations) {
  std::ostringstream text;
  text << "coverage by criterion\n";
  char row[128];
  std::snprintf(row, sizeof(row), "%-18s %8s %8s %8s\n", "criterion", "total",
                "covered", "ratio");
  text << row;
  for (const CoverageReport& report : reports) {
    std::snprintf(row, sizeof(row), "%-18s %8zu %8zu %8s\n",
                  criterion_name(report.criterion), report.total,
                  report.covered.size(), ratio_cell(report).c_str());
    text << row;
  }

  text << "\nsnapshots (window " << series.window_ms / 1000 << " s)\n";
  std::snprintf(row, sizeof(row), "%-8s", "end_s");
  text << row;
  for (const CoverageReport& report : reports) {
    std::snprintf(row, sizeof(row), " %16s", criterion_name(report.criterion));
    text << row;
  }
  text << "\n";
  for (const Snapshot& snapshot : series.snapshots) {
    std::snprintf(row, sizeof(row), "%-8lld",
                  static_cast<long long>(snapshot.window_end_ms / 1000));
    text << row;
    for (const CoverageReport& report : reports) {
      std::string cell = report.vacuous
                             ? "-"
                             : format_ratio(snapshot.ratios.at(report.criterion));
      std::snprintf(row, sizeof(row), " %16s", cell.c_str());
      text << row;
    }
    text << "\n";
  }

  text << "\nbug correlations (" << series.bugs.size() << " bug events)\n";
  std::snprintf(row, sizeof(row), "%-18s %8s\n", "criterion", "bugs");
  text << row;
  for (const CoverageReport& report : reports) {
    std::snprintf(row, sizeof(row), "%-18s %8zu\n",
                  criterion_name(report.criterion),
                  correlations.at(report.criterion));
    text << row;
  }
  return text.str();
}

std::string render_report_json(
    const std::vector<CoverageReport>& reports, const TimeSeries& series,
    const std::map<Criterion, std::size_t>& correlations) {
  ordered_json doc;
  doc["window_seconds"] = series.window_ms / 1000;
  doc["criteria"] = ordered_json::array();
  for (const CoverageReport& report : reports)
    doc["criteria"].push_back(coverage_json_object(report));
  doc["snapshots"] = ordered_json::array();
  for (const Snapshot& snapshot : series.snapshots) {
    ordered_json obj;
    obj["window_end_ms"] = snapshot.window_end_ms;
    obj["ratios"] = ordered_json::object();
    for (const CoverageReport& report : reports)
      obj["ratios"][criterion_name(report.criterion)] =
          snapshot.ratios.at(report.criterion);
    doc["snapshots"].push_back(std::move(obj));
  }
  doc["correlations"] = ordered_json::object();
  for (const CoverageReport& report : reports)
    doc["correlations"][criterion_name(report.criterion)] =
        correlations.at(report.criterion);
  return doc.dump(2) + "\n";
}

std::string render_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  std::string text;
  for (const Diagnostic& diag : diagnostics) {
    text += diag.severity == Diagnostic::Severity::Error ? "error: " : "warning: ";
    text += diag.message;
    text += '\n';
  }
  return text;
}

}  // namespace cbcov
