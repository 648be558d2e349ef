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

#ifndef CBCOV_RENDER_H_
#define CBCOV_RENDER_H_

#include <map>
#include <string>
#include <vector>

#include "coverage.hpp"

namespace cbcov {

// All renderings are deterministic: same inputs, byte-identical output.
// Vacuous criteria print "-" in tables; JSON keeps ratio 1 with total 0.

std::string render_coverage_text(const CoverageReport& report);
std::string render_coverage_json(const CoverageReport& report);

std::string render_report_text(
    const std::vector<CoverageReport>& reports, const TimeSeries& series,
    const std::map<Criterion, std::size_t>& correlations);
std::string render_report_json(
    const std::vector<CoverageReport>& reports, const TimeSeries& series,
    const std::map<Criterion, std::size_t>& correlations);

std::string render_diagnostics(const std::vector<Diagnostic>& diagnostics);

}  // namespace cbcov

#endif  // CBCOV_RENDER_H_
