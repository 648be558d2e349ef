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

#include "cbcov/cbcov.h"

#include <cstring>
#include <set>
#include <string>

#include "ccfa.hpp"
#include "coverage.hpp"
#include "render.hpp"
#include "seqgen.hpp"
#include "simulate.hpp"
#include "trace.hpp"

struct cbcov_ccfa {
  cbcov::Ccfa model;
};

struct cbcov_trace {
  cbcov::Trace trace;
};

struct cbcov_sequences {
  cbcov::RequiredSet set;
};

namespace {

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void set_error(char** slot, const std::string& message) {
  if (slot != nullptr) *slot = copy_string(message);
}

bool parse_criterion(const std::string& name, cbcov::Criterion* out) {
  using cbcov::Criterion;
  if (name == "event-event") {
    *out = Criterion::EventEvent;
  } else if (name == "event-api-sync") {
    *out = Criterion::EventApiSync;
  } else if (name == "event-api-async") {
    *out = Criterion::EventApiAsync;
  } else if (name == "gui") {
    *out = Criterion::GuiPair;
  } else {
    return false;
  }
  return true;
}

cbcov::RequiredSet generate(const cbcov::Ccfa& ccfa, cbcov::Criterion criterion,
                            bool include_self_pairs) {
  cbcov::SeqGenOptions options;
  options.include_self_pairs = include_self_pairs;
  switch (criterion) {
    case cbcov::Criterion::EventEvent:
      return cbcov::gen_event_event(ccfa, options);
    case cbcov::Criterion::GuiPair:
      return cbcov::gen_gui_pairs(ccfa, options);
    case cbcov::Criterion::EventApiSync:
      return cbcov::gen_event_api_sync(ccfa);
    case cbcov::Criterion::EventApiAsync:
      return cbcov::gen_event_api_async(ccfa);
  }
  return {};
}

std::vector<cbcov::Trace> collect_traces(const cbcov_trace* const* traces,
                                         size_t trace_count) {
  std::vector<cbcov::Trace> out;
  out.reserve(trace_count);
  for (size_t i = 0; i < trace_count; ++i) out.push_back(traces[i]->trace);
  return out;
}

// Maps core exceptions onto status codes; cap overruns are reported as
// CBCOV_ERR_LIMIT so callers can distinguish them from bad input.
template <typename Fn>
cbcov_status guarded(char** error, Fn&& fn) {
  try {
    fn();
    return CBCOV_OK;
  } catch (const cbcov::CcfaError& e) {
    if (std::strstr(e.what(), "cap exceeded") != nullptr) {
      set_error(error, e.what());
      return CBCOV_ERR_LIMIT;
    }
    set_error(error, e.what());
    return CBCOV_ERR_INPUT;
  } catch (const cbcov::TraceError& e) {
    set_error(error, e.what());
    return CBCOV_ERR_INPUT;
  } catch (const cbcov::SimError& e) {
    if (std::strstr(e.what(), "cap exceeded") != nullptr) {
      set_error(error, e.what());
      return CBCOV_ERR_LIMIT;
    }
    set_error(error, e.what());
    return CBCOV_ERR_INPUT;
  } catch (const std::exception& e) {
    set_error(error, e.what());
    return CBCOV_ERR_INPUT;
  }
}

}  // namespace

extern "C" {

const char* cbcov_status_name(cbcov_status status) {
  switch (status) {
    case CBCOV_OK: return "ok";
    case CBCOV_ERR_INPUT: return "input error";
    case CBCOV_ERR_ARG: return "argument error";
    case CBCOV_ERR_LIMIT: return "internal limit exceeded";
  }
  return "unknown";
}

void cbcov_string_free(char* text) { delete[] text; }

cbcov_status cbcov_ccfa_parse(const char* json_text, cbcov_ccfa** out,
                              char** error) {
  if (json_text == nullptr || out == nullptr) return CBCOV_ERR_ARG;
  *out = nullptr;
  return guarded(error, [&] {
    auto* handle = new cbcov_ccfa{cbcov::parse_ccfa(json_text)};
    *out = handle;
  });
}

void cbcov_ccfa_free(cbcov_ccfa* ccfa) { delete ccfa; }

cbcov_status cbcov_ccfa_validate(const cbcov_ccfa* ccfa, char** diagnostics,
                                 int* clean_out) {
  if (ccfa == nullptr || diagnostics == nullptr) return CBCOV_ERR_ARG;
  return guarded(nullptr, [&] {
    auto diags = cbcov::validate_ccfa(ccfa->model);
    *diagnostics = copy_string(cbcov::render_diagnostics(diags));
    if (clean_out != nullptr) *clean_out = diags.empty() ? 1 : 0;
  });
}

cbcov_status cbcov_ccfa_serialize(const cbcov_ccfa* ccfa, char** json_text) {
  if (ccfa == nullptr || json_text == nullptr) return CBCOV_ERR_ARG;
  return guarded(nullptr, [&] {
    *json_text = copy_string(cbcov::serialize_ccfa(ccfa->model));
  });
}

cbcov_status cbcov_sequences_generate(const cbcov_ccfa* ccfa,
                                      const char* criterion,
                                      int include_self_pairs,
                                      cbcov_sequences** out, char** error) {
  if (ccfa == nullptr || criterion == nullptr || out == nullptr)
    return CBCOV_ERR_ARG;
  cbcov::Criterion parsed;
  if (!parse_criterion(criterion, &parsed)) {
    set_error(error, std::string("unknown criterion \"") + criterion + "\"");
    return CBCOV_ERR_ARG;
  }
  *out = nullptr;
  return guarded(error, [&] {
    auto* handle = new cbcov_sequences{
        generate(ccfa->model, parsed, include_self_pairs != 0)};
    *out = handle;
  });
}

size_t cbcov_sequences_count(const cbcov_sequences* sequences) {
  return sequences == nullptr ? 0 : sequences->set.sequences.size();
}

cbcov_status cbcov_sequences_render(const cbcov_sequences* sequences,
                                    char** text) {
  if (sequences == nullptr || text == nullptr) return CBCOV_ERR_ARG;
  *text = copy_string(sequences->set.render());
  return CBCOV_OK;
}

void cbcov_sequences_free(cbcov_sequences* sequences) { delete sequences; }

cbcov_status cbcov_trace_parse(const char* text, const char* source_name,
                               int rebase, cbcov_trace** out, char** error) {
  if (text == nullptr || out == nullptr) return CBCOV_ERR_ARG;
  *out = nullptr;
  return guarded(error, [&] {
    cbcov::Trace trace =
        cbcov::parse_trace(text, source_name == nullptr ? "" : source_name);
    if (rebase != 0 && !trace.records.empty()) {
      std::int64_t origin = trace.records.front().timestamp_ms;
      for (auto& record : trace.records) record.timestamp_ms -= origin;
    }
    *out = new cbcov_trace{std::move(trace)};
  });
}

void cbcov_trace_free(cbcov_trace* trace) { delete trace; }

cbcov_status cbcov_trace_unknown_callbacks(const cbcov_ccfa* ccfa,
                                           const cbcov_trace* trace,
                                           char** names) {
  if (ccfa == nullptr || trace == nullptr || names == nullptr)
    return CBCOV_ERR_ARG;
  return guarded(nullptr, [&] {
    cbcov::CallbackKindMap kinds = cbcov::classify_callbacks(ccfa->model);
    std::string text;
    std::set<std::string> seen;
    for (const auto& record : trace->trace.records) {
      if (kinds.count(record.callback)) continue;
      if (seen.insert(record.callback).second) {
        text += record.callback;
        text += '\n';
      }
    }
    *names = copy_string(text);
  });
}

cbcov_status cbcov_coverage_report(const cbcov_ccfa* ccfa,
                                   const char* criterion,
                                   int include_self_pairs,
                                   const cbcov_trace* const* traces,
                                   size_t trace_count, int as_json,
                                   char** report, char** error) {
  if (ccfa == nullptr || criterion == nullptr || report == nullptr)
    return CBCOV_ERR_ARG;
  if (trace_count > 0 && traces == nullptr) return CBCOV_ERR_ARG;
  cbcov::Criterion parsed;
  if (!parse_criterion(criterion, &parsed)) {
    set_error(error, std::string("unknown criterion \"") + criterion + "\"");
    return CBCOV_ERR_ARG;
  }
  return guarded(error, [&] {
    cbcov::RequiredSet required =
        generate(ccfa->model, parsed, include_self_pairs != 0);
    cbcov::CallbackKindMap kinds = cbcov::classify_callbacks(ccfa->model);
    cbcov::CoverageReport result = cbcov::coverage_report(
        required, collect_traces(traces, trace_count), kinds);
    *report = copy_string(as_json != 0 ? cbcov::render_coverage_json(result)
                                       : cbcov::render_coverage_text(result));
  });
}

cbcov_status cbcov_simulate_script(const cbcov_ccfa* ccfa,
                                   const char* script_text, char** trace_text,
                                   char** error) {
  if (ccfa == nullptr || script_text == nullptr || trace_text == nullptr)
    return CBCOV_ERR_ARG;
  return guarded(error, [&] {
    cbcov::SimConfig config;
    config.mode = cbcov::SimConfig::Mode::Scripted;
    config.script = cbcov::parse_script(script_text);
    cbcov::Trace trace = cbcov::simulate(ccfa->model, config);
    *trace_text = copy_string(cbcov::render_trace(trace));
  });
}

cbcov_status cbcov_simulate_random(const cbcov_ccfa* ccfa, uint64_t seed,
                                   uint32_t steps, double defer_probability,
                                   char** trace_text, char** error) {
  if (ccfa == nullptr || trace_text == nullptr) return CBCOV_ERR_ARG;
  return guarded(error, [&] {
    cbcov::SimConfig config;
    config.mode = cbcov::SimConfig::Mode::Random;
    config.seed = seed;
    config.steps = steps;
    config.defer_probability = defer_probability;
    cbcov::Trace trace = cbcov::simulate(ccfa->model, config);
    *trace_text = copy_string(cbcov::render_trace(trace));
  });
}

cbcov_status cbcov_report(const cbcov_ccfa* ccfa,
                          const cbcov_trace* const* traces, size_t trace_count,
                          const char* bugs_text, int rebase_bugs,
                          uint32_t window_seconds, int include_self_pairs,
                          int as_json, char** report, char** error) {
  if (ccfa == nullptr || report == nullptr) return CBCOV_ERR_ARG;
  if (trace_count > 0 && traces == nullptr) return CBCOV_ERR_ARG;
  if (window_seconds == 0) {
    set_error(error, "window must be positive");
    return CBCOV_ERR_ARG;
  }
  return guarded(error, [&] {
    using cbcov::Criterion;
    const Criterion order[] = {Criterion::EventEvent, Criterion::EventApiSync,
                               Criterion::EventApiAsync, Criterion::GuiPair};
    std::map<Criterion, cbcov::RequiredSet> required;
    for (Criterion criterion : order)
      required[criterion] =
          generate(ccfa->model, criterion, include_self_pairs != 0);

    cbcov::CallbackKindMap kinds = cbcov::classify_callbacks(ccfa->model);
    std::vector<cbcov::Trace> trace_values = collect_traces(traces, trace_count);
    std::vector<cbcov::BugEvent> bugs =
        bugs_text == nullptr ? std::vector<cbcov::BugEvent>{}
                             : cbcov::parse_bug_events(bugs_text);
    if (rebase_bugs != 0 && !bugs.empty()) {
      std::int64_t origin = bugs.front().timestamp_ms;
      for (auto& bug : bugs) bug.timestamp_ms -= origin;
    }

    cbcov::TimeSeries series = cbcov::time_series(
        required, trace_values, bugs, window_seconds, kinds);
    auto correlations = cbcov::correlate_bugs(series);

    std::vector<cbcov::CoverageReport> reports;
    for (Criterion criterion : order)
      reports.push_back(
          cbcov::coverage_report(required[criterion], trace_values, kinds));

    *report = copy_string(
        as_json != 0 ? cbcov::render_report_json(reports, series, correlations)
                     : cbcov::render_report_text(reports, series, correlations));
  });
}

}  // extern "C"
