/*
 * Copyright 2026 The cbcov Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of the callback-sequence coverage library.
 *
 * Handles are opaque; every function returns a status code. Functions that
 * can fail with a message take an optional char** which, on error, receives
 * a heap string owned by the caller (release with cbcov_string_free). All
 * returned text is UTF-8 and deterministic for identical inputs.
 */

#ifndef CBCOV_CBCOV_H_
#define CBCOV_CBCOV_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cbcov_status {
  CBCOV_OK = 0,
  CBCOV_ERR_INPUT = 1, /* malformed or semantically invalid input */
  CBCOV_ERR_ARG = 2,   /* bad argument to the call itself */
  CBCOV_ERR_LIMIT = 3  /* an internal exploration cap was exceeded */
} cbcov_status;

const char* cbcov_status_name(cbcov_status status);

typedef struct cbcov_ccfa cbcov_ccfa;
typedef struct cbcov_trace cbcov_trace;
typedef struct cbcov_sequences cbcov_sequences;

void cbcov_string_free(char* text);

/*
 * CCFA model. Documents use the JSON format described in the README;
 * unknown fields are rejected.
 */
cbcov_status cbcov_ccfa_parse(const char* json_text, cbcov_ccfa** out,
                              char** error);
void cbcov_ccfa_free(cbcov_ccfa* ccfa);

/* One diagnostic per line, "error: ..." or "warning: ...". Empty string
 * means the model is clean. clean_out (optional) is set to 1/0. */
cbcov_status cbcov_ccfa_validate(const cbcov_ccfa* ccfa, char** diagnostics,
                                 int* clean_out);

cbcov_status cbcov_ccfa_serialize(const cbcov_ccfa* ccfa, char** json_text);

/*
 * Required-sequence generation. criterion is one of "event-event",
 * "event-api-sync", "event-api-async", "gui". include_self_pairs re-enables
 * c1 == c2 event pairs.
 */
cbcov_status cbcov_sequences_generate(const cbcov_ccfa* ccfa,
                                      const char* criterion,
                                      int include_self_pairs,
                                      cbcov_sequences** out, char** error);
size_t cbcov_sequences_count(const cbcov_sequences* sequences);
/* The sequence-set file format: "<criterion>\t<sym> -> <sym> ..." per line. */
cbcov_status cbcov_sequences_render(const cbcov_sequences* sequences,
                                    char** text);
void cbcov_sequences_free(cbcov_sequences* sequences);

/*
 * Traces: one "(<ms>, <signature>, <ENTRY|EXIT>)" record per line.
 * rebase != 0 shifts timestamps so the first record starts at zero.
 */
cbcov_status cbcov_trace_parse(const char* text, const char* source_name,
                               int rebase, cbcov_trace** out, char** error);
void cbcov_trace_free(cbcov_trace* trace);

/* Callbacks the trace mentions that the CCFA does not know; one per line
 * (deduplicated). Such records are dropped during matching. Empty string
 * when every callback is known. */
cbcov_status cbcov_trace_unknown_callbacks(const cbcov_ccfa* ccfa,
                                           const cbcov_trace* trace,
                                           char** names);

/*
 * Coverage of one criterion over a set of traces. as_json selects the JSON
 * rendering; otherwise a human-readable block is produced.
 */
cbcov_status cbcov_coverage_report(const cbcov_ccfa* ccfa,
                                   const char* criterion,
                                   int include_self_pairs,
                                   const cbcov_trace* const* traces,
                                   size_t trace_count, int as_json,
                                   char** report, char** error);

/*
 * Event-queue simulation producing a trace in the trace file format.
 * Scripted mode runs the given script ("event <label>" | "drain" |
 * "choose <index>", one per line). Random mode draws `steps` directives
 * from a seeded generator; defer_probability delays posted tasks behind the
 * next external event.
 */
cbcov_status cbcov_simulate_script(const cbcov_ccfa* ccfa,
                                   const char* script_text, char** trace_text,
                                   char** error);
cbcov_status cbcov_simulate_random(const cbcov_ccfa* ccfa, uint64_t seed,
                                   uint32_t steps, double defer_probability,
                                   char** trace_text, char** error);

/*
 * The full report: all three criteria plus the GUI baseline, windowed
 * snapshots and bug correlations. bugs_text holds one
 * "<timestamp_ms> <bug-id>" per line (may be empty). rebase_bugs shifts bug
 * timestamps by the first bug's timestamp.
 */
cbcov_status cbcov_report(const cbcov_ccfa* ccfa,
                          const cbcov_trace* const* traces, size_t trace_count,
                          const char* bugs_text, int rebase_bugs,
                          uint32_t window_seconds, int include_self_pairs,
                          int as_json, char** report, char** error);

#ifdef __cplusplus
}
#endif

#endif /* CBCOV_CBCOV_H_ */
