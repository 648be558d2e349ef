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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cbcov/cbcov.h"

namespace {

// Exit codes: 0 ok, 2 usage, 3 bad input, 4 internal limit.
enum ExitStatus : int {
  kOk = 0,
  kUsageError = 2,
  kInputError = 3,
  kInternalLimit = 4,
};

struct StringDeleter {
  void operator()(char* text) const { cbcov_string_free(text); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct CcfaDeleter {
  void operator()(cbcov_ccfa* ccfa) const { cbcov_ccfa_free(ccfa); }
};
using OwnedCcfa = std::unique_ptr<cbcov_ccfa, CcfaDeleter>;

struct TraceDeleter {
  void operator()(cbcov_trace* trace) const { cbcov_trace_free(trace); }
};
using OwnedTrace = std::unique_ptr<cbcov_trace, TraceDeleter>;

struct SequencesDeleter {
  void operator()(cbcov_sequences* s) const { cbcov_sequences_free(s); }
};
using OwnedSequences = std::unique_ptr<cbcov_sequences, SequencesDeleter>;

int status_to_exit(cbcov_status status) {
  switch (status) {
    case CBCOV_OK: return kOk;
    case CBCOV_ERR_LIMIT: return kInternalLimit;
    case CBCOV_ERR_ARG: return kUsageError;
    case CBCOV_ERR_INPUT: return kInputError;
  }
  return kInputError;
}

int report_failure(const std::string& context, cbcov_status status,
                   OwnedString error) {
  std::cerr << "cbcov: " << context;
  if (error) std::cerr << ": " << error.get();
  std::cerr << "\n";
  return status_to_exit(status);
}

bool read_file(const std::string& path, std::string* out) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) return false;
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  *out = buffer.str();
  return true;
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream stream(path, std::ios::binary);
  if (!stream) return false;
  stream << text;
  return stream.good();
}

int load_ccfa(const std::string& path, OwnedCcfa* out) {
  std::string document;
  if (!read_file(path, &document)) {
    std::cerr << "cbcov: cannot read \"" << path << "\"\n";
    return kInputError;
  }
  cbcov_ccfa* ccfa = nullptr;
  char* error = nullptr;
  cbcov_status status = cbcov_ccfa_parse(document.c_str(), &ccfa, &error);
  if (status != CBCOV_OK)
    return report_failure(path, status, OwnedString(error));
  out->reset(ccfa);
  return kOk;
}

int load_traces(const std::vector<std::string>& paths, bool rebase,
                std::vector<OwnedTrace>* out) {
  for (const std::string& path : paths) {
    std::string text;
    if (!read_file(path, &text)) {
      std::cerr << "cbcov: cannot read \"" << path << "\"\n";
      return kInputError;
    }
    cbcov_trace* trace = nullptr;
    char* error = nullptr;
    cbcov_status status = cbcov_trace_parse(text.c_str(), path.c_str(),
                                            rebase ? 1 : 0, &trace, &error);
    if (status != CBCOV_OK)
      return report_failure(path, status, OwnedString(error));
    out->emplace_back(trace);
  }
  return kOk;
}

std::vector<const cbcov_trace*> trace_pointers(
    const std::vector<OwnedTrace>& traces) {
  std::vector<const cbcov_trace*> pointers;
  pointers.reserve(traces.size());
  for (const OwnedTrace& trace : traces) pointers.push_back(trace.get());
  return pointers;
}

// Trace records the model does not know are dropped during matching; say so.
void warn_unknown_callbacks(const cbcov_ccfa* ccfa,
                            const std::vector<OwnedTrace>& traces,
                            const std::vector<std::string>& paths) {
  for (std::size_t i = 0; i < traces.size(); ++i) {
    char* names = nullptr;
    if (cbcov_trace_unknown_callbacks(ccfa, traces[i].get(), &names) != CBCOV_OK)
      continue;
    OwnedString owned(names);
    std::istringstream lines(owned.get());
    std::string name;
    while (std::getline(lines, name)) {
      std::cerr << "cbcov: warning: " << paths[i]
                << ": dropping unknown callback \"" << name << "\"\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"callback-sequence coverage toolkit"};
  app.require_subcommand(1);

  // validate
  std::string validate_ccfa_path;
  CLI::App* validate = app.add_subcommand(
      "validate", "check a CCFA document and print diagnostics");
  validate->add_option("ccfa", validate_ccfa_path, "CCFA JSON file")->required();

  // sequences
  std::string seq_ccfa_path, seq_criterion, seq_out_path;
  bool seq_self_pairs = false;
  CLI::App* sequences = app.add_subcommand(
      "sequences", "generate the required callback sequences of a criterion");
  sequences->add_option("--ccfa", seq_ccfa_path, "CCFA JSON file")->required();
  sequences
      ->add_option("--criterion", seq_criterion,
                   "event-event | event-api-sync | event-api-async | gui")
      ->required();
  sequences->add_flag("--include-self-pairs", seq_self_pairs,
                      "also emit c1 == c2 event pairs");
  sequences->add_option("--out", seq_out_path, "write to file instead of stdout");

  // coverage
  std::string cov_ccfa_path, cov_criterion;
  std::vector<std::string> cov_trace_paths;
  bool cov_json = false, cov_self_pairs = false;
  CLI::App* coverage = app.add_subcommand(
      "coverage", "measure criterion coverage of traces");
  coverage->add_option("--ccfa", cov_ccfa_path, "CCFA JSON file")->required();
  coverage
      ->add_option("--criterion", cov_criterion,
                   "event-event | event-api-sync | event-api-async | gui")
      ->required();
  coverage->add_option("--trace", cov_trace_paths, "trace file (repeatable)")
      ->required();
  coverage->add_flag("--include-self-pairs", cov_self_pairs,
                     "also require c1 == c2 event pairs");
  coverage->add_flag("--json", cov_json, "emit a JSON object");

  // simulate
  std::string sim_ccfa_path, sim_script_path, sim_out_path;
  std::uint64_t sim_seed = 0;
  std::uint32_t sim_steps = 0;
  double sim_defer = 0.0;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "run the event-queue interpreter and write a trace");
  simulate->add_option("--ccfa", sim_ccfa_path, "CCFA JSON file")->required();
  CLI::Option* script_opt =
      simulate->add_option("--script", sim_script_path, "script file");
  CLI::Option* seed_opt =
      simulate->add_option("--seed", sim_seed, "random mode seed");
  simulate->add_option("--steps", sim_steps, "random mode directive count");
  simulate->add_option("--defer-prob", sim_defer,
                       "chance a posted task waits for the next event");
  simulate->add_option("--out", sim_out_path, "write to file instead of stdout");
  script_opt->excludes(seed_opt);

  // report
  std::string rep_ccfa_path, rep_bugs_path;
  std::vector<std::string> rep_trace_paths;
  std::uint32_t rep_window = 300;
  bool rep_json = false, rep_rebase = false, rep_self_pairs = false;
  CLI::App* report = app.add_subcommand(
      "report", "time-windowed coverage and bug correlation for all criteria");
  report->add_option("--ccfa", rep_ccfa_path, "CCFA JSON file")->required();
  report->add_option("--trace", rep_trace_paths, "trace file (repeatable)")
      ->required();
  report->add_option("--bugs", rep_bugs_path, "bug events file");
  report->add_option("--window", rep_window, "window length in seconds")
      ->required();
  report->add_flag("--rebase", rep_rebase,
                   "shift each file's timestamps to start at zero");
  report->add_flag("--include-self-pairs", rep_self_pairs,
                   "also require c1 == c2 event pairs");
  report->add_flag("--json", rep_json, "emit a JSON object");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (validate->parsed()) {
    OwnedCcfa ccfa;
    if (int rc = load_ccfa(validate_ccfa_path, &ccfa); rc != kOk) return rc;
    char* diagnostics = nullptr;
    int clean = 0;
    cbcov_status status = cbcov_ccfa_validate(ccfa.get(), &diagnostics, &clean);
    OwnedString owned(diagnostics);
    if (status != CBCOV_OK)
      return report_failure("validate", status, std::move(owned));
    std::cout << owned.get();
    if (clean != 0) {
      std::cout << "ok\n";
      return kOk;
    }
    return kInputError;
  }

  if (sequences->parsed()) {
    OwnedCcfa ccfa;
    if (int rc = load_ccfa(seq_ccfa_path, &ccfa); rc != kOk) return rc;
    cbcov_sequences* set = nullptr;
    char* error = nullptr;
    cbcov_status status = cbcov_sequences_generate(
        ccfa.get(), seq_criterion.c_str(), seq_self_pairs ? 1 : 0, &set, &error);
    if (status != CBCOV_OK)
      return report_failure("sequences", status, OwnedString(error));
    OwnedSequences owned_set(set);
    char* text = nullptr;
    cbcov_sequences_render(owned_set.get(), &text);
    OwnedString owned_text(text);
    if (!write_output(seq_out_path, owned_text.get())) {
      std::cerr << "cbcov: cannot write \"" << seq_out_path << "\"\n";
      return kInputError;
    }
    return kOk;
  }

  if (coverage->parsed()) {
    OwnedCcfa ccfa;
    if (int rc = load_ccfa(cov_ccfa_path, &ccfa); rc != kOk) return rc;
    std::vector<OwnedTrace> traces;
    if (int rc = load_traces(cov_trace_paths, false, &traces); rc != kOk)
      return rc;
    warn_unknown_callbacks(ccfa.get(), traces, cov_trace_paths);
    auto pointers = trace_pointers(traces);
    char* text = nullptr;
    char* error = nullptr;
    cbcov_status status = cbcov_coverage_report(
        ccfa.get(), cov_criterion.c_str(), cov_self_pairs ? 1 : 0,
        pointers.data(), pointers.size(), cov_json ? 1 : 0, &text, &error);
    if (status != CBCOV_OK)
      return report_failure("coverage", status, OwnedString(error));
    OwnedString owned(text);
    std::cout << owned.get();
    return kOk;
  }

  if (simulate->parsed()) {
    OwnedCcfa ccfa;
    if (int rc = load_ccfa(sim_ccfa_path, &ccfa); rc != kOk) return rc;
    char* text = nullptr;
    char* error = nullptr;
    cbcov_status status;
    if (!sim_script_path.empty()) {
      std::string script;
      if (!read_file(sim_script_path, &script)) {
        std::cerr << "cbcov: cannot read \"" << sim_script_path << "\"\n";
        return kInputError;
      }
      status = cbcov_simulate_script(ccfa.get(), script.c_str(), &text, &error);
    } else if (seed_opt->count() > 0) {
      status = cbcov_simulate_random(ccfa.get(), sim_seed, sim_steps, sim_defer,
                                     &text, &error);
    } else {
      std::cerr << "cbcov: simulate needs --script or --seed/--steps\n";
      return kUsageError;
    }
    if (status != CBCOV_OK)
      return report_failure("simulate", status, OwnedString(error));
    OwnedString owned(text);
    if (!write_output(sim_out_path, owned.get())) {
      std::cerr << "cbcov: cannot write \"" << sim_out_path << "\"\n";
      return kInputError;
    }
    return kOk;
  }

  if (report->parsed()) {
    OwnedCcfa ccfa;
    if (int rc = load_ccfa(rep_ccfa_path, &ccfa); rc != kOk) return rc;
    std::vector<OwnedTrace> traces;
    if (int rc = load_traces(rep_trace_paths, rep_rebase, &traces); rc != kOk)
      return rc;
    warn_unknown_callbacks(ccfa.get(), traces, rep_trace_paths);
    std::string bugs_text;
    if (!rep_bugs_path.empty() && !read_file(rep_bugs_path, &bugs_text)) {
      std::cerr << "cbcov: cannot read \"" << rep_bugs_path << "\"\n";
      return kInputError;
    }
    auto pointers = trace_pointers(traces);
    char* text = nullptr;
    char* error = nullptr;
    cbcov_status status = cbcov_report(
        ccfa.get(), pointers.data(), pointers.size(), bugs_text.c_str(),
        rep_rebase ? 1 : 0, rep_window, rep_self_pairs ? 1 : 0,
        rep_json ? 1 : 0, &text, &error);
    if (status != CBCOV_OK)
      return report_failure("report", status, OwnedString(error));
    OwnedString owned(text);
    std::cout << owned.get();
    return kOk;
  }

  return kUsageError;
}
