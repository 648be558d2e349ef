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

// End-to-end acceptance checks against the worked examples: one pass/fail
// line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ccfa.hpp"
#include "coverage.hpp"
#include "seqgen.hpp"
#include "simulate.hpp"
#include "trace.hpp"

#include "random_ccfa.hpp"
#include "test_util.hpp"

namespace cbcov {
namespace {

struct Failure {
  std::string message;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Failure{message};
}

std::string run_cli(const std::string& args) {
  std::string command = std::string(CBCOV_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  require(pipe != nullptr, "cannot run the CLI");
  std::string output;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
    output.append(buffer, n);
  int rc = pclose(pipe);
  require(rc == 0, "CLI failed (" + command + "):\n" + output);
  return output;
}

std::string fixture_path(const std::string& name) {
  return std::string(CBCOV_FIXTURE_DIR) + "/" + name;
}

std::vector<std::pair<std::string, Point>> symbols_of(const Trace& trace) {
  std::vector<std::pair<std::string, Point>> out;
  for (const TraceRecord& record : trace.records)
    out.push_back({record.callback, record.point});
  return out;
}

bool set_contains(const RequiredSet& set, const std::string& rendered) {
  for (const RequiredSequence& seq : set.sequences)
    if (seq.render() == rendered) return true;
  return false;
}

// 1. Fig. 5: event-event emits exactly 9 sequences including the three
//    anchored at A.onCreate().
void criterion1() {
  RequiredSet set = gen_event_event(load_fixture_ccfa("fig5.json"));
  require(set.sequences.size() == 9, "expected 9 sequences, got " +
                                         std::to_string(set.sequences.size()));
  for (const char* expected :
       {"A.onCreate():entry -> A.onCreate():exit -> Button1.onClick():entry",
        "A.onCreate():entry -> A.onCreate():exit -> Button2.onClick():entry",
        "A.onCreate():entry -> A.onCreate():exit -> "
        "LocList.onLocationUpdate():entry"}) {
    require(set_contains(set, expected),
            std::string("missing sequence: ") + expected);
  }
  // Same answer through the CLI.
  std::string output = run_cli("sequences --ccfa " + fixture_path("fig5.json") +
                               " --criterion event-event");
  std::size_t lines = 0;
  for (char c : output)
    if (c == '\n') ++lines;
  require(lines == 9, "CLI emitted " + std::to_string(lines) + " lines");
}

// 2. Fig. 4: the worked event-event pairs and the loader caller pair.
void criterion2() {
  Ccfa ccfa = load_fixture_ccfa("fig4.json");
  RequiredSet pairs = gen_event_event(ccfa);
  for (const char* expected :
       {"A.onCreate():entry -> A.onCreate():exit -> A.onStart():entry",
        "A.onStart():entry -> A.onStart():exit -> CList.onClick():entry",
        "A.onStart():entry -> A.onStart():exit -> A.onStop():entry"}) {
    require(set_contains(pairs, expected),
            std::string("missing sequence: ") + expected);
  }
  RequiredSet sync = gen_event_api_sync(ccfa);
  require(set_contains(sync, "A.onStart():entry -> L.onCreateLoader():entry"),
          "missing the loader caller pair");
}

// 3. Fig. 2 (FileDownloader): three caller pairs, five sequences in total.
void criterion3() {
  RequiredSet set = gen_event_api_sync(load_fixture_ccfa("fig2.json"));
  for (const char* expected :
       {"FDService.onCreate():entry -> DBHelper.onCreate():entry",
        "FDService.onCreate():entry -> DBHelper.onUpgrade():entry",
        "FDService.onCreate():entry -> DBHelper.onOpen():entry"}) {
    require(set_contains(set, expected),
            std::string("missing caller pair: ") + expected);
  }
  require(set.sequences.size() == 5,
          "expected 5 sequences in total, got " +
              std::to_string(set.sequences.size()));
}

// 4. Fig. 6 (chanu): exactly the four interleavings, canonically ordered.
void criterion4() {
  RequiredSet set = gen_event_api_async(load_fixture_ccfa("fig6.json"));
  std::vector<std::string> expected = {
      "CaptureList.onClick():entry -> CaptureList.onClick():exit -> "
      "CamAct$3.onPictureTaken():entry -> CamAct$3.onPictureTaken():exit -> "
      "CaptureList.onClick():entry",
      "CaptureList.onClick():entry -> CaptureList.onClick():exit -> "
      "CamAct$3.onPictureTaken():entry -> CamAct$3.onPictureTaken():exit -> "
      "CaptureList.onTab():entry",
      "CaptureList.onClick():entry -> CaptureList.onClick():exit -> "
      "CaptureList.onClick():entry -> CaptureList.onClick():exit -> "
      "CamAct$3.onPictureTaken():entry",
      "CaptureList.onClick():entry -> CaptureList.onClick():exit -> "
      "CaptureList.onTab():entry -> CaptureList.onTab():exit -> "
      "CamAct$3.onPictureTaken():entry",
  };
  require(set.sequences.size() == expected.size(),
          "expected 4 sequences, got " + std::to_string(set.sequences.size()));
  for (std::size_t i = 0; i < expected.size(); ++i)
    require(set.sequences[i].render() == expected[i],
            "sequence " + std::to_string(i) + " out of order or wrong:\n  " +
                set.sequences[i].render());
}

// 5. Scripted fig. 4 run reproduces the worked trace; filtering and
//    coverage behave as in the text.
void criterion5() {
  Ccfa ccfa = load_fixture_ccfa("fig4.json");
  SimConfig config;
  config.mode = SimConfig::Mode::Scripted;
  config.script = parse_script(read_fixture("launch_back.script"));
  Trace simulated = simulate(ccfa, config);
  Trace paper = parse_trace(read_fixture("paper_trace.txt"));
  require(symbols_of(simulated) == symbols_of(paper),
          "simulated trace differs from the worked 8-record trace");

  CallbackKindMap kinds = classify_callbacks(ccfa);
  Trace filtered = filter_by_kind(simulated, {CallbackKind::Event}, kinds);
  require(filtered.records.size() == 6, "event filter should keep 6 records");

  CoverageReport report =
      coverage_report(gen_event_event(ccfa), {simulated}, kinds);
  bool stop_covered = false, click_uncovered = false;
  for (const RequiredSequence& seq : report.covered)
    if (seq.render() ==
        "A.onStart():entry -> A.onStart():exit -> A.onStop():entry")
      stop_covered = true;
  for (const RequiredSequence& seq : report.uncovered)
    if (seq.render() ==
        "A.onStart():entry -> A.onStart():exit -> CList.onClick():entry")
      click_uncovered = true;
  require(stop_covered, "onStart -> onStop should be covered");
  require(click_uncovered, "onStart -> onClick should be uncovered");

  // The same composition through the CLI.
  std::string out_path = std::string("/tmp/cbcov_acceptance_trace.txt");
  run_cli("simulate --ccfa " + fixture_path("fig4.json") + " --script " +
          fixture_path("launch_back.script") + " --out " + out_path);
  std::string coverage_out =
      run_cli("coverage --ccfa " + fixture_path("fig4.json") +
              " --criterion event-event --trace " + out_path);
  require(coverage_out.find("ratio: 0.40") != std::string::npos,
          "CLI coverage should report ratio 0.40:\n" + coverage_out);
}

// 6. Oracle equivalence on seeded random CCFAs.
void criterion6() {
  std::size_t eaa_sequences_checked = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    RandomCcfa generated = random_ccfa(seed);
    const Ccfa& ccfa = generated.ccfa;
    require(ccfa.states.size() <= 12 && ccfa.transitions.size() <= 20,
            "generator exceeded the size budget");
    require(validate_ccfa(ccfa).empty(), "generated CCFA must validate");
    CallbackKindMap kinds = classify_callbacks(ccfa);

    // Event pairs match the bounded-run projection.
    std::set<std::pair<std::string, std::string>> generated_pairs;
    for (const RequiredSequence& seq : gen_event_event(ccfa).sequences)
      generated_pairs.insert({seq.symbols[0].callback, seq.symbols[2].callback});
    std::set<std::pair<std::string, std::string>> projected;
    Ccfa stripped = strip_api_regions(ccfa);
    for (const auto& run :
         enumerate_bounded_runs(stripped, 2 * kinds.size() + 4)) {
      const std::string* previous = nullptr;
      for (const EndpointSymbol& symbol : run) {
        if (symbol.point != Point::Entry) continue;
        if (kinds.at(symbol.callback) != CallbackKind::Event) continue;
        if (previous != nullptr && *previous != symbol.callback)
          projected.insert({*previous, symbol.callback});
        previous = &symbol.callback;
      }
    }
    require(generated_pairs == projected,
            "event-event mismatch against the run oracle at seed " +
                std::to_string(seed));

    // Every generated interleaving is realizable by a replay-validated
    // schedule: assemble the witness trace from the builder's templates.
    for (const RequiredSequence& seq : gen_event_api_async(ccfa).sequences) {
      const std::string& first = seq.symbols[0].callback;
      const std::string& middle = seq.symbols[2].callback;
      const std::string& last = seq.symbols[4].callback;
      std::vector<TraceRecord> records = generated.prefix;
      auto append = [&records](const std::vector<TraceRecord>& block) {
        records.insert(records.end(), block.begin(), block.end());
      };
      append(generated.blocks.at(first));
      append(generated.blocks.at(middle));
      append(generated.blocks.at(last));
      Trace witness;
      witness.source = "witness";
      std::int64_t t = 0;
      for (TraceRecord record : records) {
        record.timestamp_ms = t++;
        witness.records.push_back(record);
      }
      require(replay_check(ccfa, witness),
              "witness schedule not replayable at seed " +
                  std::to_string(seed) + " for\n  " + seq.render());
      Trace filtered = filter_for_criterion(witness, Criterion::EventApiAsync,
                                            kinds);
      require(contains_sequence(filtered, seq),
              "witness does not contain its sequence at seed " +
                  std::to_string(seed));
      ++eaa_sequences_checked;
    }
  }
  require(eaa_sequences_checked > 0, "no async sequences were exercised");
}

// 7. Property suite.
void criterion7() {
  // Parse/serialize round-trip on all fixtures.
  for (const char* name : {"fig2.json", "fig4.json", "fig5.json", "fig6.json"}) {
    Ccfa ccfa = load_fixture_ccfa(name);
    require(parse_ccfa(serialize_ccfa(ccfa)) == ccfa,
            std::string("round-trip failed for ") + name);
  }

  Ccfa fig4 = load_fixture_ccfa("fig4.json");
  CallbackKindMap kinds = classify_callbacks(fig4);
  RequiredSet required = gen_event_event(fig4);

  // A pool of simulated traces.
  std::vector<Trace> pool;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    SimConfig config;
    config.mode = SimConfig::Mode::Random;
    config.seed = seed;
    config.steps = 16;
    config.defer_probability = 0.2;
    pool.push_back(simulate(fig4, config));
  }

  // Coverage is monotone under trace union, ratios stay in bounds, and
  // covered_set distributes over union.
  std::vector<Trace> accumulated;
  double previous_ratio = 0.0;
  for (const Trace& trace : pool) {
    accumulated.push_back(trace);
    CoverageReport report = coverage_report(required, accumulated, kinds);
    require(report.ratio >= previous_ratio, "coverage dropped as traces grew");
    require(report.ratio >= 0.0 && report.ratio <= 1.0, "ratio out of bounds");
    previous_ratio = report.ratio;
  }
  auto unioned = covered_set(required, pool, kinds);
  std::set<std::string> left_right;
  for (std::size_t split = 1; split < pool.size(); ++split) {
    std::vector<Trace> left(pool.begin(), pool.begin() + split);
    std::vector<Trace> right(pool.begin() + split, pool.end());
    std::set<std::string> parts;
    for (const auto& seq : covered_set(required, left, kinds))
      parts.insert(seq.render());
    for (const auto& seq : covered_set(required, right, kinds))
      parts.insert(seq.render());
    std::set<std::string> whole;
    for (const auto& seq : unioned) whole.insert(seq.render());
    require(parts == whole, "covered_set does not distribute over union");
  }

  // Filter idempotence.
  for (const Trace& trace : pool) {
    Trace once = filter_by_kind(trace, {CallbackKind::Event}, kinds);
    Trace twice = filter_by_kind(once, {CallbackKind::Event}, kinds);
    require(once.records == twice.records, "filter is not idempotent");
  }

  // Simulate/replay round-trip over fixtures and generated CCFAs.
  for (const char* name : {"fig4.json", "fig6.json", "fig2.json"}) {
    Ccfa ccfa = load_fixture_ccfa(name);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      SimConfig config;
      config.mode = SimConfig::Mode::Random;
      config.seed = seed * 13;
      config.steps = 14;
      config.defer_probability = 0.3;
      Trace trace = simulate(ccfa, config);
      require(replay_check(ccfa, trace),
              std::string("replay rejected a simulated trace on ") + name);
    }
  }
  for (std::uint64_t seed = 200; seed < 210; ++seed) {
    Ccfa ccfa = random_ccfa(seed).ccfa;
    SimConfig config;
    config.mode = SimConfig::Mode::Random;
    config.seed = seed;
    config.steps = 18;
    config.defer_probability = 0.25;
    Trace trace = simulate(ccfa, config);
    require(replay_check(ccfa, trace),
            "replay rejected a simulated trace at seed " + std::to_string(seed));
  }
}

// 8. Report pipeline: a synthetic 30-minute session over the chanu model
//    with three planted bugs and 300 s windows.
void criterion8() {
  Ccfa ccfa = load_fixture_ccfa("fig6.json");
  CallbackKindMap kinds = classify_callbacks(ccfa);

  auto segment = [&ccfa](const std::string& script,
                         std::int64_t offset) -> Trace {
    SimConfig config;
    config.mode = SimConfig::Mode::Scripted;
    config.script = parse_script(script);
    Trace trace = simulate(ccfa, config);
    for (std::size_t i = 0; i < trace.records.size(); ++i)
      trace.records[i].timestamp_ms = offset + static_cast<std::int64_t>(i) * 1000;
    return trace;
  };

  const std::string click_once =
      "event launch\ndrain\nevent click_capture\ndrain\ndrain\n";
  const std::string click_then_tab =
      "event launch\ndrain\nevent click_capture\ndrain\ndrain\nevent "
      "tab_tab1\ndrain\n";
  const std::string double_click =
      "event launch\ndrain\nevent click_capture\nevent click_capture\ndrain\n"
      "drain\ndrain\n";
  const std::string tab_then_click =
      "event launch\ndrain\nevent tab_tab1\ndrain\nevent "
      "click_capture\ndrain\ndrain\n";
  const std::string click_wait_click =
      "event launch\ndrain\nevent click_capture\ndrain\ndrain\nevent "
      "click_capture\ndrain\n";

  std::vector<Trace> session = {
      segment(click_once, 10000),        // window 1: covers onResume->onClick
      segment(click_then_tab, 310000),   // window 2: onClick->onTab + async (i)
      segment(double_click, 610000),     // window 3: async interleaving (ii)
      segment(tab_then_click, 910000),   // window 4: remaining event pairs
      segment(click_once, 1210000),      // window 5: nothing new
      segment(click_wait_click, 1510000) // window 6: async (i) with onClick
  };
  std::vector<BugEvent> bugs = {
      {700000, "crash-1"}, {1000000, "crash-2"}, {1700000, "crash-3"}};

  std::map<Criterion, RequiredSet> required = {
      {Criterion::EventEvent, gen_event_event(ccfa)},
      {Criterion::EventApiSync, gen_event_api_sync(ccfa)},
      {Criterion::EventApiAsync, gen_event_api_async(ccfa)},
      {Criterion::GuiPair, gen_gui_pairs(ccfa)}};
  TimeSeries series = time_series(required, session, bugs, 300, kinds);

  require(series.snapshots.size() == 6,
          "expected 6 snapshots, got " +
              std::to_string(series.snapshots.size()));
  for (std::size_t k = 1; k < series.snapshots.size(); ++k)
    for (const auto& [criterion, ratio] : series.snapshots[k].ratios)
      require(ratio >= series.snapshots[k - 1].ratios.at(criterion),
              "ratios decreased between snapshots");

  auto ratios_of = [&series](Criterion criterion) {
    std::vector<double> out;
    for (const Snapshot& snapshot : series.snapshots)
      out.push_back(snapshot.ratios.at(criterion));
    return out;
  };
  // Derived by hand from the prefix-coverage definition over the segments.
  require(ratios_of(Criterion::EventEvent) ==
              std::vector<double>({0.25, 0.5, 0.5, 1.0, 1.0, 1.0}),
          "event-event snapshot ratios are wrong");
  require(ratios_of(Criterion::EventApiAsync) ==
              std::vector<double>({0.0, 0.25, 0.5, 0.5, 0.5, 0.75}),
          "event-api-async snapshot ratios are wrong");
  require(ratios_of(Criterion::GuiPair) ==
              std::vector<double>({0.0, 0.5, 0.5, 1.0, 1.0, 1.0}),
          "gui snapshot ratios are wrong");
  require(ratios_of(Criterion::EventApiSync) ==
              std::vector<double>(6, 1.0),
          "event-api-sync should be vacuously satisfied");

  auto counts = correlate_bugs(series);
  require(counts.at(Criterion::EventEvent) == 1, "event-event correlation");
  require(counts.at(Criterion::EventApiSync) == 0, "event-api-sync correlation");
  require(counts.at(Criterion::EventApiAsync) == 2,
          "event-api-async correlation");
  require(counts.at(Criterion::GuiPair) == 1, "gui correlation");
}

struct Check {
  std::string name;
  std::function<void()> fn;
  long limit_ms;
};

}  // namespace
}  // namespace cbcov

int main() {
  using namespace cbcov;
  std::vector<Check> checks = {
      {"1: fig5 event-event set (9 sequences, onCreate anchors)", criterion1, 1000},
      {"2: fig4 worked pairs and loader caller pair", criterion2, 1000},
      {"3: fig2 caller pairs and region pairs (5 total)", criterion3, 1000},
      {"4: fig6 four async interleavings in canonical order", criterion4, 1000},
      {"5: scripted fig4 run, filter, coverage", criterion5, 1000},
      {"6: oracle equivalence on 120 random CCFAs", criterion6, 60000},
      {"7: property suite", criterion7, 30000},
      {"8: report pipeline with planted bugs", criterion8, 5000},
  };

  int failures = 0;
  for (const Check& check : checks) {
    auto start = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      check.fn();
    } catch (const Failure& failure) {
      verdict = "FAIL";
      detail = failure.message;
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    if (verdict == "PASS" && elapsed > check.limit_ms) {
      verdict = "FAIL";
      detail = "over time budget (" + std::to_string(elapsed) + " ms > " +
               std::to_string(check.limit_ms) + " ms)";
    }
    if (verdict == "FAIL") ++failures;
    std::cout << "[" << verdict << "] criterion " << check.name << " ("
              << elapsed << " ms)";
    if (!detail.empty()) std::cout << "\n        " << detail;
    std::cout << "\n";
  }
  return failures == 0 ? 0 : 1;
}
