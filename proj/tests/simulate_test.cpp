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

#include "simulate.hpp"

#include <gtest/gtest.h>

#include "coverage.hpp"
#include "random_ccfa.hpp"
#include "seqgen.hpp"
#include "test_util.hpp"
#include "trace.hpp"

namespace cbcov {
namespace {

SimConfig scripted(const std::string& text) {
  SimConfig config;
  config.mode = SimConfig::Mode::Scripted;
  config.script = parse_script(text);
  return config;
}

std::vector<std::pair<std::string, Point>> symbols_of(const Trace& trace) {
  std::vector<std::pair<std::string, Point>> out;
  for (const TraceRecord& record : trace.records)
    out.push_back({record.callback, record.point});
  return out;
}

TEST(ParseScript, DirectivesAndComments) {
  Script script = parse_script("# intro\nevent launch\ndrain\nchoose 2\n\n");
  ASSERT_EQ(script.directives.size(), 3u);
  EXPECT_EQ(script.directives[0].kind, Directive::Kind::Event);
  EXPECT_EQ(script.directives[0].label, "launch");
  EXPECT_EQ(script.directives[1].kind, Directive::Kind::Drain);
  EXPECT_EQ(script.directives[2].kind, Directive::Kind::Choose);
  EXPECT_EQ(script.directives[2].index, 2u);
}

TEST(ParseScript, RejectsUnknownDirective) {
  EXPECT_THROW(parse_script("noop"), SimError);
  EXPECT_THROW(parse_script("choose"), SimError);
  EXPECT_THROW(parse_script("event"), SimError);
}

TEST(Simulate, Fig4ScriptReproducesThePaperTrace) {
  Ccfa ccfa = load_fixture_ccfa("fig4.json");
  Trace trace = simulate(ccfa, scripted(read_fixture("launch_back.script")));
  Trace paper = parse_trace(read_fixture("paper_trace.txt"));
  EXPECT_EQ(symbols_of(trace), symbols_of(paper));
  // Synthetic timestamps count up from zero.
  for (std::size_t i = 0; i < trace.records.size(); ++i)
    EXPECT_EQ(trace.records[i].timestamp_ms, static_cast<std::int64_t>(i));
}

TEST(Simulate, Fig4ChooseOneSkipsTheLoaderRegion) {
  Ccfa ccfa = load_fixture_ccfa("fig4.json");
  Trace trace = simulate(ccfa, scripted("event launch\ndrain\nchoose 1"));
  std::vector<std::pair<std::string, Point>> expected = {
      {"A.onCreate()", Point::Entry}, {"A.onCreate()", Point::Exit},
      {"A.onStart()", Point::Entry},  {"A.onStart()", Point::Exit},
  };
  EXPECT_EQ(symbols_of(trace), expected);
}

TEST(Simulate, Fig6DoubleClickRealizesTheBugInterleaving) {
  Ccfa ccfa = load_fixture_ccfa("fig6.json");
  Trace trace = simulate(ccfa, scripted(read_fixture("chanu_bug.script")));
  std::vector<std::pair<std::string, Point>> expected = {
      {"CamAct.onResume()", Point::Entry},
      {"CamAct.onResume()", Point::Exit},
      {"CaptureList.onClick()", Point::Entry},
      {"CaptureList.onClick()", Point::Exit},
      {"CaptureList.onClick()", Point::Entry},
      {"CaptureList.onClick()", Point::Exit},
      {"CamAct$3.onPictureTaken()", Point::Entry},
      {"CamAct$3.onPictureTaken()", Point::Exit},
  };
  EXPECT_EQ(symbols_of(trace), expected);
}

TEST(Simulate, Fig6ClickThenDrainRunsThePictureTaskFirst) {
  Ccfa ccfa = load_fixture_ccfa("fig6.json");
  // Draining before the tab event realizes the other interleaving.
  Trace trace = simulate(
      ccfa, scripted("event launch\ndrain\nevent click_capture\ndrain\ndrain\n"
                     "event tab_tab1\ndrain"));
  std::vector<std::pair<std::string, Point>> expected = {
      {"CamAct.onResume()", Point::Entry},
      {"CamAct.onResume()", Point::Exit},
      {"CaptureList.onClick()", Point::Entry},
      {"CaptureList.onClick()", Point::Exit},
      {"CamAct$3.onPictureTaken()", Point::Entry},
      {"CamAct$3.onPictureTaken()", Point::Exit},
      {"CaptureList.onTab()", Point::Entry},
      {"CaptureList.onTab()", Point::Exit},
  };
  EXPECT_EQ(symbols_of(trace), expected);
}

TEST(Simulate, ApiSyncRecordsNestInsideTheirCaller) {
  Ccfa ccfa = load_fixture_ccfa("fig2.json");
  Trace trace =
      simulate(ccfa, scripted("event start_service\ndrain\nchoose 1"));
  std::vector<std::pair<std::string, Point>> expected = {
      {"FDService.onCreate()", Point::Entry},
      {"DBHelper.onUpgrade()", Point::Entry},
      {"DBHelper.onUpgrade()", Point::Exit},
      {"DBHelper.onOpen()", Point::Entry},
      {"DBHelper.onOpen()", Point::Exit},
      {"FDService.onCreate()", Point::Exit},
  };
  EXPECT_EQ(symbols_of(trace), expected);
}

TEST(Simulate, DisabledEventAborts) {
  Ccfa ccfa = load_fixture_ccfa("fig6.json");
  try {
    simulate(ccfa, scripted("event click_capture"));
    FAIL() << "expected SimError";
  } catch (const SimError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("click_capture"), std::string::npos);
    EXPECT_NE(what.find("directive 1"), std::string::npos);
  }
}

TEST(Simulate, DrainOnEmptyQueueAborts) {
  Ccfa ccfa = load_fixture_ccfa("fig4.json");
  EXPECT_THROW(simulate(ccfa, scripted("drain")), SimError);
}

TEST(Simulate, ChooseOutOfRangeAborts) {
  Ccfa ccfa = load_fixture_ccfa("fig4.json");
  try {
    simulate(ccfa, scripted("event launch\ndrain\nchoose 7"));
    FAIL() << "expected SimError";
  } catch (const SimError& e) {
    EXPECT_NE(std::string(e.what()).find("out of range"), std::string::npos);
  }
}

TEST(Simulate, MissingChooseAtBranchAborts) {
  Ccfa ccfa = load_fixture_ccfa("fig4.json");
  EXPECT_THROW(simulate(ccfa, scripted("event launch\ndrain")), SimError);
}

TEST(Simulate, ChooseOutsideARunningTaskAborts) {
  Ccfa ccfa = load_fixture_ccfa("fig4.json");
  try {
    simulate(ccfa, scripted("choose 0"));
    FAIL() << "expected SimError";
  } catch (const SimError& e) {
    EXPECT_NE(std::string(e.what()).find("unexpected choose"), std::string::npos);
  }
}

TEST(Simulate, RandomModeIsDeterministicPerSeed) {
  Ccfa ccfa = load_fixture_ccfa("fig6.json");
  SimConfig config;
  config.mode = SimConfig::Mode::Random;
  config.seed = 1234;
  config.steps = 40;
  config.defer_probability = 0.3;
  Trace first = simulate(ccfa, config);
  Trace second = simulate(ccfa, config);
  EXPECT_EQ(render_trace(first), render_trace(second));
  EXPECT_FALSE(first.records.empty());
}

TEST(Simulate, TracesSatisfyTraceInvariants) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Ccfa ccfa = random_ccfa(seed).ccfa;
    SimConfig config;
    config.mode = SimConfig::Mode::Random;
    config.seed = seed * 31;
    config.steps = 25;
    config.defer_probability = 0.25;
    Trace trace = simulate(ccfa, config);
    std::int64_t previous = -1;
    for (const TraceRecord& record : trace.records) {
      EXPECT_GE(record.timestamp_ms, previous);
      previous = record.timestamp_ms;
    }
    // Parseable through the trace format.
    Trace again = parse_trace(render_trace(trace));
    EXPECT_EQ(again.records, trace.records);
  }
}

TEST(ReplayCheck, AcceptsThePaperTrace) {
  Ccfa ccfa = load_fixture_ccfa("fig4.json");
  Trace paper = parse_trace(read_fixture("paper_trace.txt"));
  EXPECT_TRUE(replay_check(ccfa, paper));
}

TEST(ReplayCheck, RejectsExitBeforeEntry) {
  Ccfa ccfa = load_fixture_ccfa("fig4.json");
  Trace bad = parse_trace("(1, A.onCreate(), EXIT)\n(2, A.onCreate(), ENTRY)");
  EXPECT_FALSE(replay_check(ccfa, bad));
}

TEST(ReplayCheck, RejectsForeignCallbacks) {
  Ccfa ccfa = load_fixture_ccfa("fig4.json");
  Trace bad = parse_trace("(1, Nope.f(), ENTRY)");
  EXPECT_FALSE(replay_check(ccfa, bad));
}

TEST(ReplayCheck, EmptyTraceIsTriviallyProducible) {
  Ccfa ccfa = load_fixture_ccfa("fig4.json");
  EXPECT_TRUE(replay_check(ccfa, Trace{}));
}

TEST(ReplayCheck, AcceptsBothChanuInterleavings) {
  Ccfa ccfa = load_fixture_ccfa("fig6.json");
  Trace bug = simulate(ccfa, scripted(read_fixture("chanu_bug.script")));
  EXPECT_TRUE(replay_check(ccfa, bug));
  Trace wait = simulate(
      ccfa, scripted("event launch\ndrain\nevent click_capture\ndrain\ndrain\n"
                     "event click_capture\ndrain"));
  EXPECT_TRUE(replay_check(ccfa, wait));
}

TEST(ReplayCheck, RejectsShuffledChanuRecords) {
  Ccfa ccfa = load_fixture_ccfa("fig6.json");
  // onPictureTaken cannot run before any click posted it.
  Trace bad = parse_trace(
      "(1, CamAct.onResume(), ENTRY)\n(2, CamAct.onResume(), EXIT)\n"
      "(3, CamAct$3.onPictureTaken(), ENTRY)\n"
      "(4, CamAct$3.onPictureTaken(), EXIT)");
  EXPECT_FALSE(replay_check(ccfa, bad));
}

// The round-trip law: everything the looper emits, replay accepts.
TEST(ReplayCheck, RoundTripOnScriptedAndRandomRuns) {
  Ccfa fig4 = load_fixture_ccfa("fig4.json");
  Trace scripted_run =
      simulate(fig4, scripted(read_fixture("launch_back.script")));
  EXPECT_TRUE(replay_check(fig4, scripted_run));

  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    Ccfa ccfa = random_ccfa(seed).ccfa;
    SimConfig config;
    config.mode = SimConfig::Mode::Random;
    config.seed = seed * 101 + 7;
    config.steps = 20;
    config.defer_probability = seed % 3 == 0 ? 0.5 : 0.0;
    Trace trace = simulate(ccfa, config);
    EXPECT_TRUE(replay_check(ccfa, trace)) << "seed " << seed;
  }
}

// Accumulated random runs eventually witness every feasible sequence on the
// fixture models.
TEST(Simulate, CoverageSaturatesOverAccumulatedRuns) {
  for (const char* name : {"fig4.json", "fig6.json"}) {
    Ccfa ccfa = load_fixture_ccfa(name);
    CallbackKindMap kinds = classify_callbacks(ccfa);
    RequiredSet ee = gen_event_event(ccfa);
    RequiredSet eaa = gen_event_api_async(ccfa);
    std::vector<Trace> traces;
    double previous = 0.0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      SimConfig config;
      config.mode = SimConfig::Mode::Random;
      config.seed = seed;
      config.steps = 40;
      config.defer_probability = 0.4;
      traces.push_back(simulate(ccfa, config));
      double ratio = coverage_report(ee, traces, kinds).ratio;
      EXPECT_GE(ratio, previous) << name;
      previous = ratio;
    }
    EXPECT_DOUBLE_EQ(coverage_report(ee, traces, kinds).ratio, 1.0) << name;
    EXPECT_DOUBLE_EQ(coverage_report(eaa, traces, kinds).ratio, 1.0) << name;
  }
}

TEST(ReplayCheck, CapAborts) {
  Ccfa ccfa = load_fixture_ccfa("fig6.json");
  SimConfig config;
  config.mode = SimConfig::Mode::Random;
  config.seed = 99;
  config.steps = 60;
  Trace trace = simulate(ccfa, config);
  if (trace.records.size() > 8) {
    EXPECT_THROW(replay_check(ccfa, trace, 10), SimError);
  }
}

}  // namespace
}  // namespace cbcov
