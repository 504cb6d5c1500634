// Copyright 2026 The svcsdk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/stat.h>

#include <random>

#include "svcsdk/common/error.h"
#include "svcsdk/common/util.h"
#include "svcsdk/sandbox/emulator.h"
#include "svcsdk/sandbox/event_log.h"
#include "svcsdk/sandbox/infrastructure.h"
#include "svcsdk/sandbox/placement.h"
#include "svcsdk/sandbox/plugin_client.h"
#include "svcsdk/sandbox/runaway.h"
#include "svcsdk/sandbox/trace.h"
#include "test_support.h"

namespace svcsdk {
namespace {

namespace fs = std::filesystem;
using testing::CodesOf;
using testing::FixturePath;
using testing::LoadInfra;
using testing::LoadService;
using testing::LoadTrace;
using testing::ReadFixture;

template <typename F>
Error ErrorOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error thrown";
  return Error(ErrorCode::kIo, "none");
}

TrafficTrace Constant(const std::string& cp, double mbps, std::int64_t last) {
  return ParseTrace("tick,cp,offered_mbps\n0," + cp + "," + FormatNumber(mbps) +
                    "\n" + std::to_string(last) + "," + cp + "," +
                    FormatNumber(mbps) + "\n");
}

// Writes an executable shell script and returns its directory.
fs::path Script(const TempDir& dir, const std::string& name,
                const std::string& body) {
  const fs::path path = dir.path() / name;
  WriteFile(path, "#!/bin/sh\n" + body);
  ::chmod(path.c_str(), 0755);
  return dir.path();
}

std::map<std::int64_t, nlohmann::json> RouterMetrics(const EventLog& log) {
  std::map<std::int64_t, nlohmann::json> out;
  for (const auto& r : log.OfType("metrics")) {
    for (const auto& v : r["vnfs"]) {
      if (v["vnf_id"] == "router") out[r["tick"].get<std::int64_t>()] = v;
    }
  }
  return out;
}

TEST(Infrastructure, FourPopFixture) {
  const auto infra = LoadInfra();
  ASSERT_EQ(infra.pops.size(), 4u);
  int edge = 0;
  for (const auto& p : infra.pops) edge += p.zone == Zone::kEdge;
  EXPECT_EQ(edge, 2);
  EXPECT_EQ(infra.FindPop("core")->cpu_cores, 16);
  EXPECT_EQ(infra.inter_pop_links.size(), 3u);
}

TEST(Infrastructure, SinglePopAndSchemaErrors) {
  const auto one = LoadInfrastructure(
      "pops:\n  - {id: only, zone: cloud, cpu_cores: 4, memory_mb: 1024, "
      "storage_gb: 10}\n");
  EXPECT_EQ(one.pops.size(), 1u);
  EXPECT_TRUE(one.inter_pop_links.empty());
  EXPECT_EQ(ErrorOf([] {
              LoadInfrastructure(
                  "pops:\n  - {id: a, zone: edge, cpu_cores: 1, memory_mb: 1, "
                  "storage_gb: 1}\ninter_pop_links:\n  - {pop_a: a, pop_b: "
                  "nowhere, bandwidth_mbps: 1, latency_ms: 1}\n");
            }).code(),
            ErrorCode::kSchema);
  EXPECT_EQ(ErrorOf([] {
              LoadInfrastructure(
                  "pops:\n  - {id: a, zone: edge, cpu_cores: 0, memory_mb: 1, "
                  "storage_gb: 1}\n  - {id: a, zone: edge, cpu_cores: 1, "
                  "memory_mb: 1, storage_gb: 1}\n");
            }).code(),
            ErrorCode::kSchema);
  EXPECT_EQ(ErrorOf([] { LoadInfrastructure("pops: ["); }).code(),
            ErrorCode::kParse);
}

TEST(Trace, ParsingAndHoldSemantics) {
  const auto t = LoadTrace("traces/step.csv");
  EXPECT_EQ(t.LastTick(), 119);
  EXPECT_EQ(t.OfferedAt("in", 0), 1000);
  EXPECT_EQ(t.OfferedAt("in", 49), 1000);
  EXPECT_EQ(t.OfferedAt("in", 50), 9000);
  EXPECT_EQ(t.OfferedAt("in", 119), 9000);
  EXPECT_EQ(t.OfferedAt("other", 10), 0);
  const auto late = ParseTrace("tick,cp,offered_mbps\n5,x,10\n");
  EXPECT_EQ(late.OfferedAt("x", 4), 0);
  EXPECT_EQ(ParseTrace(FormatTrace(t)), t);
}

TEST(Trace, Errors) {
  EXPECT_EQ(ErrorOf([] { ParseTrace("time,cp,load\n0,x,1\n"); }).code(),
            ErrorCode::kParse);
  EXPECT_EQ(ErrorOf([] { ParseTrace("tick,cp,offered_mbps\n0,x,abc\n"); })
                .code(),
            ErrorCode::kParse);
  EXPECT_EQ(ErrorOf([] { ParseTrace("tick,cp,offered_mbps\n0,x,-1\n"); })
                .code(),
            ErrorCode::kRange);
  EXPECT_EQ(ErrorOf([] {
              ParseTrace("tick,cp,offered_mbps\n5,x,1\n3,x,1\n");
            }).code(),
            ErrorCode::kParse);
}

TEST(Placement, ZonePreference) {
  const auto infra = LoadInfra();
  const auto cdn = LoadService("cdn");
  std::vector<std::string> router;
  for (const Pop* p : ZonePreference(infra, cdn.Vnfd("router"))) {
    router.push_back(p->id);
  }
  EXPECT_EQ(router, (std::vector<std::string>{"core", "edge-a", "edge-b",
                                              "cloud"}));
  std::vector<std::string> dpi;
  for (const Pop* p : ZonePreference(infra, cdn.Vnfd("dpi1"))) {
    dpi.push_back(p->id);
  }
  EXPECT_EQ(dpi, (std::vector<std::string>{"edge-a", "edge-b", "core",
                                           "cloud"}));
}

TEST(Placement, FirstFitHandExecution) {
  // dpi1 and cache1 fill edge-a's two cores, dpi2 and cache2 fill edge-b,
  // the router's zone hint sends it to core.
  const auto cdn = LoadService("cdn");
  const Placement expected = {{"dpi1-1", "edge-a"},
                              {"cache1-1", "edge-a"},
                              {"dpi2-1", "edge-b"},
                              {"cache2-1", "edge-b"},
                              {"router-1", "core"}};
  EXPECT_EQ(PlaceFirstFit(cdn, LoadInfra(), InitialInstances(cdn)), expected);
  EXPECT_EQ(Place(cdn, LoadInfra()), expected);
  EXPECT_TRUE(CheckPlacement(expected, cdn, LoadInfra()).issues().empty());
}

TEST(Placement, FixedInstancesConsumeCapacity) {
  const auto cdn = LoadService("cdn");
  const auto instances = InitialInstances(cdn);
  const Placement fixed = {{"router-1", "edge-a"}};
  const auto p = PlaceFirstFit(cdn, LoadInfra(), instances, fixed);
  EXPECT_EQ(p.at("router-1"), "edge-a");
  EXPECT_EQ(p.at("dpi1-1"), "edge-b");
}

TEST(Placement, InfeasibleDemand) {
  auto cdn = LoadService("cdn");
  cdn.vnfds["router"].resource_flavors[0].cpu_cores = 999;
  const auto e = ErrorOf(
      [&] { PlaceFirstFit(cdn, LoadInfra(), InitialInstances(cdn)); });
  EXPECT_EQ(e.code(), ErrorCode::kNoFeasiblePlacement);
  EXPECT_NE(std::string(e.what()).find("router-1"), std::string::npos);
}

TEST(CheckPlacement, AllOnOneEdgePop) {
  const auto cdn = LoadService("cdn");
  Placement p;
  for (const auto& i : InitialInstances(cdn)) p[i.instance_id] = "edge-a";
  const auto report = CheckPlacement(p, cdn, LoadInfra());
  ASSERT_TRUE(report.Has(IssueCode::kCapacityExceeded));
  bool found = false;
  for (const auto& i : report.issues()) {
    if (i.code == IssueCode::kCapacityExceeded &&
        i.message.find("demand 6") != std::string::npos &&
        i.message.find("capacity 2") != std::string::npos) {
      found = true;
    }
  }
  EXPECT_TRUE(found) << report.ToTable();
}

TEST(CheckPlacement, LatencyViolation) {
  auto cdn = LoadService("cdn");
  for (auto& l : cdn.service.virtual_links) {
    if (l.id == "dpi1-router") l.max_latency_ms = 1;
  }
  Placement p = PlaceFirstFit(cdn, LoadInfra(), InitialInstances(cdn));
  p["dpi1-1"] = "core";
  p["router-1"] = "cloud";
  EXPECT_EQ(CodesOf(CheckPlacement(p, cdn, LoadInfra())),
            std::set<IssueCode>{IssueCode::kLatencyViolation});
  p["router-1"] = "core";
  EXPECT_TRUE(CheckPlacement(p, cdn, LoadInfra()).passed());
}

TEST(CheckPlacement, UnplacedAndUnknown) {
  const auto cdn = LoadService("cdn");
  Placement p = PlaceFirstFit(cdn, LoadInfra(), InitialInstances(cdn));
  p.erase("cache1-1");
  p["dpi2-1"] = "atlantis";
  const auto codes = CodesOf(CheckPlacement(p, cdn, LoadInfra()));
  EXPECT_TRUE(codes.contains(IssueCode::kUnplacedVnf));
  EXPECT_TRUE(codes.contains(IssueCode::kUnknownPop));
}

TEST(PluginPlacement, UnknownPopIsPluginError) {
  TempDir dir("svcsdk-plugin");
  Script(dir, "place.sh",
         "read line\n"
         "printf '{\"type\":\"placement\",\"assignments\":{\"router-1\":"
         "\"mars\"}}\\n'\n");
  PluginProcess plugin(dir.path(), "place.sh");
  const auto service = LoadService("elastic-router");
  const auto e = ErrorOf([&] {
    PlaceWithPlugin(plugin, service, LoadInfra(), InitialInstances(service));
  });
  EXPECT_EQ(e.code(), ErrorCode::kPlugin);
  EXPECT_NE(std::string(e.what()).find("mars"), std::string::npos);
}

TEST(PluginProcess, RequestResponseAndReuse) {
  TempDir dir("svcsdk-plugin");
  Script(dir, "echo.sh",
         "n=0\nwhile IFS= read -r line; do n=$((n+1)); "
         "printf '{\"type\":\"no_op\",\"count\":%d}\\n' $n; done\n");
  PluginProcess plugin(dir.path(), "echo.sh");
  EXPECT_EQ(plugin.Request({{"type", "ping"}})["count"], 1);
  EXPECT_EQ(plugin.Request({{"type", "ping"}})["count"], 2);
}

TEST(PluginProcess, FailuresArePluginErrors) {
  TempDir dir("svcsdk-plugin");
  Script(dir, "slow.sh", "read line\nsleep 5\n");
  Script(dir, "crash.sh", "read line\nexit 3\n");
  Script(dir, "junk.sh", "read line\necho 'not json'\n");
  Script(dir, "untyped.sh", "read line\necho '{\"x\":1}'\n");
  {
    PluginProcess slow(dir.path(), "slow.sh", std::chrono::milliseconds(200));
    EXPECT_EQ(ErrorOf([&] { slow.Request({{"type", "t"}}); }).code(),
              ErrorCode::kPlugin);
  }
  for (const char* name : {"crash.sh", "junk.sh", "untyped.sh"}) {
    PluginProcess p(dir.path(), name);
    EXPECT_EQ(ErrorOf([&] { p.Request({{"type", "t"}}); }).code(),
              ErrorCode::kPlugin)
        << name;
  }
}

ScaleDecision Decision(int from, int to) {
  ScaleDecision d;
  d.vnf_id = "v";
  d.current_instances = from;
  d.target_instances = to;
  d.total_cpu_cores = to;
  return d;
}

TEST(Runaway, DoublingAbortsAtThirdDecision) {
  RunawayDetector detector;
  EXPECT_FALSE(detector.Observe(Decision(1, 2)));
  EXPECT_FALSE(detector.Observe(Decision(2, 4)));
  EXPECT_TRUE(detector.Observe(Decision(4, 8)));
}

TEST(Runaway, InterruptedGrowthResetsStreak) {
  EXPECT_FALSE(DetectRunaway({Decision(1, 2), Decision(2, 4), Decision(4, 4),
                              Decision(4, 8), Decision(8, 16)}));
  EXPECT_FALSE(DetectRunaway({Decision(1, 2), Decision(2, 3), Decision(3, 6)}));
}

TEST(Runaway, SteadyServiceNeverAborts) {
  std::vector<ScaleDecision> history(200, Decision(2, 2));
  EXPECT_FALSE(DetectRunaway(history));
}

TEST(Runaway, DeclaredBounds) {
  ScaleDecision d = Decision(10, 65);
  d.max_instances = 64;
  EXPECT_TRUE(DetectRunaway({d}));
  d.target_instances = 64;
  EXPECT_FALSE(DetectRunaway({d}));
  d.max_total_cpu_cores = 100;
  d.total_cpu_cores = 128;
  EXPECT_TRUE(DetectRunaway({d}));
}

// Growth streaks of length >= 3 are exactly what trips rule (c).
TEST(Runaway, GrowthRuleProperty) {
  std::mt19937 rng(6);
  for (int round = 0; round < 300; ++round) {
    std::vector<ScaleDecision> history;
    int n = 1;
    int streak = 0;
    bool expected = false;
    for (int i = 0; i < 12 && !expected; ++i) {
      const int next = rng() % 3 == 0 ? n : n * static_cast<int>(1 + rng() % 3);
      history.push_back(Decision(n, next));
      streak = next >= 2 * n ? streak + 1 : 0;
      expected = streak >= 3;
      n = std::min(next, 1 << 20);
    }
    EXPECT_EQ(DetectRunaway(history).has_value(), expected) << round;
  }
}

TEST(EventLog, RoundTripAndOrdering) {
  EventLog log;
  log.Append(0, "deploy", {{"x", 1}});
  log.Append(0, "metrics");
  log.Append(3, "alarm", {{"value", 0.5}});
  const auto parsed = EventLog::Parse(log.ToJsonLines());
  EXPECT_EQ(parsed.records(), log.records());
  EXPECT_EQ(parsed.OfType("alarm").size(), 1u);
  for (std::size_t i = 0; i < log.records().size(); ++i) {
    EXPECT_EQ(log.records()[i]["seq"], i);
  }
  EXPECT_EQ(ErrorOf([] { EventLog::Parse("{\"seq\":0}\nnot json\n"); }).code(),
            ErrorCode::kParse);
}

TEST(Emulator, ConstantLowLoadIsQuiet) {
  const auto r = RunEmulation(LoadService("elastic-router"), LoadInfra(),
                              Constant("in", 1000, 200));
  EXPECT_FALSE(r.aborted());
  EXPECT_TRUE(r.log.OfType("scale_request").empty());
  EXPECT_TRUE(r.applied.empty());
  EXPECT_EQ(r.max_loss, 0);
  EXPECT_EQ(r.ticks_run, 201);
}

TEST(Emulator, StepTraceClosedForm) {
  // One 5000 Mbit/s instance until the first decision after the step
  // (tick 54); the second instance is live from tick 58.
  const auto r = RunEmulation(LoadService("elastic-router"), LoadInfra(),
                              LoadTrace("traces/step.csv"));
  ASSERT_EQ(r.requested.size(), 1u);
  EXPECT_EQ(r.requested[0].issued_tick, 54);
  EXPECT_EQ(r.requested[0].effective_tick, 57);
  EXPECT_EQ(r.requested[0].target_instances, 2);
  const auto m = RouterMetrics(r.log);
  for (const auto& [tick, v] : m) {
    const double loss = v["packet_loss_ratio"].get<double>();
    if (tick < 50 || tick >= 58) {
      EXPECT_EQ(loss, 0) << tick;
    } else {
      EXPECT_NEAR(loss, 4000.0 / 9000.0, 1e-12) << tick;
    }
  }
  EXPECT_EQ(m.at(58)["achieved_mbps"], 9000.0);
  EXPECT_EQ(m.at(58)["instances"], 2);
  ASSERT_EQ(r.log.OfType("alarm").size(), 1u);
  EXPECT_EQ(r.log.OfType("alarm")[0]["first_tick"], 50);
  EXPECT_EQ(r.state.FindVnf("router")->instances.size(), 2u);
}

TEST(Emulator, SinusoidRisesFallsAndRecovers) {
  const auto r = RunEmulation(LoadService("elastic-router"), LoadInfra(),
                              LoadTrace("traces/sinusoid.csv"));
  ASSERT_FALSE(r.aborted());
  bool up = false;
  bool down = false;
  for (const auto& a : r.log.OfType("scale_applied")) {
    (a["instances"].get<int>() > 1 ? up : down) = true;
  }
  EXPECT_TRUE(up);
  EXPECT_TRUE(down);
  // Loss above 1% only within 5 ticks of a scale event.
  std::vector<std::pair<std::int64_t, std::int64_t>> windows;
  for (const auto& a : r.requested) {
    std::int64_t end = r.ticks_run;
    for (const auto& b : r.applied) {
      if (b.issued_tick == a.issued_tick && b.vnf_id == a.vnf_id) {
        end = b.effective_tick + 5;
      }
    }
    windows.push_back({a.issued_tick - 5, end});
  }
  int lossy = 0;
  for (const auto& [tick, v] : RouterMetrics(r.log)) {
    if (v["packet_loss_ratio"].get<double>() < 0.01) continue;
    ++lossy;
    bool covered = false;
    for (const auto& [from, to] : windows) {
      covered |= tick >= from && tick <= to;
    }
    EXPECT_TRUE(covered) << "loss at tick " << tick;
  }
  EXPECT_GT(lossy, 0);
}

TEST(Emulator, PolicyOffKeepsInstanceCounts) {
  EmulationConfig config;
  config.policy = std::string(kNoPolicy);
  const auto r = RunEmulation(LoadService("elastic-router"), LoadInfra(),
                              LoadTrace("traces/sinusoid.csv"), config);
  EXPECT_TRUE(r.log.OfType("scale_request").empty());
  for (const auto& [tick, v] : RouterMetrics(r.log)) {
    EXPECT_EQ(v["instances"], 1) << tick;
  }
}

// Under constant load the threshold VNFM never reverses direction.
TEST(Emulator, HysteresisUnderConstantLoadProperty) {
  const auto service = LoadService("elastic-router");
  for (double load = 500; load <= 24000; load += 1150) {
    const auto r = RunEmulation(service, LoadInfra(), Constant("in", load, 150));
    int direction = 0;
    int previous = 1;
    for (const auto& a : r.applied) {
      const int n = *a.target_instances;
      const int d = n > previous ? 1 : -1;
      EXPECT_TRUE(direction == 0 || d == direction) << "load " << load;
      direction = d;
      previous = n;
    }
  }
}

TEST(Emulator, FlowConservationAndPopCapacity) {
  const auto infra = LoadInfra();
  const auto r = RunEmulation(LoadService("cdn"), infra,
                              LoadTrace("traces/cdn-ramp.csv"));
  ASSERT_FALSE(r.aborted()) << r.abort_message;
  for (const auto& rec : r.log.OfType("metrics")) {
    for (const auto& p : rec["pops"]) {
      EXPECT_LE(p["cpu_cores"].get<std::int64_t>(),
                infra.FindPop(p["id"].get<std::string>())->cpu_cores);
    }
    for (const auto& v : rec["vnfs"]) {
      const double offered = v["offered_mbps"].get<double>();
      EXPECT_NEAR(v["achieved_mbps"].get<double>() +
                      v["dropped_mbps"].get<double>(),
                  offered, 1e-9 * std::max(1.0, offered));
      EXPECT_LE(v["achieved_mbps"].get<double>(),
                v["instances"].get<double>() * v["capacity_mbps"].get<double>() +
                    1e-9);
    }
  }
}

TEST(Emulator, DeterministicLogs) {
  EmulationConfig config;
  config.seed = 42;
  const auto a = RunEmulation(LoadService("cdn"), LoadInfra(),
                              LoadTrace("traces/cdn-ramp.csv"), config);
  const auto b = RunEmulation(LoadService("cdn"), LoadInfra(),
                              LoadTrace("traces/cdn-ramp.csv"), config);
  EXPECT_EQ(a.log.ToJsonLines(), b.log.ToJsonLines());
  EXPECT_EQ(MetricsFromEventLog(a.log), a.state.metrics);
}

TEST(Emulator, DoublingPluginAborts) {
  EmulationConfig config;
  config.plugin_root = FixturePath("elastic-router");
  const auto r =
      RunEmulation(LoadService("elastic-router", "nsd-doubling.yaml"),
                   LoadInfra(), LoadTrace("traces/step.csv"), config);
  EXPECT_EQ(r.abort_reason, std::string(kAbortRunaway));
  EXPECT_EQ(r.log.OfType("scale_request").size(), 3u);
  EXPECT_EQ(r.log.OfType("abort").size(), 1u);
}

TEST(Emulator, OvercommittingNfvoRejectedBeforeFirstTick) {
  EmulationConfig config;
  config.plugin_root = FixturePath("elastic-router");
  const auto r =
      RunEmulation(LoadService("elastic-router", "nsd-overcommit.yaml"),
                   LoadInfra(), LoadTrace("traces/step.csv"), config);
  EXPECT_EQ(r.abort_reason, std::string(kAbortPlacementRejected));
  EXPECT_EQ(r.ticks_run, 0);
  EXPECT_TRUE(r.log.OfType("metrics").empty());
}

TEST(Emulator, ExhaustedScaleOut) {
  // 200 Gbit/s needs 40 router instances; core and cloud hold 20.
  const auto trace = ParseTrace(
      "tick,cp,offered_mbps\n0,in,1000\n10,in,200000\n40,in,200000\n");
  EmulationConfig strict;
  strict.strict = true;
  const auto aborted =
      RunEmulation(LoadService("elastic-router"), LoadInfra(), trace, strict);
  EXPECT_EQ(aborted.abort_reason, std::string(kAbortExhausted));
  const auto lenient =
      RunEmulation(LoadService("elastic-router"), LoadInfra(), trace);
  EXPECT_FALSE(lenient.log.OfType("scale_failed").empty());
  EXPECT_NE(lenient.abort_reason, std::string(kAbortExhausted));
  EXPECT_GT(lenient.ticks_run, 15);
}

TEST(Emulator, UnknownTraceConnectionPoint) {
  EXPECT_EQ(ErrorOf([] {
              RunEmulation(LoadService("cdn"), LoadInfra(),
                           Constant("in", 10, 5));
            }).code(),
            ErrorCode::kInvalidArgument);
}

TEST(Emulator, FinalDeploymentSnapshot) {
  const auto r = RunEmulation(LoadService("elastic-router"), LoadInfra(),
                              LoadTrace("traces/step.csv"));
  const auto snap = FinalDeployment(EventLog::Parse(r.log.ToJsonLines()));
  EXPECT_EQ(snap.instances.size(), 2u);
  EXPECT_EQ(snap.placement.at("router-2"), "core");
  EXPECT_EQ(snap.pops.size(), 4u);
  EXPECT_EQ(ErrorOf([] { FinalDeployment(EventLog{}); }).code(),
            ErrorCode::kParse);
}

}  // namespace
}  // namespace svcsdk
