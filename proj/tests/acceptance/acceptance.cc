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

// Acceptance suite: one PASS/FAIL line per criterion.

#include <stdlib.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "svcsdk/catalogue/templates.h"
#include "svcsdk/cli/cli.h"
#include "svcsdk/common/util.h"
#include "svcsdk/descriptor/parser.h"
#include "svcsdk/packager/package.h"
#include "svcsdk/sandbox/emulator.h"
#include "svcsdk/sandbox/placement.h"
#include "svcsdk/telemetry/metrics.h"
#include "svcsdk/telemetry/profile.h"
#include "svcsdk/validator/cycles.h"
#include "test_support.h"

namespace svcsdk::testing {
namespace {

namespace fs = std::filesystem;

// Collects failed expectations for one criterion.
class Outcome {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void Note(const std::string& text) { notes_.push_back(text); }
  bool passed() const { return failed_ == 0; }
  std::string Summary() const {
    std::string text;
    for (const auto& n : notes_) text += (text.empty() ? "" : "; ") + n;
    for (const auto& f : failures_) text += (text.empty() ? "" : "; ") + f;
    if (failed_ > failures_.size()) {
      text += "; " + std::to_string(failed_ - failures_.size()) + " more";
    }
    return text;
  }

 private:
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
  std::size_t failed_ = 0;
};

std::string Num(double v) { return FormatNumber(v); }

bool Near(double actual, double expected, double relative) {
  return std::abs(actual - expected) <= relative * std::abs(expected);
}

// Metrics records of one VNF keyed by tick.
std::map<std::int64_t, nlohmann::json> VnfMetrics(const EventLog& log,
                                                   const std::string& vnf) {
  std::map<std::int64_t, nlohmann::json> by_tick;
  for (const auto& record : log.OfType("metrics")) {
    for (const auto& v : record["vnfs"]) {
      if (v["vnf_id"] == vnf) by_tick[record["tick"].get<std::int64_t>()] = v;
    }
  }
  return by_tick;
}

PerformanceProfile RouterProfile() {
  // Router benchmark: 1250 Mbit/s per core, no plateau up to 8 cores.
  return FitProfile(BenchmarkSeries(
                        "router", [](double c) { return 1250.0 * c; },
                        {1, 2, 4, 8}, 20, 0.0, 1),
                    "router");
}

void DefectCorpusDetection(Outcome& o) {
  const auto corpus = DefectCorpus();
  std::set<IssueCode> covered;
  int multi = 0;
  for (const auto& c : corpus) {
    const std::set<IssueCode> found = CodesOf(c.check());
    o.Expect(found == c.seeded, c.name + " seeded " + CodeList(c.seeded) +
                                    " found " + CodeList(found));
    covered.insert(c.seeded.begin(), c.seeded.end());
    if (c.seeded.size() > 1) ++multi;
  }
  const KeyPair key = TestKey();
  const ValidationReport clean =
      VerifyPackage(CdnTree().Seal(key), {key.public_key});
  o.Expect(clean.issues().empty(),
           "clean CDN package reports " + std::to_string(clean.issues().size()) +
               " issues");
  const ValidationReport source = ValidateSources(FixtureSources("cdn"));
  o.Expect(source.issues().empty(), "clean CDN sources report issues");
  o.Expect(corpus.size() >= 12, "corpus too small");
  o.Expect(covered.size() == 21, "corpus covers " +
                                     std::to_string(covered.size()) +
                                     " of 21 issue codes");
  o.Note(std::to_string(corpus.size()) + " cases (" + std::to_string(multi) +
         " multi-defect), " + std::to_string(covered.size()) +
         " issue codes, clean fixture " + std::to_string(clean.issues().size()) +
         " issues");
}

void CycleOracleEquivalence(Outcome& o) {
  std::mt19937_64 rng(20260101);
  std::size_t total_cycles = 0;
  std::size_t steered_cycles = 0;
  std::size_t flipped = 0;
  for (int g = 0; g < 200; ++g) {
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    std::bernoulli_distribution edge(0.3);
    std::bernoulli_distribution loop(0.1);
    std::bernoulli_distribution steer(0.3);
    std::vector<std::string> nodes;
    for (int i = 0; i < n; ++i) nodes.push_back("v" + std::to_string(i));
    std::set<GraphEdge> edges;
    std::set<std::string> steering;
    for (const auto& a : nodes) {
      if (steer(rng)) steering.insert(a);
      for (const auto& b : nodes) {
        if (a == b ? loop(rng) : edge(rng)) edges.insert({a, b});
      }
    }
    const auto expected = BruteForceCycles(edges);
    std::set<std::vector<std::string>> found;
    for (auto& c : ElementaryCycles(edges)) found.insert(CanonicalCycle(c));
    const std::string tag = "graph " + std::to_string(g);
    if (expected.size() <= kMaxCycleReports) {
      o.Expect(found == expected, tag + ": cycle sets differ (" +
                                      std::to_string(found.size()) + " vs " +
                                      std::to_string(expected.size()) + ")");
    } else {
      bool subset = std::includes(expected.begin(), expected.end(),
                                  found.begin(), found.end());
      o.Expect(subset && found.size() == kMaxCycleReports,
               tag + ": capped cycle report is wrong");
    }

    const ValidationReport report =
        AnalyzeGraph(DigraphService(nodes, edges, steering));
    std::set<std::vector<std::string>> reported;
    for (const auto& issue : report.issues()) {
      if (issue.code != IssueCode::kCycle &&
          issue.code != IssueCode::kSteeredCycle) {
        continue;
      }
      const auto cycle = CanonicalCycle(issue.elements);
      reported.insert(cycle);
      bool has_steering = false;
      for (const auto& node : cycle) has_steering |= steering.contains(node);
      ++total_cycles;
      if (has_steering) {
        ++steered_cycles;
        const bool ok = issue.code == IssueCode::kSteeredCycle &&
                        issue.severity == Severity::kWarning;
        if (ok) ++flipped;
        o.Expect(ok, tag + ": steered cycle not downgraded");
      } else {
        o.Expect(issue.code == IssueCode::kCycle &&
                     issue.severity == Severity::kError,
                 tag + ": unsteered cycle not an error");
      }
    }
    if (expected.size() <= kMaxCycleReports) {
      o.Expect(reported == expected, tag + ": validator cycle set differs");
    }
  }
  o.Note("200 graphs, " + std::to_string(total_cycles) + " cycles, " +
         std::to_string(flipped) + "/" + std::to_string(steered_cycles) +
         " steered cycles downgraded");
}

void PackageIntegrity(Outcome& o) {
  const KeyPair key = TestKey();
  const ResolvedService service = LoadService("cdn");
  BuildOptions options;
  options.created_at = 1790000000;
  const std::string bytes =
      BuildPackage(service, FixturePath("cdn"), key, options);
  o.Expect(VerifyPackage(bytes, {key.public_key}).passed(),
           "build then verify failed");

  std::mt19937_64 rng(424242);
  int rejected = 0;
  for (int i = 0; i < 100; ++i) {
    std::string corrupt = bytes;
    const std::size_t pos =
        std::uniform_int_distribution<std::size_t>(0, bytes.size() - 1)(rng);
    const int flip = std::uniform_int_distribution<int>(1, 255)(rng);
    corrupt[pos] = static_cast<char>(corrupt[pos] ^ flip);
    const bool failed = !VerifyPackage(corrupt, {key.public_key}).passed();
    rejected += failed;
    o.Expect(failed, "corruption at byte " + std::to_string(pos) + " accepted");
  }

  int wrong_key_failures = 0;
  for (int i = 0; i < 20; ++i) {
    const KeyPair other = GenerateKeyPair();
    ValidationReport report;
    if (i % 2 == 0) {
      // Trusting only an unrelated key.
      report = VerifyPackage(bytes, {other.public_key});
    } else {
      // Manifest names the trusted key but another key signed it.
      KeyPair forged{key.public_key, other.secret_key};
      std::vector<ArchiveFile> payload;
      TarContents contents = ReadTar(Gunzip(bytes));
      for (auto& f : contents.files) {
        if (f.path != kManifestPath && f.path != kSignaturePath) {
          payload.push_back(f);
        }
      }
      report = VerifyPackage(
          SealPackage("secure-cdn", "1.0", payload, forged, contents.mtime),
          {key.public_key});
    }
    const auto codes = CodesOf(report);
    const bool ok = !report.passed() &&
                    (codes.contains(IssueCode::kUnknownSigner) ||
                     codes.contains(IssueCode::kBadSignature));
    wrong_key_failures += ok;
    o.Expect(ok, "wrong key " + std::to_string(i) + " not rejected by signer");
  }
  o.Note(std::to_string(rejected) + "/100 corruptions rejected, " +
         std::to_string(wrong_key_failures) + "/20 wrong keys rejected");
}

void ConservationAndDeterminism(Outcome& o) {
  const ResolvedService service = LoadService("elastic-router");
  const InfrastructureModel infra = LoadInfra();
  EmulationConfig config;
  config.plugin_root = FixturePath("elastic-router");
  config.seed = 7;
  std::size_t ticks = 0;
  std::size_t scale_events = 0;
  for (const char* trace_file : {"traces/sinusoid.csv", "traces/step.csv"}) {
    const TrafficTrace trace = LoadTrace(trace_file);
    const EmulationResult first = RunEmulation(service, infra, trace, config);
    const EmulationResult second = RunEmulation(service, infra, trace, config);
    o.Expect(!first.aborted(), std::string(trace_file) + " run aborted");
    o.Expect(first.log.ToJsonLines() == second.log.ToJsonLines(),
             std::string(trace_file) + ": event logs differ between runs");
    ticks += static_cast<std::size_t>(first.ticks_run);
    scale_events += first.log.OfType("scale_applied").size();
    for (const auto& record : first.log.OfType("metrics")) {
      const std::string at = std::string(trace_file) + " tick " +
                             std::to_string(record["tick"].get<std::int64_t>());
      for (const auto& pop : record["pops"]) {
        const Pop* p = infra.FindPop(pop["id"].get<std::string>());
        o.Expect(pop["cpu_cores"].get<std::int64_t>() <= p->cpu_cores &&
                     pop["memory_mb"].get<std::int64_t>() <= p->memory_mb &&
                     pop["storage_gb"].get<std::int64_t>() <= p->storage_gb,
                 at + ": PoP " + p->id + " over capacity");
      }
      for (const auto& v : record["vnfs"]) {
        const double offered = v["offered_mbps"].get<double>();
        const double sum = v["achieved_mbps"].get<double>() +
                           v["dropped_mbps"].get<double>();
        o.Expect(std::abs(sum - offered) <= 1e-9 * std::max(1.0, offered),
                 at + ": forwarded + dropped != offered");
      }
    }
  }
  o.Note(std::to_string(ticks) + " ticks over 2 traces, " +
         std::to_string(scale_events) +
         " scale events, logs byte-identical across runs");
}

void ScalingBehavior(Outcome& o) {
  const ResolvedService service = LoadService("elastic-router");
  const EmulationResult result = RunEmulation(
      service, LoadInfra(), LoadTrace("traces/step.csv"), EmulationConfig{});
  const auto applied = result.log.OfType("scale_applied");
  o.Expect(!result.aborted(), "run aborted");
  o.Expect(applied.size() == 1, "expected one scale event, got " +
                                    std::to_string(applied.size()));
  if (applied.size() != 1) return;
  o.Expect(applied[0]["instances"] == 2, "scale-out did not reach 2 instances");
  const std::int64_t effective = applied[0]["tick"].get<std::int64_t>();
  const std::int64_t step = 50;
  const auto router = VnfMetrics(result.log, "router");
  double max_after = 0;
  for (const auto& [tick, v] : router) {
    const double loss = v["packet_loss_ratio"].get<double>();
    if (loss > 0) {
      o.Expect(tick >= step && tick <= effective + 1,
               "loss " + Num(loss) + " at tick " + std::to_string(tick));
    }
    if (tick >= effective + 5) {
      max_after = std::max(max_after, loss);
      o.Expect(loss < 0.01, "loss " + Num(loss) + " at tick " +
                                std::to_string(tick) + " after recovery");
    }
  }
  o.Note("scale-out 1->2 effective at tick " + std::to_string(effective) +
         ", loss confined to ticks 50.." + std::to_string(effective) +
         ", max loss after recovery " + Num(max_after));
}

void RunawayDetection(Outcome& o) {
  const ResolvedService service =
      LoadService("elastic-router", "nsd-doubling.yaml");
  const TrafficTrace trace = LoadTrace("traces/step.csv");
  EmulationConfig config;
  config.plugin_root = FixturePath("elastic-router");
  const EmulationResult plugin = RunEmulation(service, LoadInfra(), trace, config);
  const std::size_t decisions = plugin.log.OfType("scale_request").size();
  o.Expect(plugin.abort_reason == std::string(kAbortRunaway),
           "doubling plugin not aborted for runaway scaling");
  o.Expect(decisions <= 3, "aborted only after " + std::to_string(decisions) +
                               " decisions");
  config.policy = std::string(kThresholdPolicy);
  const EmulationResult threshold =
      RunEmulation(service, LoadInfra(), trace, config);
  o.Expect(!threshold.aborted(), "threshold policy aborted: " +
                                     threshold.abort_message);
  o.Note("doubling plugin aborted " +
         plugin.abort_reason.value_or(std::string("never")) + " after " +
         std::to_string(decisions) + " decisions; threshold policy ran " +
         std::to_string(threshold.ticks_run) + " ticks without abort");
}

void NfvoOutputVerification(Outcome& o) {
  const InfrastructureModel infra = LoadInfra();
  const TrafficTrace trace = LoadTrace("traces/step.csv");

  const ResolvedService overcommit =
      LoadService("elastic-router", "nsd-overcommit.yaml");
  EmulationConfig config;
  config.plugin_root = FixturePath("elastic-router");
  const EmulationResult router = RunEmulation(overcommit, infra, trace, config);

  ResolvedService cdn = LoadService("cdn");
  cdn.service.control_functions.nfvo =
      PluginRef{"plugins/overcommit", "place.sh", "1"};
  const EmulationResult cdn_run =
      RunEmulation(cdn, infra, LoadTrace("traces/cdn-ramp.csv"), config);

  for (const auto* result : {&router, &cdn_run}) {
    o.Expect(result->abort_reason == std::string(kAbortPlacementRejected),
             "over-committing placement not rejected");
    o.Expect(result->ticks_run == 0 && result->log.OfType("metrics").empty(),
             "ticks executed before rejection");
    o.Expect(result->placement_report.Has(IssueCode::kCapacityExceeded),
             "rejection does not name CAPACITY_EXCEEDED");
  }

  const ResolvedService clean = LoadService("cdn");
  const auto instances = InitialInstances(clean);
  const ValidationReport builtin =
      CheckPlacement(PlaceFirstFit(clean, infra, instances), clean, infra);
  o.Expect(builtin.passed(), "builtin first-fit placement of CDN rejected");
  o.Note("over-committing plugin rejected before tick 0 (" +
         router.abort_message + "); CDN with the same plugin rejected; "
         "builtin first-fit CDN placement passes with " +
         std::to_string(builtin.issues().size()) + " issues");
}

void ProfileRecovery(Outcome& o) {
  auto truth = [](double c) { return std::min(2000.0 * c, 7000.0); };
  const std::vector<double> configs = {1, 2, 4, 8};
  const PerformanceProfile noisy = FitProfile(
      BenchmarkSeries("dpi", truth, configs, 50, 0.02, 8), "dpi");
  o.Expect(Near(noisy.a, 2000, 0.05), "noisy a = " + Num(noisy.a));
  o.Expect(noisy.plateau && Near(*noisy.plateau, 7000, 0.05),
           "noisy L = " + (noisy.plateau ? Num(*noisy.plateau) : "none"));
  o.Expect(noisy.verdict == Linearity::kLinear,
           "noisy verdict " + std::string(LinearityName(noisy.verdict)));

  const PerformanceProfile exact = FitProfile(
      BenchmarkSeries("dpi", truth, configs, 50, 0.0, 8), "dpi");
  o.Expect(Near(exact.a, 2000, 1e-6), "noise-free a = " + Num(exact.a));
  o.Expect(std::abs(exact.b) <= 2000 * 1e-6, "noise-free b = " + Num(exact.b));
  o.Expect(exact.plateau && Near(*exact.plateau, 7000, 1e-6),
           "noise-free L wrong");

  const PerformanceProfile anomalous =
      FitPoints("dpi", {{1, 2000}, {2, 1500}});
  o.Expect(anomalous.verdict == Linearity::kAnomalous,
           "{1:2000, 2:1500} verdict " +
               std::string(LinearityName(anomalous.verdict)));
  o.Note("noisy fit a=" + Num(std::round(noisy.a)) + " L=" +
         (noisy.plateau ? Num(std::round(*noisy.plateau)) : "none") +
         " verdict " + std::string(LinearityName(noisy.verdict)) +
         "; noise-free a=" + Num(exact.a) + " L=" +
         (exact.plateau ? Num(*exact.plateau) : "none") + "; {1:2000, 2:1500} " +
         std::string(LinearityName(anomalous.verdict)));
}

void PredictionConsistency(Outcome& o) {
  const ResolvedService service = LoadService("elastic-router");
  const InfrastructureModel infra = LoadInfra();
  const TrafficTrace trace = LoadTrace("traces/step.csv");
  const PerformanceProfile profile = RouterProfile();
  const auto flavor = service.Flavor("router");
  const VnfDescriptor lb =
      ParseVnfDescriptor(ReadFixture("elastic-router/vnfd-lb.yaml"));

  ScaledTopologyQuery query;
  query.kind = TemplateKind::kLoadBalancer;
  query.instances = 2;
  query.cpu_cores = static_cast<double>(flavor.cpu_cores);
  query.balancer_cap_mbps = lb.ThroughputCap(lb.resource_flavors.front().name);
  query.offered_mbps = trace.OfferedAt("in", trace.LastTick());
  const double predicted = PredictScaledTopology(profile, query);

  EmulationConfig config;
  config.profiles["router"] = profile;
  const EmulationResult scaled = RunEmulation(service, infra, trace, config);
  const auto applied = scaled.log.OfType("scale_applied");
  std::int64_t from = trace.LastTick();
  if (!applied.empty()) from = applied.back()["tick"].get<std::int64_t>() + 5;
  double sum = 0;
  int count = 0;
  for (const auto& [tick, v] : VnfMetrics(scaled.log, "router")) {
    if (tick < from) continue;
    o.Expect(v["instances"] == 2, "router not at 2 instances in steady state");
    sum += v["achieved_mbps"].get<double>();
    ++count;
  }
  const double measured = count > 0 ? sum / count : 0;
  o.Expect(Near(measured, predicted, 0.05),
           "threshold run measured " + Num(measured) + " vs predicted " +
               Num(predicted));

  ScalingTemplate t;
  t.kind = TemplateKind::kLoadBalancer;
  t.target_vnf = "router";
  t.instance_count = 2;
  t.balancer = VnfdRef{lb.name, lb.version};
  const ResolvedService expanded = InstantiateTemplate(
      t, service, MapLookup({{VnfdRef{lb.name, lb.version}, lb}}));
  EmulationConfig fixed;
  fixed.policy = std::string(kNoPolicy);
  fixed.profiles[CloneId("router", 1)] = profile;
  fixed.profiles[CloneId("router", 2)] = profile;
  const EmulationResult topology = RunEmulation(expanded, infra, trace, fixed);
  o.Expect(!topology.aborted(), "expanded topology run aborted");
  double aggregate = 0;
  for (int k = 1; k <= 2; ++k) {
    const auto clone = VnfMetrics(topology.log, CloneId("router", k));
    if (!clone.empty()) {
      aggregate += clone.rbegin()->second["achieved_mbps"].get<double>();
    }
  }
  o.Expect(Near(aggregate, predicted, 0.05),
           "expanded topology measured " + Num(aggregate) + " vs predicted " +
               Num(predicted));
  o.Note("predicted " + Num(predicted) + " Mbit/s; threshold run steady state " +
         Num(measured) + " Mbit/s; expanded 2-instance topology " +
         Num(aggregate) + " Mbit/s");
}

struct Stage {
  std::string name;
  std::vector<std::string> args;
};

void EndToEndPipeline(Outcome& o) {
  TempDir work("svcsdk-e2e");
  const fs::path w = work.path();
  const std::string cdn = FixturePath("cdn/nsd.yaml").string();
  const std::string catalogue = (w / "catalogue").string();
  ::setenv("SVCSDK_CATALOGUE", catalogue.c_str(), 1);
  fs::create_directories(w / "trust");
  WriteFile(w / "lb-dpi1.yaml",
            "template: load-balancer\ntarget: dpi1\ninstances: 2\n"
            "balancer: {name: lb, version: \"1.0\"}\n");

  const std::vector<Stage> stages = {
      {"validate", {"validate", cdn}},
      {"catalogue add vnfd",
       {"catalogue", "add", FixturePath("cdn/vnfd-lb.yaml").string()}},
      {"catalogue add template",
       {"catalogue", "add", (w / "lb-dpi1.yaml").string(), "--name", "lb-dpi1",
        "--version", "1.0"}},
      {"package keygen", {"package", "keygen", "--out", (w / "trust/dev").string()}},
      {"package build",
       {"package", "build", cdn, "--key", (w / "trust/dev.key").string(), "-o",
        (w / "cdn.svcpkg").string()}},
      {"package verify",
       {"package", "verify", (w / "cdn.svcpkg").string(), "--trust",
        (w / "trust").string()}},
      {"push sandbox",
       {"push", (w / "cdn.svcpkg").string(), "sandbox:" + (w / "sandbox").string(),
        "--trust", (w / "trust").string()}},
      {"emulate",
       {"emulate", (w / "cdn.svcpkg").string(), "--trust", (w / "trust").string(),
        "--infra", FixturePath("infra/4pop.yaml").string(), "--trace",
        FixturePath("traces/cdn-ramp.csv").string(), "--out",
        (w / "events.jsonl").string(), "--metrics-out",
        (w / "metrics.csv").string()}},
      {"profile fit",
       {"profile", "fit", (w / "metrics.csv").string(), "--vnf", "dpi1", "-o",
        (w / "dpi1-profile.yaml").string()}},
      {"profile predict",
       {"profile", "predict", "--profile", (w / "dpi1-profile.yaml").string(),
        "--instances", "2"}},
      {"graph", {"graph", (w / "events.jsonl").string(), "-o",
                 (w / "deployment.dot").string()}},
      {"template expand",
       {"template", "expand", "lb-dpi1:1.0", cdn, "-o",
        (w / "expanded.yaml").string()}},
  };
  std::string trail;
  for (const auto& stage : stages) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = RunCli(stage.args, out, err);
    trail += (trail.empty() ? "" : " -> ") + stage.name + "=" +
             std::to_string(code);
    o.Expect(code == 0, stage.name + " exited " + std::to_string(code) + ": " +
                            err.str().substr(0, 200));
    if (code != 0) break;
  }
  o.Note(trail);
}

}  // namespace
}  // namespace svcsdk::testing

int main() {
  using namespace svcsdk::testing;
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"defect-corpus detection", DefectCorpusDetection},
      {"cycle oracle equivalence", CycleOracleEquivalence},
      {"package integrity", PackageIntegrity},
      {"emulator conservation and determinism", ConservationAndDeterminism},
      {"scaling behavior on the step trace", ScalingBehavior},
      {"runaway detection", RunawayDetection},
      {"NFVO output verification", NfvoOutputVerification},
      {"profile recovery", ProfileRecovery},
      {"prediction vs emulation consistency", PredictionConsistency},
      {"end-to-end pipeline", EndToEndPipeline},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(outcome);
    } catch (const std::exception& e) {
      outcome.Expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    failed += outcome.passed() ? 0 : 1;
    std::printf("[%s] criterion %zu: %s (%.1fs): %s\n",
                outcome.passed() ? "PASS" : "FAIL", i + 1, criteria[i].name,
                seconds, outcome.Summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
