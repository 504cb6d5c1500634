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

#include <cmath>
#include <random>

#include "svcsdk/common/error.h"
#include "svcsdk/telemetry/alarms.h"
#include "svcsdk/telemetry/metrics.h"
#include "svcsdk/telemetry/profile.h"
#include "test_support.h"

namespace svcsdk {
namespace {

using testing::BenchmarkSeries;

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

std::string Csv(const std::vector<std::string>& rows) {
  std::string text(kMetricsHeader);
  text += "\n";
  for (const auto& r : rows) text += r + "\n";
  return text;
}

PerformanceProfile Plateau() {
  return FitProfile(
      BenchmarkSeries("v", [](double c) { return std::min(2000 * c, 7000.0); },
                      {1, 2, 4, 8}, 10, 0.0, 1),
      "v");
}

std::vector<ProfilePoint> Points(
    std::initializer_list<std::pair<double, double>> pts) {
  std::vector<ProfilePoint> out;
  for (auto [c, s] : pts) out.push_back({c, s});
  return out;
}

TEST(IngestMetrics, HeaderOnlyIsEmpty) {
  EXPECT_TRUE(IngestMetrics(Csv({})).empty());
}

TEST(IngestMetrics, SortsByVnfThenTick) {
  const auto s = IngestMetrics(Csv({"2,b,1,10,10,0,0.5", "1,b,1,10,10,0,0.5",
                                    "5,a,2,20,10,0.5,1"}));
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].vnf_id, "a");
  EXPECT_EQ(s[1].tick, 1);
  EXPECT_EQ(s[2].tick, 2);
  EXPECT_EQ(SeriesFor(s, "b").size(), 2u);
}

TEST(IngestMetrics, LossOutOfRangeNamesRow) {
  const auto e = ErrorOf([] {
    IngestMetrics(Csv({"0,a,1,10,10,0,0.5", "1,a,1,10,8,1.2,0.5"}));
  });
  EXPECT_EQ(e.code(), ErrorCode::kRange);
  EXPECT_NE(std::string(e.what()).find("3"), std::string::npos) << e.what();
}

TEST(IngestMetrics, AchievedAboveOfferedRejected) {
  EXPECT_EQ(ErrorOf([] { IngestMetrics(Csv({"0,a,1,10,11,0,0.5"})); }).code(),
            ErrorCode::kRange);
}

TEST(IngestMetrics, MalformedRowsAreParseErrors) {
  EXPECT_EQ(ErrorOf([] { IngestMetrics(Csv({"0,a,1,ten,10,0,0.5"})); }).code(),
            ErrorCode::kParse);
  EXPECT_EQ(ErrorOf([] { IngestMetrics(Csv({"0,a,1,10"})); }).code(),
            ErrorCode::kParse);
  EXPECT_EQ(ErrorOf([] { IngestMetrics("tick,vnf\n"); }).code(),
            ErrorCode::kParse);
}

TEST(IngestMetrics, FormatRoundTripProperty) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  MetricSeries series;
  for (int t = 0; t < 300; ++t) {
    MetricRecord r;
    r.tick = t;
    r.vnf_id = t % 3 ? "router" : "dpi1";
    r.cpu_cores = 1 + t % 4;
    r.offered_mbps = 10000 * u(rng);
    r.achieved_mbps = r.offered_mbps * u(rng);
    r.packet_loss_ratio =
        r.offered_mbps > 0 ? (r.offered_mbps - r.achieved_mbps) / r.offered_mbps
                           : 0;
    r.cpu_utilization = u(rng);
    series.push_back(r);
  }
  const auto parsed = IngestMetrics(FormatMetricsCsv(series));
  std::stable_sort(series.begin(), series.end(), [](const auto& a, const auto& b) {
    return std::tie(a.vnf_id, a.tick) < std::tie(b.vnf_id, b.tick);
  });
  EXPECT_EQ(parsed, series);
}

TEST(SaturationPoints, MaxOfOverloadSamplesProperty) {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 50; ++round) {
    const auto series = BenchmarkSeries(
        "v", [](double c) { return 1000 * c + 300; }, {1, 2, 3}, 30, 0.05,
        rng());
    const auto points = SaturationPoints(series, "v");
    ASSERT_EQ(points.size(), 3u);
    for (const auto& p : points) {
      double overload_max = 0;
      double any_max = 0;
      for (const auto& r : series) {
        if (r.cpu_cores != p.cpu_cores) continue;
        any_max = std::max(any_max, r.achieved_mbps);
        if (r.offered_mbps > r.achieved_mbps) {
          overload_max = std::max(overload_max, r.achieved_mbps);
        }
      }
      EXPECT_EQ(p.saturation_mbps, overload_max);
      EXPECT_LE(p.saturation_mbps, any_max);
    }
  }
}

TEST(FitProfile, NoiseFreeLinearExact) {
  const auto p = FitProfile(
      BenchmarkSeries("v", [](double c) { return 2000 * c; }, {1, 2, 4}, 50,
                      0.0, 1),
      "v");
  EXPECT_NEAR(p.a, 2000, 2000 * 1e-9);
  EXPECT_NEAR(p.b, 0, 1e-6);
  EXPECT_FALSE(p.plateau.has_value());
  EXPECT_EQ(p.verdict, Linearity::kLinear);
  EXPECT_NEAR(p.r_squared, 1.0, 1e-12);
}

TEST(FitProfile, PlateauBreakpoint) {
  const auto p = Plateau();
  ASSERT_TRUE(p.plateau.has_value());
  EXPECT_NEAR(*p.plateau, 7000, 7000 * 1e-9);
  EXPECT_NEAR(p.a, 2000, 2000 * 1e-9);
  // Linear through c=1,2; the plateau takes c=4 and c=8.
  EXPECT_EQ(p.linear_points, 2u);
  EXPECT_DOUBLE_EQ(p.Saturation(3), 6000);
  EXPECT_DOUBLE_EQ(p.Saturation(16), 7000);
}

// Noise-free saturating-linear data recovers (a, b, L) to 1e-6.
TEST(FitProfile, NoiseFreeRecoveryProperty) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ua(100, 5000);
  std::uniform_real_distribution<double> ub(0, 1000);
  const std::vector<double> configs = {1, 2, 3, 4, 6, 8};
  for (int round = 0; round < 100; ++round) {
    const double a = ua(rng);
    const double b = ub(rng);
    // Plateau between the third and fourth config.
    const double plateau = a * 3.5 + b;
    const auto p = FitProfile(
        BenchmarkSeries("v",
                        [&](double c) { return std::min(a * c + b, plateau); },
                        configs, 10, 0.0, round),
        "v");
    EXPECT_NEAR(p.a, a, a * 1e-6);
    EXPECT_NEAR(p.b, b, std::max(1.0, b) * 1e-6);
    ASSERT_TRUE(p.plateau.has_value());
    EXPECT_NEAR(*p.plateau, plateau, plateau * 1e-6);
    EXPECT_GE(p.a, 0);
  }
}

// The fitted line equals closed-form least squares over the linear points.
TEST(FitProfile, MatchesClosedFormLeastSquares) {
  std::mt19937_64 rng(2);
  for (int round = 0; round < 50; ++round) {
    const auto series = BenchmarkSeries(
        "v", [](double c) { return 2000 * c; }, {1, 2, 4}, 50, 0.02, rng());
    const auto p = FitProfile(series, "v");
    if (p.plateau) continue;
    const auto pts = SaturationPoints(series, "v");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& q : pts) {
      sx += q.cpu_cores;
      sy += q.saturation_mbps;
      sxx += q.cpu_cores * q.cpu_cores;
      sxy += q.cpu_cores * q.saturation_mbps;
    }
    const double n = static_cast<double>(pts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    EXPECT_NEAR(p.a, slope, 1e-6 * slope);
    EXPECT_NEAR(p.b, (sy - slope * sx) / n, 1e-6 * 2000);
  }
}

TEST(FitProfile, SingleConfigInsufficient) {
  const auto series =
      BenchmarkSeries("v", [](double c) { return 2000 * c; }, {2}, 20, 0, 1);
  EXPECT_EQ(ErrorOf([&] { FitProfile(series, "v"); }).code(),
            ErrorCode::kInsufficientData);
  EXPECT_EQ(ErrorOf([&] { FitProfile(series, "other"); }).code(),
            ErrorCode::kInsufficientData);
}

TEST(FitProfile, ConfigWithoutOverloadInsufficient) {
  MetricSeries series =
      BenchmarkSeries("v", [](double c) { return 2000 * c; }, {1, 2}, 20, 0, 1);
  for (auto& r : series) {
    if (r.cpu_cores == 2) {
      r.achieved_mbps = r.offered_mbps = std::min(r.offered_mbps, 3000.0);
      r.packet_loss_ratio = 0;
    }
  }
  EXPECT_EQ(ErrorOf([&] { FitProfile(series, "v"); }).code(),
            ErrorCode::kInsufficientData);
}

TEST(CheckLinearity, Verdicts) {
  EXPECT_EQ(FitPoints("v", Points({{1, 2000}, {2, 4000}, {4, 8000}})).verdict,
            Linearity::kLinear);
  EXPECT_EQ(FitPoints("v", Points({{1, 2000}, {2, 2050}, {4, 2060}})).verdict,
            Linearity::kSublinear);
  EXPECT_EQ(FitPoints("v", Points({{1, 2000}, {2, 1500}})).verdict,
            Linearity::kAnomalous);
  EXPECT_EQ(FitPoints("v", Points({{1, 2000}, {2, 4000}, {4, 3900}})).verdict,
            Linearity::kAnomalous);
}

TEST(EstimateCapacity, Examples) {
  auto flat = FitPoints("v", Points({{1, 5000}, {2, 5000}}));
  const auto horizontal =
      EstimateCapacity(flat, 12000, ScalingMode::kHorizontal, 1);
  EXPECT_EQ(horizontal.instances, 3);
  EXPECT_DOUBLE_EQ(horizontal.predicted_mbps, 15000);
  EXPECT_DOUBLE_EQ(horizontal.headroom, 15000.0 / 12000);

  const auto e = ErrorOf(
      [] { EstimateCapacity(Plateau(), 9000, ScalingMode::kVertical); });
  EXPECT_EQ(e.code(), ErrorCode::kInfeasible);
  EXPECT_NE(std::string(e.what()).find("7000"), std::string::npos);

  const auto linear = FitPoints("v", Points({{1, 2000}, {2, 4000}, {4, 8000}}));
  const auto vertical = EstimateCapacity(linear, 3500, ScalingMode::kVertical);
  EXPECT_EQ(vertical.cpu_cores, 2);
  EXPECT_GE(vertical.predicted_mbps, 3500);
}

TEST(EstimateCapacity, MapsToSmallestFlavor) {
  const auto linear = FitPoints("v", Points({{1, 2000}, {2, 4000}, {4, 8000}}));
  const std::vector<ResourceFlavor> flavors = {
      {"small", 1, 1024, 1}, {"medium", 2, 2048, 1}, {"large", 4, 4096, 1}};
  const auto plan =
      EstimateCapacity(linear, 4500, ScalingMode::kVertical, 1, flavors);
  // Three cores suffice; the plan reports the chosen flavor.
  EXPECT_EQ(plan.cpu_cores, 4);
  EXPECT_DOUBLE_EQ(plan.predicted_mbps, 8000);
  EXPECT_EQ(plan.flavor, "large");
}

// Recommended cores never decrease as the target grows, and feasible plans
// always meet the target.
TEST(EstimateCapacity, MonotoneProperty) {
  const auto p = Plateau();
  double previous = 0;
  for (double target = 100; target <= 7000; target += 37) {
    const auto plan = EstimateCapacity(p, target, ScalingMode::kVertical);
    EXPECT_GE(plan.cpu_cores, previous);
    EXPECT_GE(plan.predicted_mbps, target);
    previous = plan.cpu_cores;
  }
  int instances = 0;
  for (double target = 100; target <= 60000; target += 211) {
    const auto plan = EstimateCapacity(p, target, ScalingMode::kHorizontal, 2);
    EXPECT_GE(plan.instances, instances);
    EXPECT_GE(plan.predicted_mbps, target);
    instances = plan.instances;
  }
}

TEST(PredictScaledTopology, Examples) {
  const auto flat = FitPoints("v", Points({{1, 5000}, {2, 5000}}));
  ScaledTopologyQuery q;
  q.kind = TemplateKind::kLoadBalancer;
  q.cpu_cores = 1;
  q.balancer_cap_mbps = 20000;
  q.instances = 3;
  EXPECT_DOUBLE_EQ(PredictScaledTopology(flat, q), 15000);
  q.instances = 5;
  EXPECT_DOUBLE_EQ(PredictScaledTopology(flat, q), 20000);
  q.offered_mbps = 9000;
  EXPECT_DOUBLE_EQ(PredictScaledTopology(flat, q), 9000);

  ScaledTopologyQuery hub;
  hub.kind = TemplateKind::kHubAndSpoke;
  hub.instances = 4;
  hub.hub_cap_mbps = 12000;
  EXPECT_DOUBLE_EQ(PredictScaledTopology(flat, hub), 12000);
  hub.hub_cap_mbps.reset();
  EXPECT_DOUBLE_EQ(PredictScaledTopology(flat, hub), 20000);

  ScaledTopologyQuery mesh;
  mesh.kind = TemplateKind::kFullMesh;
  mesh.instances = 3;
  EXPECT_DOUBLE_EQ(PredictScaledTopology(flat, mesh), 15000);
}

TEST(PredictScaledTopology, NeverExceedsSumOfInstancesProperty) {
  const auto p = Plateau();
  std::mt19937 rng(8);
  for (int i = 0; i < 500; ++i) {
    ScaledTopologyQuery q;
    q.kind = static_cast<TemplateKind>(rng() % 3);
    q.instances = 1 + rng() % 8;
    q.cpu_cores = 1 + rng() % 8;
    if (rng() % 2) q.balancer_cap_mbps = 1000.0 * (rng() % 50 + 1);
    if (rng() % 2) q.hub_cap_mbps = 1000.0 * (rng() % 50 + 1);
    if (rng() % 2) q.offered_mbps = 1000.0 * (rng() % 80);
    EXPECT_LE(PredictScaledTopology(p, q),
              q.instances * p.Saturation(q.cpu_cores) + 1e-9);
  }
}

TEST(Profile, SerializeRoundTrip) {
  const auto p = Plateau();
  EXPECT_EQ(ParseProfile(SerializeProfile(p)), p);
  EXPECT_EQ(ErrorOf([] { ParseProfile("vnf: v\n"); }).code(),
            ErrorCode::kSchema);
}

MetricSeries LossSeries(const std::vector<double>& loss, std::string vnf = "r") {
  MetricSeries s;
  for (std::size_t t = 0; t < loss.size(); ++t) {
    MetricRecord r;
    r.tick = static_cast<std::int64_t>(t);
    r.vnf_id = vnf;
    r.cpu_cores = 1;
    r.offered_mbps = 100;
    r.achieved_mbps = 100 * (1 - loss[t]);
    r.packet_loss_ratio = loss[t];
    s.push_back(r);
  }
  return s;
}

const AlarmRule kLossRule{MetricKind::kPacketLossRatio, "r",
                          Comparator::kGreater, 0.01, 5};

TEST(EvaluateAlarms, Examples) {
  std::vector<double> loss(20, 0.0);
  for (int t = 3; t < 13; ++t) loss[t] = 0.05;
  auto events = EvaluateAlarms(LossSeries(loss), {kLossRule});
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].first_tick, 3);
  EXPECT_EQ(events[0].duration, 10);

  std::vector<double> brief(20, 0.0);
  for (int t = 3; t < 6; ++t) brief[t] = 0.05;
  EXPECT_TRUE(EvaluateAlarms(LossSeries(brief), {kLossRule}).empty());

  std::vector<double> twice(30, 0.0);
  for (int t = 0; t < 6; ++t) twice[t] = 0.5;
  for (int t = 20; t < 30; ++t) twice[t] = 0.5;
  events = EvaluateAlarms(LossSeries(twice), {kLossRule});
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[1].first_tick, 20);
  EXPECT_EQ(events[1].duration, 10);
  // Other VNFs do not trigger the rule.
  EXPECT_TRUE(EvaluateAlarms(LossSeries(twice, "x"), {kLossRule}).empty());
}

TEST(EvaluateAlarms, RuleText) {
  EXPECT_EQ(kLossRule.ToString(), "packet_loss_ratio(r) > 0.01 for 5s");
  const auto rules = AlarmRulesOf(testing::LoadService("cdn").service);
  ASSERT_EQ(rules.size(), 1u);
  const AlarmRule router{MetricKind::kPacketLossRatio, "router",
                        Comparator::kGreater, 0.01, 5};
  EXPECT_EQ(rules[0], router);
}

// Events cover exactly the maximal violating runs of length >= duration.
TEST(EvaluateAlarms, BruteForceProperty) {
  std::mt19937 rng(17);
  for (int round = 0; round < 300; ++round) {
    const std::size_t n = rng() % 201;
    const int burst = 1 + rng() % 6;
    std::vector<double> loss(n);
    bool on = false;
    for (auto& l : loss) {
      if (rng() % burst == 0) on = !on;
      l = on ? 0.02 + 0.01 * (rng() % 5) : 0.01 * (rng() % 2);
    }
    AlarmRule rule = kLossRule;
    rule.duration_s = 1 + rng() % 8;
    rule.comparator = rng() % 2 ? Comparator::kGreater : Comparator::kLess;
    std::vector<std::pair<std::int64_t, std::int64_t>> expected;
    std::size_t t = 0;
    while (t < n) {
      const bool hit = rule.comparator == Comparator::kGreater
                           ? loss[t] > rule.threshold
                           : loss[t] < rule.threshold;
      if (!hit) {
        ++t;
        continue;
      }
      std::size_t end = t;
      while (end < n && (rule.comparator == Comparator::kGreater
                             ? loss[end] > rule.threshold
                             : loss[end] < rule.threshold)) {
        ++end;
      }
      if (static_cast<std::int64_t>(end - t) >= rule.duration_s) {
        expected.push_back({static_cast<std::int64_t>(t),
                            static_cast<std::int64_t>(end - t)});
      }
      t = end;
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> actual;
    for (const auto& e : EvaluateAlarms(LossSeries(loss), {rule})) {
      actual.push_back({e.first_tick, e.duration});
      EXPECT_GE(e.duration, rule.duration_s);
    }
    EXPECT_EQ(actual, expected) << "round " << round;
  }
}

}  // namespace
}  // namespace svcsdk
