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

#ifndef SVCSDK_TELEMETRY_PROFILE_H_
#define SVCSDK_TELEMETRY_PROFILE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svcsdk/catalogue/templates.h"
#include "svcsdk/descriptor/model.h"
#include "svcsdk/telemetry/metrics.h"

namespace svcsdk {

enum class Linearity { kLinear, kSublinear, kAnomalous };

std::string_view LinearityName(Linearity verdict);

inline constexpr double kLinearRSquared = 0.95;
inline constexpr double kMarginalGainDrop = 0.10;

struct ProfilePoint {
  double cpu_cores = 0;
  double saturation_mbps = 0;

  bool operator==(const ProfilePoint&) const = default;
};

// Saturating-linear model sat(c) = min(a*c + b, L).
struct PerformanceProfile {
  std::string vnf;
  double a = 0;
  double b = 0;
  std::optional<double> plateau;
  // Observed saturation per config, sorted by cpu_cores.
  std::vector<ProfilePoint> points;
  // Leading points on the linear segment; the rest lie on the plateau.
  std::size_t linear_points = 0;
  double r_squared = 0;
  double rse = 0;
  Linearity verdict = Linearity::kLinear;

  double Saturation(double cpu_cores) const;

  bool operator==(const PerformanceProfile&) const = default;
};

// Saturation points from overload samples, one per cpu_cores config.
std::vector<ProfilePoint> SaturationPoints(const MetricSeries& series,
                                           std::string_view vnf_id);

// Fits the profile from overload samples. Throws Error(kInsufficientData).
PerformanceProfile FitProfile(const MetricSeries& series,
                              std::string_view vnf_id);
// Fits directly from saturation points (at least 2 distinct configs).
PerformanceProfile FitPoints(std::string_view vnf,
                             std::vector<ProfilePoint> points);

Linearity CheckLinearity(const PerformanceProfile& profile);

enum class ScalingMode { kVertical, kHorizontal };

struct CapacityPlan {
  double target_mbps = 0;
  ScalingMode mode = ScalingMode::kVertical;
  double cpu_cores = 0;
  std::optional<std::string> flavor;
  int instances = 1;
  double predicted_mbps = 0;
  double headroom = 0;
};

// Vertical: smallest whole core count c with sat(c) >= target, mapped to the
// smallest flavor with at least c cores when `flavors` is non-empty.
// Horizontal: ceil(target / sat(per_instance_cores)) instances.
// Throws Error(kInfeasible) reporting the maximum achievable throughput.
CapacityPlan EstimateCapacity(const PerformanceProfile& profile,
                              double target_mbps, ScalingMode mode,
                              double per_instance_cores = 1,
                              const std::vector<ResourceFlavor>& flavors = {});

struct ScaledTopologyQuery {
  TemplateKind kind = TemplateKind::kLoadBalancer;
  int instances = 1;
  double cpu_cores = 1;
  std::optional<double> balancer_cap_mbps;
  // hub-and-spoke: capacity of the hub; spokes alone bound the result
  // when absent.
  std::optional<double> hub_cap_mbps;
  // Offered aggregate load; the prediction never exceeds it.
  std::optional<double> offered_mbps;
};

double PredictScaledTopology(const PerformanceProfile& profile,
                             const ScaledTopologyQuery& query);

std::string SerializeProfile(const PerformanceProfile& profile);
// Throws Error(kParse) or Error(kSchema).
PerformanceProfile ParseProfile(std::string_view text);

}  // namespace svcsdk

#endif  // SVCSDK_TELEMETRY_PROFILE_H_
