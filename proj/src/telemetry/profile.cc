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

#include "svcsdk/telemetry/profile.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "svcsdk/common/error.h"
#include "svcsdk/common/util.h"

namespace svcsdk {
namespace {

struct LineFit {
  double a = 0;
  double b = 0;
  double sse = 0;
  double r_squared = 0;
};

LineFit FitLine(const std::vector<ProfilePoint>& points, std::size_t count) {
  LineFit fit;
  const auto n = static_cast<double>(count);
  double mean_c = 0;
  double mean_s = 0;
  for (std::size_t i = 0; i < count; ++i) {
    mean_c += points[i].cpu_cores;
    mean_s += points[i].saturation_mbps;
  }
  mean_c /= n;
  mean_s /= n;
  double sxx = 0;
  double sxy = 0;
  double sst = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double dc = points[i].cpu_cores - mean_c;
    const double ds = points[i].saturation_mbps - mean_s;
    sxx += dc * dc;
    sxy += dc * ds;
    sst += ds * ds;
  }
  fit.a = sxx > 0 ? sxy / sxx : 0;
  if (fit.a < 0) fit.a = 0;
  fit.b = mean_s - fit.a * mean_c;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = points[i].saturation_mbps -
                     (fit.a * points[i].cpu_cores + fit.b);
    fit.sse += r * r;
  }
  const double scale = std::max(1.0, mean_s * mean_s) * n;
  if (sst <= 1e-18 * scale) {
    fit.r_squared = fit.sse <= 1e-18 * scale ? 1.0 : 0.0;
  } else {
    fit.r_squared = std::clamp(1.0 - fit.sse / sst, 0.0, 1.0);
  }
  return fit;
}

double Tolerance(const std::vector<ProfilePoint>& points) {
  double largest = 1;
  for (const auto& p : points) largest = std::max(largest, p.saturation_mbps);
  return largest * 1e-9;
}

[[noreturn]] void Infeasible(double target, double max_achievable) {
  throw Error(ErrorCode::kInfeasible,
              "target " + FormatNumber(target) +
                  " Mbit/s is not reachable; max achievable " +
                  FormatNumber(max_achievable) + " Mbit/s",
              {ErrorDetail{"max_achievable_mbps", FormatNumber(max_achievable)}});
}

[[noreturn]] void SchemaError(const std::string& location,
                              const std::string& message) {
  throw Error(ErrorCode::kSchema, "invalid profile: " + message,
              {ErrorDetail{location, message}});
}

double Number(const YAML::Node& node, const std::string& location) {
  if (!node || !node.IsScalar()) SchemaError(location, "expected a number");
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    SchemaError(location, "expected a number");
  }
}

}  // namespace

std::string_view LinearityName(Linearity verdict) {
  switch (verdict) {
    case Linearity::kLinear:
      return "linear";
    case Linearity::kSublinear:
      return "sublinear";
    case Linearity::kAnomalous:
      return "anomalous";
  }
  return "linear";
}

double PerformanceProfile::Saturation(double cpu_cores) const {
  const double linear = a * cpu_cores + b;
  return plateau ? std::min(linear, *plateau) : linear;
}

std::vector<ProfilePoint> SaturationPoints(const MetricSeries& series,
                                           std::string_view vnf_id) {
  std::map<double, double> best;
  for (const auto& r : series) {
    if (r.vnf_id != vnf_id || !(r.offered_mbps > r.achieved_mbps)) continue;
    auto [it, inserted] = best.try_emplace(r.cpu_cores, r.achieved_mbps);
    if (!inserted) it->second = std::max(it->second, r.achieved_mbps);
  }
  std::vector<ProfilePoint> points;
  for (const auto& [cores, saturation] : best) {
    points.push_back(ProfilePoint{cores, saturation});
  }
  return points;
}

PerformanceProfile FitProfile(const MetricSeries& series,
                              std::string_view vnf_id) {
  std::map<double, bool> configs;
  for (const auto& r : series) {
    if (r.vnf_id != vnf_id) continue;
    configs[r.cpu_cores] |= r.offered_mbps > r.achieved_mbps;
  }
  std::vector<ErrorDetail> missing;
  if (configs.empty()) {
    missing.push_back(
        ErrorDetail{"vnf:" + std::string(vnf_id), "no metric records"});
  }
  for (const auto& [cores, overloaded] : configs) {
    if (!overloaded) {
      missing.push_back(ErrorDetail{"cpu_cores=" + FormatNumber(cores),
                                    "no overload sample (offered > achieved)"});
    }
  }
  std::vector<ProfilePoint> points = SaturationPoints(series, vnf_id);
  if (points.size() < 2) {
    missing.push_back(ErrorDetail{
        "vnf:" + std::string(vnf_id),
        "need overload samples for at least 2 cpu_cores configs, found " +
            std::to_string(points.size())});
    throw Error(ErrorCode::kInsufficientData,
                "not enough benchmark data to profile " + std::string(vnf_id),
                std::move(missing));
  }
  return FitPoints(vnf_id, std::move(points));
}

PerformanceProfile FitPoints(std::string_view vnf,
                             std::vector<ProfilePoint> points) {
  std::sort(points.begin(), points.end(),
            [](const ProfilePoint& x, const ProfilePoint& y) {
              return x.cpu_cores < y.cpu_cores;
            });
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].cpu_cores == points[i - 1].cpu_cores) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate cpu_cores config " +
                      FormatNumber(points[i].cpu_cores));
    }
  }
  if (points.size() < 2) {
    throw Error(ErrorCode::kInsufficientData,
                "profile needs at least 2 distinct cpu_cores configs",
                {ErrorDetail{"vnf:" + std::string(vnf),
                             "found " + std::to_string(points.size())}});
  }
  const std::size_t m = points.size();
  const double eps = Tolerance(points);

  PerformanceProfile best;
  best.vnf = std::string(vnf);
  best.points = points;
  LineFit all = FitLine(points, m);
  best.a = all.a;
  best.b = all.b;
  best.linear_points = m;
  best.r_squared = all.r_squared;
  double best_sse = all.sse;

  // Breakpoint after the k-th point: >= 2 linear and >= 2 plateau points.
  for (std::size_t k = 2; k + 2 <= m; ++k) {
    LineFit line = FitLine(points, k);
    double plateau = 0;
    for (std::size_t i = k; i < m; ++i) plateau += points[i].saturation_mbps;
    plateau /= static_cast<double>(m - k);
    const double last_linear = line.a * points[k - 1].cpu_cores + line.b;
    const double next_linear = line.a * points[k].cpu_cores + line.b;
    if (last_linear > plateau + eps || plateau > next_linear + eps) continue;
    double sse = line.sse;
    for (std::size_t i = k; i < m; ++i) {
      const double r = points[i].saturation_mbps - plateau;
      sse += r * r;
    }
    if (sse < best_sse - eps * eps) {
      best_sse = sse;
      best.a = line.a;
      best.b = line.b;
      best.plateau = plateau;
      best.linear_points = k;
      best.r_squared = line.r_squared;
    }
  }
  const double params = best.plateau ? 3.0 : 2.0;
  const auto n = static_cast<double>(m);
  best.rse = n > params ? std::sqrt(best_sse / (n - params)) : 0.0;
  best.verdict = CheckLinearity(best);
  return best;
}

Linearity CheckLinearity(const PerformanceProfile& profile) {
  const auto& pts = profile.points;
  const std::size_t linear = std::min(profile.linear_points, pts.size());
  const std::size_t checked = std::min(linear + 1, pts.size());
  for (std::size_t i = 1; i < checked; ++i) {
    if (pts[i].saturation_mbps < pts[i - 1].saturation_mbps) {
      return Linearity::kAnomalous;
    }
  }
  if (profile.r_squared >= kLinearRSquared) return Linearity::kLinear;
  std::vector<double> gains;
  for (std::size_t i = 1; i < linear; ++i) {
    gains.push_back((pts[i].saturation_mbps - pts[i - 1].saturation_mbps) /
                    (pts[i].cpu_cores - pts[i - 1].cpu_cores));
  }
  bool shrinking = gains.size() >= 2;
  for (std::size_t i = 1; i < gains.size(); ++i) {
    if (!(gains[i] < (1.0 - kMarginalGainDrop) * gains[i - 1])) {
      shrinking = false;
    }
  }
  return shrinking ? Linearity::kSublinear : Linearity::kAnomalous;
}

CapacityPlan EstimateCapacity(const PerformanceProfile& profile,
                              double target_mbps, ScalingMode mode,
                              double per_instance_cores,
                              const std::vector<ResourceFlavor>& flavors) {
  if (!(target_mbps > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "target load must be positive");
  }
  CapacityPlan plan;
  plan.target_mbps = target_mbps;
  plan.mode = mode;
  if (mode == ScalingMode::kHorizontal) {
    const double per_instance = profile.Saturation(per_instance_cores);
    if (!(per_instance > 0)) Infeasible(target_mbps, 0);
    int n = static_cast<int>(std::ceil(target_mbps / per_instance));
    if (n > 1 && (n - 1) * per_instance >= target_mbps) --n;
    plan.cpu_cores = per_instance_cores;
    plan.instances = std::max(n, 1);
    plan.predicted_mbps = plan.instances * per_instance;
  } else {
    if (profile.plateau && *profile.plateau < target_mbps) {
      Infeasible(target_mbps, *profile.plateau);
    }
    double cores = 1;
    if (profile.a > 0) {
      cores = std::max(1.0, std::ceil((target_mbps - profile.b) / profile.a));
      while (cores > 1 && profile.Saturation(cores - 1) >= target_mbps) --cores;
      while (profile.Saturation(cores) < target_mbps) ++cores;
    } else if (profile.Saturation(1) < target_mbps) {
      Infeasible(target_mbps, profile.Saturation(1));
    }
    plan.cpu_cores = cores;
    if (!flavors.empty()) {
      const ResourceFlavor* chosen = nullptr;
      const ResourceFlavor* largest = nullptr;
      for (const auto& f : flavors) {
        if (largest == nullptr || f.cpu_cores > largest->cpu_cores) {
          largest = &f;
        }
        if (static_cast<double>(f.cpu_cores) >= cores &&
            (chosen == nullptr || f.cpu_cores < chosen->cpu_cores)) {
          chosen = &f;
        }
      }
      if (chosen == nullptr) {
        Infeasible(target_mbps,
                   profile.Saturation(static_cast<double>(largest->cpu_cores)));
      }
      plan.flavor = chosen->name;
      plan.cpu_cores = static_cast<double>(chosen->cpu_cores);
    }
    plan.predicted_mbps = profile.Saturation(plan.cpu_cores);
  }
  plan.headroom = plan.predicted_mbps / target_mbps;
  return plan;
}

double PredictScaledTopology(const PerformanceProfile& profile,
                             const ScaledTopologyQuery& query) {
  const double n = std::max(query.instances, 0);
  const double total = n * std::max(profile.Saturation(query.cpu_cores), 0.0);
  double predicted = total;
  switch (query.kind) {
    case TemplateKind::kLoadBalancer:
      if (query.balancer_cap_mbps) {
        predicted = std::min(predicted, *query.balancer_cap_mbps);
      }
      break;
    case TemplateKind::kHubAndSpoke:
      if (query.hub_cap_mbps) predicted = std::min(predicted, *query.hub_cap_mbps);
      break;
    case TemplateKind::kFullMesh:
      break;
  }
  if (query.offered_mbps) predicted = std::min(predicted, *query.offered_mbps);
  return predicted;
}

std::string SerializeProfile(const PerformanceProfile& profile) {
  auto num = [](double v) { return FormatNumber(v); };
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "vnf" << YAML::Value << profile.vnf;
  out << YAML::Key << "model" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "a" << YAML::Value << num(profile.a);
  out << YAML::Key << "b" << YAML::Value << num(profile.b);
  if (profile.plateau) {
    out << YAML::Key << "L" << YAML::Value << num(*profile.plateau);
  }
  out << YAML::EndMap;
  out << YAML::Key << "diagnostics" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "r_squared" << YAML::Value << num(profile.r_squared);
  out << YAML::Key << "rse" << YAML::Value << num(profile.rse);
  out << YAML::Key << "verdict" << YAML::Value
      << std::string(LinearityName(profile.verdict));
  out << YAML::Key << "linear_points" << YAML::Value << profile.linear_points;
  out << YAML::EndMap;
  out << YAML::Key << "points" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : profile.points) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "cpu_cores" << YAML::Value << num(p.cpu_cores);
    out << YAML::Key << "saturation_mbps" << YAML::Value
        << num(p.saturation_mbps);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

PerformanceProfile ParseProfile(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse, "invalid YAML in profile: " + e.msg,
                {ErrorDetail{"line " + std::to_string(e.mark.line + 1) +
                                 ", column " +
                                 std::to_string(e.mark.column + 1),
                             e.msg}});
  }
  if (!root.IsMap()) SchemaError("/", "expected a mapping");
  PerformanceProfile p;
  if (!root["vnf"] || !root["vnf"].IsScalar()) {
    SchemaError("/vnf", "required string field missing");
  }
  p.vnf = root["vnf"].Scalar();
  const YAML::Node model = root["model"];
  if (!model || !model.IsMap()) SchemaError("/model", "expected a mapping");
  p.a = Number(model["a"], "/model.a");
  p.b = Number(model["b"], "/model.b");
  if (model["L"]) p.plateau = Number(model["L"], "/model.L");
  if (p.a < 0) SchemaError("/model.a", "must be non-negative");
  const YAML::Node points = root["points"];
  if (points) {
    if (!points.IsSequence()) SchemaError("/points", "expected a sequence");
    for (std::size_t i = 0; i < points.size(); ++i) {
      const std::string loc = "/points[" + std::to_string(i) + "]";
      p.points.push_back(
          ProfilePoint{Number(points[i]["cpu_cores"], loc + ".cpu_cores"),
                       Number(points[i]["saturation_mbps"],
                              loc + ".saturation_mbps")});
    }
  }
  p.linear_points = p.points.size();
  if (const YAML::Node diag = root["diagnostics"]) {
    if (diag["r_squared"]) {
      p.r_squared = Number(diag["r_squared"], "/diagnostics.r_squared");
    }
    if (diag["rse"]) p.rse = Number(diag["rse"], "/diagnostics.rse");
    if (diag["linear_points"]) {
      p.linear_points = static_cast<std::size_t>(
          Number(diag["linear_points"], "/diagnostics.linear_points"));
    }
    if (diag["verdict"]) {
      const std::string v = diag["verdict"].Scalar();
      bool known = false;
      for (auto verdict : {Linearity::kLinear, Linearity::kSublinear,
                           Linearity::kAnomalous}) {
        if (LinearityName(verdict) == v) {
          p.verdict = verdict;
          known = true;
        }
      }
      if (!known) SchemaError("/diagnostics.verdict", "unknown verdict");
    }
  }
  return p;
}

}  // namespace svcsdk
