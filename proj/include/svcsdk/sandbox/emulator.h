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

#ifndef SVCSDK_SANDBOX_EMULATOR_H_
#define SVCSDK_SANDBOX_EMULATOR_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "svcsdk/descriptor/model.h"
#include "svcsdk/sandbox/event_log.h"
#include "svcsdk/sandbox/infrastructure.h"
#include "svcsdk/sandbox/placement.h"
#include "svcsdk/sandbox/plugin_client.h"
#include "svcsdk/sandbox/runaway.h"
#include "svcsdk/sandbox/trace.h"
#include "svcsdk/telemetry/metrics.h"
#include "svcsdk/telemetry/profile.h"
#include "svcsdk/validator/issue.h"

namespace svcsdk {

// Threshold VNFM defaults, overridable per VNF in the NSD parameter block.
struct ThresholdParameters {
  std::int64_t window_ticks = 5;
  double scale_out_threshold = 0.8;
  double scale_in_threshold = 0.4;
  std::int64_t consecutive_decisions = 1;

  static ThresholdParameters From(const BuiltinPolicy& policy);
};

struct EmulationConfig {
  std::int64_t decision_interval = 5;
  std::int64_t instantiation_delay = 3;
  // Abort with RESOURCE_EXHAUSTED when a scale-out cannot be placed;
  // otherwise the action is logged as scale_failed and the run goes on.
  bool strict = false;
  // Recorded in the deploy record; the emulator itself draws no randomness.
  std::uint64_t seed = 0;
  // Per-instance capacity source, keyed by vnf_id; falls back to the VNFD's
  // declared cap for the flavor, then to unlimited.
  std::map<std::string, PerformanceProfile> profiles;
  // Replaces every VNF's VNFM: "none" or "threshold".
  std::optional<std::string> policy;
  // Directory plugin paths are resolved against.
  std::optional<std::filesystem::path> plugin_root;
  RunawayConfig runaway;
  std::chrono::milliseconds plugin_timeout = kPluginTimeout;
};

struct ScalingAction {
  std::int64_t issued_tick = 0;
  std::string vnf_id;
  // Horizontal when set; vertical otherwise.
  std::optional<int> target_instances;
  std::string template_name;
  std::optional<std::string> target_flavor;
  std::int64_t effective_tick = 0;
};

struct VnfState {
  std::string vnf_id;
  ResourceFlavor flavor;
  std::vector<std::string> instances;
  int next_index = 1;
  // Unlimited when absent.
  std::optional<double> per_instance_capacity;
};

struct DeploymentState {
  ResolvedService service;
  InfrastructureModel infrastructure;
  Placement placement;
  std::vector<VnfState> vnfs;
  MetricSeries metrics;

  const VnfState* FindVnf(std::string_view vnf_id) const;
  std::vector<VnfInstance> Instances() const;
};

struct EmulationResult {
  EventLog log;
  DeploymentState state;
  std::optional<std::string> abort_reason;
  std::string abort_message;
  // Issues that made the initial placement unacceptable.
  ValidationReport placement_report;
  std::vector<ScalingAction> requested;
  std::vector<ScalingAction> applied;
  std::int64_t ticks_run = 0;
  double max_loss = 0;

  bool aborted() const { return abort_reason.has_value(); }
};

// Runs the service against the trace on ticks 0..trace.LastTick(). Each
// tick: offered load enters at service connection points and is split
// evenly over the paths starting there; paths are walked in declaration
// order and each VNF absorbs up to its remaining capacity, dropping the
// rest; metrics are recorded; VNFMs decide on ticks t with
// t % decision_interval == decision_interval - 1; due scaling actions are
// applied at the end of their effective tick. Throws Error(kInvalidArgument)
// if the trace names connection points the service lacks.
EmulationResult RunEmulation(const ResolvedService& service,
                             const InfrastructureModel& infra,
                             const TrafficTrace& trace,
                             const EmulationConfig& config = {});

}  // namespace svcsdk

#endif  // SVCSDK_SANDBOX_EMULATOR_H_
