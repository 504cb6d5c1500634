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

#ifndef SVCSDK_SANDBOX_EVENT_LOG_H_
#define SVCSDK_SANDBOX_EVENT_LOG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "svcsdk/sandbox/placement.h"
#include "svcsdk/telemetry/metrics.h"

namespace svcsdk {

// Append-only run record. Every record carries "seq", "tick" and "type";
// records are ordered by (tick, seq).
class EventLog {
 public:
  void Append(std::int64_t tick, std::string_view type,
              nlohmann::json payload = nlohmann::json::object());

  const std::vector<nlohmann::json>& records() const { return records_; }
  std::vector<nlohmann::json> OfType(std::string_view type) const;

  // One JSON object per line.
  std::string ToJsonLines() const;
  // Throws Error(kParse) naming the line.
  static EventLog Parse(std::string_view text);

 private:
  std::vector<nlohmann::json> records_;
};

// VNF-level metric rows of every "metrics" record, sorted by (vnf_id, tick).
MetricSeries MetricsFromEventLog(const EventLog& log);

// Instances and their PoPs after the last placement change of a run.
struct DeploymentSnapshot {
  nlohmann::json service;
  std::vector<VnfInstance> instances;
  Placement placement;
  std::vector<std::string> pops;
};

// Throws Error(kParse) if the log has no deploy record.
DeploymentSnapshot FinalDeployment(const EventLog& log);

}  // namespace svcsdk

#endif  // SVCSDK_SANDBOX_EVENT_LOG_H_
