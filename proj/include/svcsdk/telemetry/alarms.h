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

#ifndef SVCSDK_TELEMETRY_ALARMS_H_
#define SVCSDK_TELEMETRY_ALARMS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "svcsdk/descriptor/model.h"
#include "svcsdk/telemetry/metrics.h"

namespace svcsdk {

struct AlarmRule {
  MetricKind metric = MetricKind::kThroughputMbps;
  std::string vnf_id;
  Comparator comparator = Comparator::kGreater;
  double threshold = 0;
  std::int64_t duration_s = 1;

  std::string ToString() const;
  bool operator==(const AlarmRule&) const = default;
};

struct AlarmEvent {
  AlarmRule rule;
  std::int64_t first_tick = 0;
  // Ticks in the maximal violating window; one tick is one second.
  std::int64_t duration = 0;

  bool operator==(const AlarmEvent&) const = default;
};

// Alarm rules declared in a service's monitoring section.
std::vector<AlarmRule> AlarmRulesOf(const ServiceDescriptor& service);

double MetricValue(const MetricRecord& record, MetricKind metric);

// One event per maximal run of consecutive ticks where the comparator holds,
// when the run lasts at least the rule's duration. Events are ordered by
// rule, then first tick.
std::vector<AlarmEvent> EvaluateAlarms(const MetricSeries& series,
                                       const std::vector<AlarmRule>& rules);

}  // namespace svcsdk

#endif  // SVCSDK_TELEMETRY_ALARMS_H_
