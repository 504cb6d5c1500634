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

#include "svcsdk/telemetry/alarms.h"

#include <optional>

#include "svcsdk/common/util.h"

namespace svcsdk {

std::string AlarmRule::ToString() const {
  return std::string(MetricKindName(metric)) + "(" + vnf_id + ") " +
         std::string(ComparatorSymbol(comparator)) + " " +
         FormatNumber(threshold) + " for " + std::to_string(duration_s) + "s";
}

std::vector<AlarmRule> AlarmRulesOf(const ServiceDescriptor& service) {
  std::vector<AlarmRule> rules;
  for (const auto& spec : service.monitoring) {
    if (!spec.alarm) continue;
    rules.push_back(AlarmRule{spec.metric, spec.vnf_id, spec.alarm->comparator,
                              spec.alarm->threshold, spec.alarm->duration_s});
  }
  return rules;
}

double MetricValue(const MetricRecord& record, MetricKind metric) {
  switch (metric) {
    case MetricKind::kThroughputMbps:
      return record.achieved_mbps;
    case MetricKind::kPacketLossRatio:
      return record.packet_loss_ratio;
    case MetricKind::kCpuUtilization:
      return record.cpu_utilization;
  }
  return 0;
}

std::vector<AlarmEvent> EvaluateAlarms(const MetricSeries& series,
                                       const std::vector<AlarmRule>& rules) {
  std::vector<AlarmEvent> events;
  for (const auto& rule : rules) {
    std::optional<std::int64_t> start;
    std::int64_t last = 0;
    auto close = [&]() {
      if (start && last - *start + 1 >= rule.duration_s) {
        events.push_back(AlarmEvent{rule, *start, last - *start + 1});
      }
      start.reset();
    };
    for (const auto& record : SeriesFor(series, rule.vnf_id)) {
      const double value = MetricValue(record, rule.metric);
      const bool violating = rule.comparator == Comparator::kGreater
                                 ? value > rule.threshold
                                 : value < rule.threshold;
      if (start && record.tick != last + 1) close();
      if (violating) {
        if (!start) start = record.tick;
        last = record.tick;
      } else {
        close();
      }
    }
    close();
  }
  return events;
}

}  // namespace svcsdk
