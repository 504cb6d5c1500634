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

#ifndef SVCSDK_TELEMETRY_METRICS_H_
#define SVCSDK_TELEMETRY_METRICS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace svcsdk {

inline constexpr std::string_view kMetricsHeader =
    "tick,vnf_id,cpu_cores,offered_mbps,achieved_mbps,packet_loss_ratio,"
    "cpu_utilization";

struct MetricRecord {
  std::int64_t tick = 0;
  std::string vnf_id;
  double cpu_cores = 0;
  double offered_mbps = 0;
  double achieved_mbps = 0;
  double packet_loss_ratio = 0;
  double cpu_utilization = 0;

  bool operator==(const MetricRecord&) const = default;
};

using MetricSeries = std::vector<MetricRecord>;

// Parses the metric CSV and sorts rows by (vnf_id, tick). Throws
// Error(kParse) naming the offending line, Error(kRange) for values outside
// their domain (loss or utilization outside [0,1], achieved above offered).
MetricSeries IngestMetrics(std::string_view text);

std::string FormatMetricsCsv(const MetricSeries& series);

// Records of one VNF, in tick order.
MetricSeries SeriesFor(const MetricSeries& series, std::string_view vnf_id);

}  // namespace svcsdk

#endif  // SVCSDK_TELEMETRY_METRICS_H_
