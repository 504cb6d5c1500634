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

#include "svcsdk/sandbox/runaway.h"

#include "svcsdk/common/util.h"

namespace svcsdk {

std::optional<std::string> RunawayDetector::Observe(
    const ScaleDecision& d) {
  if (d.max_instances && d.target_instances > *d.max_instances) {
    return "vnf " + d.vnf_id + " requested " +
           std::to_string(d.target_instances) +
           " instances, above max_instances " +
           std::to_string(*d.max_instances);
  }
  if (d.max_total_cpu_cores &&
      d.total_cpu_cores > static_cast<double>(*d.max_total_cpu_cores)) {
    return "vnf " + d.vnf_id + " would raise total cpu_cores to " +
           FormatNumber(d.total_cpu_cores) + ", above max_total_cpu_cores " +
           std::to_string(*d.max_total_cpu_cores);
  }
  int& streak = streaks_[d.vnf_id];
  const bool grew =
      d.current_instances > 0 &&
      static_cast<double>(d.target_instances) >=
          config_.growth_factor * static_cast<double>(d.current_instances);
  streak = grew ? streak + 1 : 0;
  if (streak >= config_.streak) {
    return "vnf " + d.vnf_id + " grew by a factor of at least " +
           FormatNumber(config_.growth_factor) + " on " +
           std::to_string(streak) + " consecutive decisions (now " +
           std::to_string(d.target_instances) + " instances)";
  }
  return std::nullopt;
}

std::optional<std::string> DetectRunaway(
    const std::vector<ScaleDecision>& history, RunawayConfig config) {
  RunawayDetector detector(config);
  for (const auto& decision : history) {
    if (auto reason = detector.Observe(decision)) return reason;
  }
  return std::nullopt;
}

}  // namespace svcsdk
