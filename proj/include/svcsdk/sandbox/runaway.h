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

#ifndef SVCSDK_SANDBOX_RUNAWAY_H_
#define SVCSDK_SANDBOX_RUNAWAY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace svcsdk {

inline constexpr std::string_view kAbortRunaway = "RUNAWAY_SCALING";
inline constexpr std::string_view kAbortExhausted = "RESOURCE_EXHAUSTED";
inline constexpr std::string_view kAbortPluginError = "PLUGIN_ERROR";
inline constexpr std::string_view kAbortPlacementRejected =
    "PLACEMENT_REJECTED";

// One VNFM decision as seen by the detector; a no-op has
// target_instances == current_instances.
struct ScaleDecision {
  std::string vnf_id;
  int current_instances = 1;
  int target_instances = 1;
  // Service-wide cpu cores if the decision were applied.
  double total_cpu_cores = 0;
  // Bounds declared by the deciding plugin, if any.
  std::optional<std::int64_t> max_instances;
  std::optional<std::int64_t> max_total_cpu_cores;
};

struct RunawayConfig {
  double growth_factor = 2.0;
  int streak = 3;
};

class RunawayDetector {
 public:
  explicit RunawayDetector(RunawayConfig config = {}) : config_(config) {}

  // Returns the abort message when `decision` trips a rule: (a) instances
  // above max_instances, (b) cpu cores above max_total_cpu_cores, or (c)
  // growth by at least growth_factor on `streak` consecutive decisions of
  // one VNF.
  std::optional<std::string> Observe(const ScaleDecision& decision);

 private:
  RunawayConfig config_;
  std::map<std::string, int> streaks_;
};

// Replays a decision history; the message of the first tripped rule.
std::optional<std::string> DetectRunaway(
    const std::vector<ScaleDecision>& history, RunawayConfig config = {});

}  // namespace svcsdk

#endif  // SVCSDK_SANDBOX_RUNAWAY_H_
