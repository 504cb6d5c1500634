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

#ifndef SVCSDK_SANDBOX_PLACEMENT_H_
#define SVCSDK_SANDBOX_PLACEMENT_H_

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "svcsdk/descriptor/model.h"
#include "svcsdk/sandbox/infrastructure.h"
#include "svcsdk/sandbox/plugin_client.h"
#include "svcsdk/validator/issue.h"

namespace svcsdk {

// Instance id -> PoP id.
using Placement = std::map<std::string, std::string>;

struct VnfInstance {
  std::string instance_id;
  std::string vnf_id;
  ResourceFlavor flavor;

  bool operator==(const VnfInstance&) const = default;
};

// "<vnf_id>-<k>".
std::string InstanceId(std::string_view vnf_id, int k);

// One instance per VNF, numbered 1, with the VNF's resolved flavor.
std::vector<VnfInstance> InitialInstances(const ResolvedService& service);

// PoPs in the order first-fit tries them for a VNF: its zone hint first (if
// any), then edge, core, cloud; declaration order within a zone.
std::vector<const Pop*> ZonePreference(const InfrastructureModel& infra,
                                       const VnfDescriptor& vnfd);

// Greedy first-fit. Instances already present in `fixed` keep their PoP and
// consume capacity; the others are placed in the given order. Throws
// Error(kNoFeasiblePlacement) naming the first instance that does not fit.
Placement PlaceFirstFit(const ResolvedService& service,
                        const InfrastructureModel& infra,
                        const std::vector<VnfInstance>& instances,
                        const Placement& fixed = {});

// Service graph and instance lists as sent to plugins and written to the
// event log.
nlohmann::json ServiceGraphJson(const ResolvedService& service);
nlohmann::json InstancesJson(const std::vector<VnfInstance>& instances);

// place_request for a plugin NFVO.
nlohmann::json PlaceRequest(const ResolvedService& service,
                            const InfrastructureModel& infra,
                            const std::vector<VnfInstance>& instances,
                            const Placement& current);

// Sends a place_request and adopts the returned mapping verbatim. Throws
// Error(kPlugin) for a wrong response type, unknown PoP ids or unknown
// instance ids.
Placement PlaceWithPlugin(PluginProcess& plugin,
                          const ResolvedService& service,
                          const InfrastructureModel& infra,
                          const std::vector<VnfInstance>& instances,
                          const Placement& current = {});

// Convenience entry point: initial instances placed with the service's NFVO
// (builtin first-fit, or the plugin found under `plugin_root`).
Placement Place(const ResolvedService& service,
                const InfrastructureModel& infra,
                const std::optional<std::filesystem::path>& plugin_root =
                    std::nullopt);

struct PopUsage {
  std::int64_t cpu_cores = 0;
  std::int64_t memory_mb = 0;
  std::int64_t storage_gb = 0;
};

std::map<std::string, PopUsage> UsageByPop(
    const Placement& placement, const std::vector<VnfInstance>& instances);

// Capacity per PoP, unplaced instances, unknown PoPs, and routability of
// every VNF-to-VNF virtual link whose instances land on different PoPs:
// a link's bandwidth is split evenly over its instance pairs and each pair
// takes the lowest-latency inter-PoP route with enough residual bandwidth.
ValidationReport CheckPlacement(const Placement& placement,
                                const ResolvedService& service,
                                const InfrastructureModel& infra,
                                const std::vector<VnfInstance>& instances);
ValidationReport CheckPlacement(const Placement& placement,
                                const ResolvedService& service,
                                const InfrastructureModel& infra);

}  // namespace svcsdk

#endif  // SVCSDK_SANDBOX_PLACEMENT_H_
