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

#include "svcsdk/sandbox/placement.h"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

#include "svcsdk/common/error.h"
#include "svcsdk/common/util.h"

namespace svcsdk {
namespace {

constexpr double kBandwidthSlack = 1e-9;

bool Fits(const Pop& pop, const PopUsage& used, const ResourceFlavor& f) {
  return used.cpu_cores + f.cpu_cores <= pop.cpu_cores &&
         used.memory_mb + f.memory_mb <= pop.memory_mb &&
         used.storage_gb + f.storage_gb <= pop.storage_gb;
}

void Charge(PopUsage& used, const ResourceFlavor& f) {
  used.cpu_cores += f.cpu_cores;
  used.memory_mb += f.memory_mb;
  used.storage_gb += f.storage_gb;
}

struct Route {
  std::vector<std::size_t> links;
  double latency_ms = 0;
};

// Lowest-latency route whose every inter-PoP link keeps `demand` residual.
std::optional<Route> FindRoute(const InfrastructureModel& infra,
                               const std::vector<double>& residual,
                               const std::string& from, const std::string& to,
                               double demand) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < infra.pops.size(); ++i) {
    index[infra.pops[i].id] = i;
  }
  const std::size_t n = infra.pops.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<std::optional<std::size_t>> via(n);
  std::vector<std::size_t> prev(n, n);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  const std::size_t source = index.at(from);
  const std::size_t target = index.at(to);
  dist[source] = 0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    if (u == target) break;
    for (std::size_t l = 0; l < infra.inter_pop_links.size(); ++l) {
      const InterPopLink& link = infra.inter_pop_links[l];
      if (residual[l] + kBandwidthSlack < demand) continue;
      std::size_t v = n;
      if (index.at(link.pop_a) == u) v = index.at(link.pop_b);
      if (index.at(link.pop_b) == u) v = index.at(link.pop_a);
      if (v == n) continue;
      const double nd = d + link.latency_ms;
      if (nd < dist[v]) {
        dist[v] = nd;
        via[v] = l;
        prev[v] = u;
        queue.emplace(nd, v);
      }
    }
  }
  if (dist[target] == inf) return std::nullopt;
  Route route;
  route.latency_ms = dist[target];
  for (std::size_t v = target; v != source; v = prev[v]) {
    route.links.push_back(*via[v]);
  }
  return route;
}

nlohmann::json FlavorJson(const ResourceFlavor& f) {
  return {{"name", f.name},
          {"cpu_cores", f.cpu_cores},
          {"memory_mb", f.memory_mb},
          {"storage_gb", f.storage_gb}};
}

}  // namespace

std::string InstanceId(std::string_view vnf_id, int k) {
  return std::string(vnf_id) + "-" + std::to_string(k);
}

std::vector<VnfInstance> InitialInstances(const ResolvedService& service) {
  std::vector<VnfInstance> instances;
  for (const auto& vnf : service.service.vnfs) {
    instances.push_back(VnfInstance{InstanceId(vnf.vnf_id, 1), vnf.vnf_id,
                                    service.Flavor(vnf.vnf_id)});
  }
  return instances;
}

std::vector<const Pop*> ZonePreference(const InfrastructureModel& infra,
                                       const VnfDescriptor& vnfd) {
  std::vector<Zone> zones = {Zone::kEdge, Zone::kCore, Zone::kCloud};
  if (auto hint = vnfd.ZoneHint()) {
    if (auto zone = ParseZone(*hint)) {
      zones.erase(std::find(zones.begin(), zones.end(), *zone));
      zones.insert(zones.begin(), *zone);
    }
  }
  std::vector<const Pop*> order;
  for (Zone zone : zones) {
    for (const auto& pop : infra.pops) {
      if (pop.zone == zone) order.push_back(&pop);
    }
  }
  return order;
}

std::map<std::string, PopUsage> UsageByPop(
    const Placement& placement, const std::vector<VnfInstance>& instances) {
  std::map<std::string, PopUsage> usage;
  for (const auto& inst : instances) {
    auto it = placement.find(inst.instance_id);
    if (it != placement.end()) Charge(usage[it->second], inst.flavor);
  }
  return usage;
}

Placement PlaceFirstFit(const ResolvedService& service,
                        const InfrastructureModel& infra,
                        const std::vector<VnfInstance>& instances,
                        const Placement& fixed) {
  Placement placement;
  std::vector<VnfInstance> kept;
  for (const auto& inst : instances) {
    auto it = fixed.find(inst.instance_id);
    if (it != fixed.end()) {
      placement[inst.instance_id] = it->second;
      kept.push_back(inst);
    }
  }
  std::map<std::string, PopUsage> usage = UsageByPop(placement, kept);
  for (const auto& inst : instances) {
    if (placement.count(inst.instance_id) != 0) continue;
    const Pop* chosen = nullptr;
    for (const Pop* pop : ZonePreference(infra, service.Vnfd(inst.vnf_id))) {
      if (Fits(*pop, usage[pop->id], inst.flavor)) {
        chosen = pop;
        break;
      }
    }
    if (chosen == nullptr) {
      throw Error(ErrorCode::kNoFeasiblePlacement,
                  "no PoP has room for " + inst.instance_id + " (" +
                      std::to_string(inst.flavor.cpu_cores) + " cores, " +
                      std::to_string(inst.flavor.memory_mb) + " MB, " +
                      std::to_string(inst.flavor.storage_gb) + " GB)",
                  {ErrorDetail{"instance:" + inst.instance_id,
                               "no remaining capacity"}});
    }
    Charge(usage[chosen->id], inst.flavor);
    placement[inst.instance_id] = chosen->id;
  }
  return placement;
}

nlohmann::json ServiceGraphJson(const ResolvedService& service) {
  nlohmann::json graph;
  graph["name"] = service.service.name;
  graph["vnfs"] = nlohmann::json::array();
  for (const auto& vnf : service.service.vnfs) {
    nlohmann::json entry = {{"vnf_id", vnf.vnf_id},
                            {"vnfd", vnf.vnfd.name},
                            {"flavor", FlavorJson(service.Flavor(vnf.vnf_id))}};
    if (auto hint = service.Vnfd(vnf.vnf_id).ZoneHint()) {
      entry["zone_hint"] = *hint;
    }
    graph["vnfs"].push_back(std::move(entry));
  }
  graph["service_connection_points"] = nlohmann::json::array();
  for (const auto& cp : service.service.service_connection_points) {
    graph["service_connection_points"].push_back(cp.id);
  }
  graph["virtual_links"] = nlohmann::json::array();
  for (const auto& link : service.service.virtual_links) {
    nlohmann::json endpoints = nlohmann::json::array();
    for (const auto& ep : link.endpoints) endpoints.push_back(ep.ToString());
    nlohmann::json entry = {{"id", link.id},
                            {"endpoints", endpoints},
                            {"bandwidth_mbps", link.bandwidth_mbps}};
    if (link.max_latency_ms) entry["max_latency_ms"] = *link.max_latency_ms;
    graph["virtual_links"].push_back(std::move(entry));
  }
  return graph;
}

nlohmann::json InstancesJson(const std::vector<VnfInstance>& instances) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& inst : instances) {
    list.push_back({{"instance_id", inst.instance_id},
                    {"vnf_id", inst.vnf_id},
                    {"flavor", FlavorJson(inst.flavor)}});
  }
  return list;
}

nlohmann::json PlaceRequest(const ResolvedService& service,
                            const InfrastructureModel& infra,
                            const std::vector<VnfInstance>& instances,
                            const Placement& current) {
  nlohmann::json graph = ServiceGraphJson(service);
  graph["instances"] = InstancesJson(instances);
  graph["current_placement"] = current;
  return {{"type", "place_request"},
          {"protocol_version", std::string(kPluginProtocolVersion)},
          {"service", graph},
          {"infrastructure", infra.ToJson()}};
}

Placement PlaceWithPlugin(PluginProcess& plugin,
                          const ResolvedService& service,
                          const InfrastructureModel& infra,
                          const std::vector<VnfInstance>& instances,
                          const Placement& current) {
  const nlohmann::json response =
      plugin.Request(PlaceRequest(service, infra, instances, current));
  if (response["type"] != "placement" || !response.contains("assignments") ||
      !response["assignments"].is_object()) {
    throw Error(ErrorCode::kPlugin,
                "plugin " + plugin.name() +
                    " answered place_request with type " +
                    response["type"].dump());
  }
  std::set<std::string> known;
  for (const auto& inst : instances) known.insert(inst.instance_id);
  Placement placement;
  for (const auto& [instance, pop] : response["assignments"].items()) {
    if (!pop.is_string()) {
      throw Error(ErrorCode::kPlugin,
                  "plugin assigned " + instance + " to a non-string PoP");
    }
    const std::string pop_id = pop.get<std::string>();
    if (infra.FindPop(pop_id) == nullptr) {
      throw Error(ErrorCode::kPlugin,
                  "plugin assigned " + instance + " to unknown PoP '" +
                      pop_id + "'",
                  {ErrorDetail{"pop:" + pop_id, "unknown PoP id"}});
    }
    if (known.count(instance) == 0) {
      throw Error(ErrorCode::kPlugin,
                  "plugin placed unknown instance '" + instance + "'",
                  {ErrorDetail{"instance:" + instance, "unknown instance"}});
    }
    placement[instance] = pop_id;
  }
  return placement;
}

Placement Place(const ResolvedService& service,
                const InfrastructureModel& infra,
                const std::optional<std::filesystem::path>& plugin_root) {
  const std::vector<VnfInstance> instances = InitialInstances(service);
  if (const auto* ref =
          std::get_if<PluginRef>(&service.service.control_functions.nfvo)) {
    if (!plugin_root) {
      throw Error(ErrorCode::kPlugin,
                  "NFVO plugin " + ref->path + " needs a plugin root");
    }
    PluginProcess plugin(*plugin_root / ref->path, ref->entry);
    return PlaceWithPlugin(plugin, service, infra, instances);
  }
  return PlaceFirstFit(service, infra, instances);
}

ValidationReport CheckPlacement(const Placement& placement,
                                const ResolvedService& service,
                                const InfrastructureModel& infra) {
  return CheckPlacement(placement, service, infra, InitialInstances(service));
}

ValidationReport CheckPlacement(const Placement& placement,
                                const ResolvedService& service,
                                const InfrastructureModel& infra,
                                const std::vector<VnfInstance>& instances) {
  ValidationReport report;
  std::map<std::string, std::vector<const VnfInstance*>> by_vnf;
  for (const auto& inst : instances) {
    auto it = placement.find(inst.instance_id);
    if (it == placement.end()) {
      report.Add(MakeIssue(IssueCode::kUnplacedVnf, "vnf:" + inst.vnf_id,
                           "instance " + inst.instance_id + " has no PoP",
                           {inst.instance_id}));
      continue;
    }
    if (infra.FindPop(it->second) == nullptr) {
      report.Add(MakeIssue(IssueCode::kUnknownPop,
                           "instance:" + inst.instance_id,
                           "assigned to unknown PoP '" + it->second + "'",
                           {inst.instance_id, it->second}));
      continue;
    }
    by_vnf[inst.vnf_id].push_back(&inst);
  }
  for (const auto& vnf : service.service.vnfs) {
    if (by_vnf.count(vnf.vnf_id) == 0 &&
        std::none_of(instances.begin(), instances.end(),
                     [&](const VnfInstance& i) {
                       return i.vnf_id == vnf.vnf_id;
                     })) {
      report.Add(MakeIssue(IssueCode::kUnplacedVnf, "vnf:" + vnf.vnf_id,
                           "VNF has no instances", {vnf.vnf_id}));
    }
  }

  const auto usage = UsageByPop(placement, instances);
  for (const auto& pop : infra.pops) {
    auto it = usage.find(pop.id);
    if (it == usage.end()) continue;
    auto over = [&](const char* what, std::int64_t demand,
                    std::int64_t capacity) {
      if (demand <= capacity) return;
      report.Add(MakeIssue(IssueCode::kCapacityExceeded, "pop:" + pop.id,
                           std::string(what) + " demand " +
                               std::to_string(demand) + " exceeds capacity " +
                               std::to_string(capacity),
                           {pop.id}));
    };
    over("cpu_cores", it->second.cpu_cores, pop.cpu_cores);
    over("memory_mb", it->second.memory_mb, pop.memory_mb);
    over("storage_gb", it->second.storage_gb, pop.storage_gb);
  }

  std::vector<double> residual;
  for (const auto& link : infra.inter_pop_links) {
    residual.push_back(link.bandwidth_mbps);
  }
  for (const auto& link : service.service.virtual_links) {
    std::set<std::string> unroutable;
    double worst_latency = 0;
    for (std::size_t i = 0; i < link.endpoints.size(); ++i) {
      for (std::size_t j = i + 1; j < link.endpoints.size(); ++j) {
        const CpRef& a = link.endpoints[i];
        const CpRef& b = link.endpoints[j];
        if (a.IsService() || b.IsService()) continue;
        const auto& as = by_vnf[a.owner];
        const auto& bs = by_vnf[b.owner];
        if (as.empty() || bs.empty()) continue;
        const double demand =
            link.bandwidth_mbps / static_cast<double>(as.size() * bs.size());
        for (const VnfInstance* x : as) {
          for (const VnfInstance* y : bs) {
            if (x == y) continue;
            const std::string& pa = placement.at(x->instance_id);
            const std::string& pb = placement.at(y->instance_id);
            if (pa == pb) continue;
            auto route = FindRoute(infra, residual, pa, pb, demand);
            if (!route) {
              unroutable.insert(pa + "->" + pb);
              continue;
            }
            for (std::size_t l : route->links) residual[l] -= demand;
            worst_latency = std::max(worst_latency, route->latency_ms);
          }
        }
      }
    }
    for (const auto& pair : unroutable) {
      report.Add(MakeIssue(IssueCode::kUnroutableLink, "link:" + link.id,
                           "no inter-PoP route with enough bandwidth for " +
                               pair,
                           {link.id}));
    }
    if (link.max_latency_ms && worst_latency > *link.max_latency_ms) {
      report.Add(MakeIssue(IssueCode::kLatencyViolation, "link:" + link.id,
                           "route latency " + FormatNumber(worst_latency) +
                               " ms exceeds max_latency_ms " +
                               FormatNumber(*link.max_latency_ms),
                           {link.id}));
    }
  }
  return report;
}

}  // namespace svcsdk
