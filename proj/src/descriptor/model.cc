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

#include "svcsdk/descriptor/model.h"

#include <algorithm>

#include "svcsdk/common/error.h"

namespace svcsdk {

std::string_view DirectionName(Direction direction) {
  switch (direction) {
    case Direction::kIngress: return "ingress";
    case Direction::kEgress: return "egress";
    case Direction::kBidirectional: return "bidirectional";
  }
  return "bidirectional";
}

std::optional<Direction> ParseDirection(std::string_view text) {
  if (text == "ingress") return Direction::kIngress;
  if (text == "egress") return Direction::kEgress;
  if (text == "bidirectional") return Direction::kBidirectional;
  return std::nullopt;
}

std::string_view MetricKindName(MetricKind metric) {
  switch (metric) {
    case MetricKind::kThroughputMbps: return "throughput_mbps";
    case MetricKind::kPacketLossRatio: return "packet_loss_ratio";
    case MetricKind::kCpuUtilization: return "cpu_utilization";
  }
  return "throughput_mbps";
}

std::optional<MetricKind> ParseMetricKind(std::string_view text) {
  if (text == "throughput_mbps") return MetricKind::kThroughputMbps;
  if (text == "packet_loss_ratio") return MetricKind::kPacketLossRatio;
  if (text == "cpu_utilization") return MetricKind::kCpuUtilization;
  return std::nullopt;
}

std::string_view ComparatorSymbol(Comparator comparator) {
  return comparator == Comparator::kGreater ? ">" : "<";
}

std::optional<Comparator> ParseComparator(std::string_view text) {
  if (text == ">") return Comparator::kGreater;
  if (text == "<") return Comparator::kLess;
  return std::nullopt;
}

const ResourceFlavor* VnfDescriptor::FindFlavor(std::string_view flavor) const {
  for (const auto& f : resource_flavors) {
    if (f.name == flavor) return &f;
  }
  return nullptr;
}

const ConnectionPointDecl* VnfDescriptor::FindConnectionPoint(
    std::string_view id) const {
  for (const auto& cp : connection_points) {
    if (cp.id == id) return &cp;
  }
  return nullptr;
}

std::optional<double> VnfDescriptor::ThroughputCap(
    std::string_view flavor) const {
  for (const auto& entry : performance) {
    if (entry.flavor == flavor) return entry.max_throughput_mbps;
  }
  return std::nullopt;
}

bool VnfDescriptor::HasCapability(std::string_view tag) const {
  return std::find(capabilities.begin(), capabilities.end(), tag) !=
         capabilities.end();
}

std::optional<std::string> VnfDescriptor::ZoneHint() const {
  constexpr std::string_view kPrefix = "zone:";
  for (const auto& tag : capabilities) {
    if (tag.starts_with(kPrefix)) return tag.substr(kPrefix.size());
  }
  return std::nullopt;
}

std::optional<CpRef> CpRef::Parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 ||
      colon + 1 >= text.size() ||
      text.find(':', colon + 1) != std::string_view::npos) {
    return std::nullopt;
  }
  return CpRef{std::string(text.substr(0, colon)),
               std::string(text.substr(colon + 1))};
}

bool VirtualLink::Joins(const CpRef& a, const CpRef& b) const {
  if (endpoints.size() != 2) return false;
  return (endpoints[0] == a && endpoints[1] == b) ||
         (endpoints[0] == b && endpoints[1] == a);
}

bool VirtualLink::Touches(const CpRef& cp) const {
  return std::find(endpoints.begin(), endpoints.end(), cp) != endpoints.end();
}

double BuiltinPolicy::Parameter(const std::string& key, double fallback) const {
  auto it = parameters.find(key);
  return it == parameters.end() ? fallback : it->second;
}

const VnfEntry* ServiceDescriptor::FindVnf(std::string_view vnf_id) const {
  for (const auto& vnf : vnfs) {
    if (vnf.vnf_id == vnf_id) return &vnf;
  }
  return nullptr;
}

const VirtualLink* ServiceDescriptor::FindLink(std::string_view link_id) const {
  for (const auto& link : virtual_links) {
    if (link.id == link_id) return &link;
  }
  return nullptr;
}

const ConnectionPointDecl* ServiceDescriptor::FindServiceCp(
    std::string_view cp) const {
  for (const auto& decl : service_connection_points) {
    if (decl.id == cp) return &decl;
  }
  return nullptr;
}

const VirtualLink* ServiceDescriptor::LinkBetween(const CpRef& a,
                                                  const CpRef& b) const {
  for (const auto& link : virtual_links) {
    if (link.Joins(a, b)) return &link;
  }
  return nullptr;
}

std::string GraphNodeOf(const CpRef& ref) {
  return ref.IsService() ? ref.ToString() : ref.owner;
}

bool IsEndpointNode(std::string_view node) {
  return node.starts_with(kServiceOwner) && node.size() > kServiceOwner.size() &&
         node[kServiceOwner.size()] == ':';
}

std::vector<PathHop> PathHops(const ServiceDescriptor& service,
                              const ForwardingGraph& graph) {
  std::vector<PathHop> hops;
  for (std::size_t i = 0; i + 1 < graph.path.size(); ++i) {
    const CpRef& from = graph.path[i];
    const CpRef& to = graph.path[i + 1];
    const VirtualLink* link = service.LinkBetween(from, to);
    bool same_owner = from.owner == to.owner && !from.IsService();
    if (same_owner && link == nullptr) continue;  // traversal inside a VNF
    hops.push_back(PathHop{GraphNodeOf(from), GraphNodeOf(to), from, to, link, i});
  }
  return hops;
}

const VnfDescriptor& ResolvedService::Vnfd(std::string_view vnf_id) const {
  auto it = vnfds.find(std::string(vnf_id));
  if (it == vnfds.end()) {
    throw Error(ErrorCode::kNotFound,
                "no resolved VNFD for vnf " + std::string(vnf_id));
  }
  return it->second;
}

const ResourceFlavor& ResolvedService::Flavor(std::string_view vnf_id) const {
  const VnfEntry* entry = service.FindVnf(vnf_id);
  if (entry == nullptr) {
    throw Error(ErrorCode::kNotFound, "unknown vnf " + std::string(vnf_id));
  }
  const ResourceFlavor* flavor = Vnfd(vnf_id).FindFlavor(entry->flavor);
  if (flavor == nullptr) {
    throw Error(ErrorCode::kFlavorMismatch,
                "flavor " + entry->flavor + " missing for vnf " + entry->vnf_id);
  }
  return *flavor;
}

std::set<GraphEdge> DeriveAdjacency(const ServiceDescriptor& service) {
  std::set<GraphEdge> edges;
  for (const auto& graph : service.forwarding_graphs) {
    for (const auto& hop : PathHops(service, graph)) {
      edges.emplace(hop.from, hop.to);
    }
  }
  return edges;
}

}  // namespace svcsdk
