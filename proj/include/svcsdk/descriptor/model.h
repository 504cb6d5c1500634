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

#ifndef SVCSDK_DESCRIPTOR_MODEL_H_
#define SVCSDK_DESCRIPTOR_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace svcsdk {

inline constexpr std::string_view kDescriptorVersion = "1.0";
inline constexpr std::string_view kPluginProtocolVersion = "1";
inline constexpr std::string_view kTrafficSteering = "traffic-steering";
// Owner prefix of service-level connection point references ("ns:<cp>").
inline constexpr std::string_view kServiceOwner = "ns";

enum class Direction { kIngress, kEgress, kBidirectional };

std::string_view DirectionName(Direction direction);
std::optional<Direction> ParseDirection(std::string_view text);

struct ConnectionPointDecl {
  std::string id;
  Direction direction = Direction::kBidirectional;

  bool operator==(const ConnectionPointDecl&) const = default;
};

struct ResourceFlavor {
  std::string name;
  std::int64_t cpu_cores = 1;
  std::int64_t memory_mb = 1;
  std::int64_t storage_gb = 0;

  bool operator==(const ResourceFlavor&) const = default;
};

struct ImageRef {
  std::string uri;
  std::string sha256;

  bool operator==(const ImageRef&) const = default;
};

struct PerformanceEntry {
  std::string flavor;
  double max_throughput_mbps = 0;

  bool operator==(const PerformanceEntry&) const = default;
};

struct VnfDescriptor {
  std::string descriptor_version{kDescriptorVersion};
  std::string name;
  std::string vendor;
  std::string version;
  ImageRef image;
  std::vector<ConnectionPointDecl> connection_points;
  std::vector<ResourceFlavor> resource_flavors;
  // Kept in document order; unknown tags survive a round trip.
  std::vector<std::string> capabilities;
  std::vector<PerformanceEntry> performance;

  const ResourceFlavor* FindFlavor(std::string_view flavor) const;
  const ConnectionPointDecl* FindConnectionPoint(std::string_view id) const;
  std::optional<double> ThroughputCap(std::string_view flavor) const;
  bool HasCapability(std::string_view tag) const;
  // Placement zone requested through a "zone:<edge|core|cloud>" capability.
  std::optional<std::string> ZoneHint() const;

  bool operator==(const VnfDescriptor&) const = default;
};

struct VnfdRef {
  std::string name;
  std::string version;

  auto operator<=>(const VnfdRef&) const = default;
};

struct VnfEntry {
  std::string vnf_id;
  VnfdRef vnfd;
  // Empty until resolution picks the VNFD's first flavor.
  std::string flavor;

  bool operator==(const VnfEntry&) const = default;
};

// "ns:<cp>" for service endpoints, "<vnf_id>:<cp>" for VNF ports.
struct CpRef {
  std::string owner;
  std::string cp;

  static std::optional<CpRef> Parse(std::string_view text);
  bool IsService() const { return owner == kServiceOwner; }
  std::string ToString() const { return owner + ":" + cp; }

  auto operator<=>(const CpRef&) const = default;
};

struct VirtualLink {
  std::string id;
  std::vector<CpRef> endpoints;
  double bandwidth_mbps = 0;
  std::optional<double> max_latency_ms;

  bool Joins(const CpRef& a, const CpRef& b) const;
  bool Touches(const CpRef& cp) const;

  bool operator==(const VirtualLink&) const = default;
};

struct ForwardingGraph {
  std::string id;
  std::vector<CpRef> path;

  bool operator==(const ForwardingGraph&) const = default;
};

struct BuiltinPolicy {
  std::string name;
  std::map<std::string, double> parameters;

  double Parameter(const std::string& key, double fallback) const;

  bool operator==(const BuiltinPolicy&) const = default;
};

struct PluginRef {
  // Directory inside the package, e.g. "plugins/doubling".
  std::string path;
  // Entry file relative to `path`.
  std::string entry;
  std::string protocol_version{kPluginProtocolVersion};

  bool operator==(const PluginRef&) const = default;
};

using ControlFunction = std::variant<BuiltinPolicy, PluginRef>;

inline constexpr std::string_view kGreedyFirstFit = "greedy-first-fit";
inline constexpr std::string_view kThresholdPolicy = "threshold";
inline constexpr std::string_view kNoPolicy = "none";

struct ControlFunctionRefs {
  ControlFunction nfvo = BuiltinPolicy{std::string(kGreedyFirstFit), {}};
  std::map<std::string, ControlFunction> vnfm;

  bool operator==(const ControlFunctionRefs&) const = default;
};

enum class MetricKind { kThroughputMbps, kPacketLossRatio, kCpuUtilization };
enum class Comparator { kGreater, kLess };

std::string_view MetricKindName(MetricKind metric);
std::optional<MetricKind> ParseMetricKind(std::string_view text);
std::string_view ComparatorSymbol(Comparator comparator);
std::optional<Comparator> ParseComparator(std::string_view text);

struct AlarmSpec {
  Comparator comparator = Comparator::kGreater;
  double threshold = 0;
  std::int64_t duration_s = 1;

  bool operator==(const AlarmSpec&) const = default;
};

struct MonitoringSpec {
  MetricKind metric = MetricKind::kThroughputMbps;
  std::string vnf_id;
  std::optional<AlarmSpec> alarm;

  bool operator==(const MonitoringSpec&) const = default;
};

struct ServiceDescriptor {
  std::string descriptor_version{kDescriptorVersion};
  std::string name;
  std::string vendor;
  std::string version;
  std::vector<VnfEntry> vnfs;
  std::vector<ConnectionPointDecl> service_connection_points;
  std::vector<VirtualLink> virtual_links;
  std::vector<ForwardingGraph> forwarding_graphs;
  ControlFunctionRefs control_functions;
  std::vector<MonitoringSpec> monitoring;

  const VnfEntry* FindVnf(std::string_view vnf_id) const;
  const VirtualLink* FindLink(std::string_view link_id) const;
  const ConnectionPointDecl* FindServiceCp(std::string_view cp) const;
  // First link whose endpoints are exactly {a, b}, if any.
  const VirtualLink* LinkBetween(const CpRef& a, const CpRef& b) const;

  bool operator==(const ServiceDescriptor&) const = default;
};

// Node of the derived service graph: a VNF id, or "ns:<cp>" for an endpoint.
std::string GraphNodeOf(const CpRef& ref);
bool IsEndpointNode(std::string_view node);

using GraphEdge = std::pair<std::string, std::string>;

// One hop of a forwarding path between two graph nodes, together with the
// virtual link carrying it.
struct PathHop {
  std::string from;
  std::string to;
  CpRef from_cp;
  CpRef to_cp;
  const VirtualLink* link = nullptr;
  std::size_t step = 0;
};

// Hops of `graph` in path order. A step between two ports of one VNF is an
// internal traversal unless a virtual link joins them (a hairpin, which
// yields a self-edge).
std::vector<PathHop> PathHops(const ServiceDescriptor& service,
                              const ForwardingGraph& graph);

struct ResolvedService {
  ServiceDescriptor service;
  // Keyed by vnf_id.
  std::map<std::string, VnfDescriptor> vnfds;
  std::set<GraphEdge> adjacency;

  const VnfDescriptor& Vnfd(std::string_view vnf_id) const;
  const ResourceFlavor& Flavor(std::string_view vnf_id) const;

  bool operator==(const ResolvedService&) const = default;
};

// Recomputes the VNF adjacency from forwarding paths.
std::set<GraphEdge> DeriveAdjacency(const ServiceDescriptor& service);

}  // namespace svcsdk

#endif  // SVCSDK_DESCRIPTOR_MODEL_H_
