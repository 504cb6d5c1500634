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

#include "svcsdk/catalogue/templates.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <set>

#include "svcsdk/common/error.h"

namespace svcsdk {
namespace {

CpRef Rename(const CpRef& cp, const std::string& from, const std::string& to) {
  if (cp.owner != from) return cp;
  return CpRef{to, cp.cp};
}

VirtualLink RenameLink(const VirtualLink& link, const std::string& from,
                       const std::string& to, std::string id) {
  VirtualLink copy = link;
  copy.id = std::move(id);
  for (auto& ep : copy.endpoints) ep = Rename(ep, from, to);
  return copy;
}

bool TouchesVnf(const VirtualLink& link, const std::string& vnf_id) {
  return std::any_of(link.endpoints.begin(), link.endpoints.end(),
                     [&](const CpRef& ep) { return ep.owner == vnf_id; });
}

bool PathVisits(const ForwardingGraph& graph, const std::string& vnf_id) {
  return std::any_of(graph.path.begin(), graph.path.end(),
                     [&](const CpRef& cp) { return cp.owner == vnf_id; });
}

// Links that carry traffic into `vnf_id`: those entered by a path hop, plus
// unused links ending at a declared ingress port.
std::set<std::string> IngressLinks(const ResolvedService& r,
                                   const std::string& vnf_id) {
  std::set<std::string> ingress;
  std::set<std::string> used;
  for (const auto& graph : r.service.forwarding_graphs) {
    for (const auto& hop : PathHops(r.service, graph)) {
      if (hop.link == nullptr) continue;
      used.insert(hop.link->id);
      if (hop.to_cp.owner == vnf_id && hop.from_cp.owner != vnf_id) {
        ingress.insert(hop.link->id);
      }
    }
  }
  const VnfDescriptor& vnfd = r.Vnfd(vnf_id);
  for (const auto& link : r.service.virtual_links) {
    if (used.count(link.id) != 0) continue;
    for (const auto& ep : link.endpoints) {
      if (ep.owner != vnf_id) continue;
      const ConnectionPointDecl* decl = vnfd.FindConnectionPoint(ep.cp);
      if (decl != nullptr && decl->direction == Direction::kIngress) {
        ingress.insert(link.id);
      }
    }
  }
  return ingress;
}

std::string PortOf(const VirtualLink& link, const std::string& vnf_id) {
  for (const auto& ep : link.endpoints) {
    if (ep.owner == vnf_id) return ep.cp;
  }
  return {};
}

void CheckUniqueIds(const ResolvedService& r,
                    const std::vector<std::string>& ids) {
  for (const auto& id : ids) {
    if (r.service.FindVnf(id) != nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "expansion id '" + id + "' already names a VNF");
    }
  }
}

// Replaces the target's VNF entry with `replacement`, keeping list position.
void ReplaceVnf(ServiceDescriptor& s, const std::string& target,
                const std::vector<VnfEntry>& replacement) {
  std::vector<VnfEntry> vnfs;
  for (const auto& vnf : s.vnfs) {
    if (vnf.vnf_id == target) {
      vnfs.insert(vnfs.end(), replacement.begin(), replacement.end());
    } else {
      vnfs.push_back(vnf);
    }
  }
  s.vnfs = std::move(vnfs);
}

// Re-keys VNFM entries and monitoring specs of the target onto the clones.
void RekeyControl(ServiceDescriptor& s, const std::string& target,
                  const std::vector<std::string>& clones) {
  auto it = s.control_functions.vnfm.find(target);
  if (it != s.control_functions.vnfm.end()) {
    ControlFunction fn = it->second;
    s.control_functions.vnfm.erase(it);
    for (const auto& clone : clones) s.control_functions.vnfm[clone] = fn;
  }
  std::vector<MonitoringSpec> monitoring;
  for (const auto& spec : s.monitoring) {
    if (spec.vnf_id != target) {
      monitoring.push_back(spec);
      continue;
    }
    for (const auto& clone : clones) {
      MonitoringSpec copy = spec;
      copy.vnf_id = clone;
      monitoring.push_back(copy);
    }
  }
  s.monitoring = std::move(monitoring);
}

// Duplicates every path through the target once per clone. `enter` maps a
// step entering the target to the steps that replace it.
template <typename EnterFn>
std::vector<ForwardingGraph> DuplicatePaths(
    const ServiceDescriptor& s, const std::string& target,
    const std::vector<std::string>& clones, EnterFn enter) {
  std::vector<ForwardingGraph> graphs;
  for (const auto& graph : s.forwarding_graphs) {
    if (!PathVisits(graph, target)) {
      graphs.push_back(graph);
      continue;
    }
    for (std::size_t k = 0; k < clones.size(); ++k) {
      ForwardingGraph copy;
      copy.id = graph.id + "-" + std::to_string(k + 1);
      for (std::size_t i = 0; i < graph.path.size(); ++i) {
        const CpRef& step = graph.path[i];
        if (step.owner != target) {
          copy.path.push_back(step);
          continue;
        }
        bool entering = i > 0 && graph.path[i - 1].owner != target;
        if (entering) {
          for (auto& cp : enter(graph.path[i - 1], step, clones[k])) {
            copy.path.push_back(std::move(cp));
          }
        } else {
          copy.path.push_back(CpRef{clones[k], step.cp});
        }
      }
      graphs.push_back(std::move(copy));
    }
  }
  return graphs;
}

void Finish(ResolvedService& out, const std::string& target,
            const std::vector<std::string>& clones) {
  VnfDescriptor vnfd = out.vnfds.at(target);
  out.vnfds.erase(target);
  for (const auto& clone : clones) out.vnfds[clone] = vnfd;
  out.adjacency = DeriveAdjacency(out.service);
}

std::vector<VnfEntry> CloneEntries(const VnfEntry& original,
                                   const std::vector<std::string>& clones) {
  std::vector<VnfEntry> entries;
  for (const auto& clone : clones) {
    VnfEntry entry = original;
    entry.vnf_id = clone;
    entries.push_back(std::move(entry));
  }
  return entries;
}

const ConnectionPointDecl* FirstWithDirection(const VnfDescriptor& vnfd,
                                              Direction direction,
                                              std::string_view skip = {}) {
  for (const auto& cp : vnfd.connection_points) {
    if (cp.direction == direction && cp.id != skip) return &cp;
  }
  return nullptr;
}

ResolvedService ExpandLoadBalancer(const ScalingTemplate& t,
                                   const ResolvedService& r,
                                   const std::vector<std::string>& clones,
                                   const VnfdLookup& lookup) {
  if (!t.balancer) {
    throw Error(ErrorCode::kInvalidArgument,
                "load-balancer template needs a balancer VNFD reference");
  }
  if (!lookup) {
    throw Error(ErrorCode::kInvalidArgument,
                "load-balancer expansion needs a VNFD lookup");
  }
  std::optional<VnfDescriptor> balancer = lookup(*t.balancer);
  if (!balancer) {
    throw Error(ErrorCode::kUnresolvedReference,
                "balancer VNFD is not available",
                {ErrorDetail{"(" + t.balancer->name + "," +
                                 t.balancer->version + ")",
                             "no VNFD with this name and version"}});
  }
  if (balancer->connection_points.empty() ||
      balancer->resource_flavors.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "balancer VNFD needs connection points and a flavor");
  }
  const ConnectionPointDecl* in =
      FirstWithDirection(*balancer, Direction::kIngress);
  if (in == nullptr) in = &balancer->connection_points.front();
  const ConnectionPointDecl* out =
      FirstWithDirection(*balancer, Direction::kEgress, in->id);
  if (out == nullptr) {
    out = FirstWithDirection(*balancer, Direction::kBidirectional, in->id);
  }
  if (out == nullptr) out = in;

  const std::string& target = t.target_vnf;
  const std::string lb = BalancerId(target);
  CheckUniqueIds(r, {lb});
  const std::set<std::string> ingress = IngressLinks(r, target);
  if (ingress.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "target '" + target + "' has no ingress link to balance");
  }

  ResolvedService result = r;
  ServiceDescriptor& s = result.service;
  const auto n = static_cast<double>(clones.size());

  std::vector<VnfEntry> replacement{
      VnfEntry{lb, *t.balancer, balancer->resource_flavors.front().name}};
  for (auto& entry : CloneEntries(*r.service.FindVnf(target), clones)) {
    replacement.push_back(std::move(entry));
  }
  ReplaceVnf(s, target, replacement);

  // Summed ingress bandwidth per target port.
  std::map<std::string, double> ingress_by_port;
  std::vector<VirtualLink> links;
  std::vector<VirtualLink> egress;
  for (const auto& link : r.service.virtual_links) {
    if (!TouchesVnf(link, target)) {
      links.push_back(link);
    } else if (ingress.count(link.id) != 0) {
      ingress_by_port[PortOf(link, target)] += link.bandwidth_mbps;
      VirtualLink copy = link;
      for (auto& ep : copy.endpoints) {
        if (ep.owner == target) ep = CpRef{lb, in->id};
      }
      links.push_back(std::move(copy));
    } else {
      egress.push_back(link);
    }
  }
  for (const auto& clone : clones) {
    for (const auto& [port, bandwidth] : ingress_by_port) {
      VirtualLink link;
      link.id = lb + "-to-" + clone;
      if (ingress_by_port.size() > 1) link.id += "-" + port;
      link.endpoints = {CpRef{lb, out->id}, CpRef{clone, port}};
      link.bandwidth_mbps = bandwidth / n;
      links.push_back(std::move(link));
    }
  }
  for (std::size_t k = 0; k < clones.size(); ++k) {
    for (const auto& link : egress) {
      links.push_back(RenameLink(link, target, clones[k],
                                 link.id + "-" + std::to_string(k + 1)));
    }
  }
  s.virtual_links = std::move(links);

  s.forwarding_graphs = DuplicatePaths(
      r.service, target, clones,
      [&](const CpRef& prev, const CpRef& step, const std::string& clone) {
        const VirtualLink* link = r.service.LinkBetween(prev, step);
        if (link != nullptr && ingress.count(link->id) != 0) {
          return std::vector<CpRef>{CpRef{lb, in->id}, CpRef{lb, out->id},
                                    CpRef{clone, step.cp}};
        }
        return std::vector<CpRef>{CpRef{clone, step.cp}};
      });
  RekeyControl(s, target, clones);
  result.vnfds[lb] = *balancer;
  Finish(result, target, clones);
  return result;
}

ResolvedService ExpandHubAndSpoke(const ScalingTemplate& t,
                                  const ResolvedService& r,
                                  const std::vector<std::string>& clones) {
  const std::string& target = t.target_vnf;
  const std::string& hub = t.hub_vnf;
  if (hub.empty() || r.service.FindVnf(hub) == nullptr) {
    throw Error(ErrorCode::kTargetNotFound,
                "hub VNF '" + hub + "' is not part of the service");
  }
  if (hub == target) {
    throw Error(ErrorCode::kInvalidArgument,
                "hub and target must be different VNFs");
  }
  bool linked = std::any_of(
      r.service.virtual_links.begin(), r.service.virtual_links.end(),
      [&](const VirtualLink& l) {
        return TouchesVnf(l, target) && TouchesVnf(l, hub);
      });
  if (!linked) {
    throw Error(ErrorCode::kInvalidArgument,
                "target '" + target + "' has no link to hub '" + hub + "'");
  }

  ResolvedService result = r;
  ServiceDescriptor& s = result.service;
  const auto n = static_cast<double>(clones.size());
  ReplaceVnf(s, target, CloneEntries(*r.service.FindVnf(target), clones));

  std::vector<VirtualLink> links;
  for (const auto& link : r.service.virtual_links) {
    if (!TouchesVnf(link, target)) links.push_back(link);
  }
  for (std::size_t k = 0; k < clones.size(); ++k) {
    for (const auto& link : r.service.virtual_links) {
      if (!TouchesVnf(link, target)) continue;
      VirtualLink copy = RenameLink(link, target, clones[k],
                                    link.id + "-" + std::to_string(k + 1));
      if (TouchesVnf(link, hub)) copy.bandwidth_mbps /= n;
      links.push_back(std::move(copy));
    }
  }
  s.virtual_links = std::move(links);
  s.forwarding_graphs = DuplicatePaths(
      r.service, target, clones,
      [](const CpRef&, const CpRef& step, const std::string& clone) {
        return std::vector<CpRef>{CpRef{clone, step.cp}};
      });
  RekeyControl(s, target, clones);
  Finish(result, target, clones);
  return result;
}

ResolvedService ExpandFullMesh(const ScalingTemplate& t,
                               const ResolvedService& r,
                               const std::vector<std::string>& clones) {
  const std::string& target = t.target_vnf;
  const VnfDescriptor& vnfd = r.Vnfd(target);
  if (vnfd.connection_points.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "target '" + target + "' declares no connection points");
  }
  // Mesh links use a port that does not receive service traffic.
  const ConnectionPointDecl* mesh_port =
      FirstWithDirection(vnfd, Direction::kBidirectional);
  if (mesh_port == nullptr) {
    mesh_port = FirstWithDirection(vnfd, Direction::kEgress);
  }
  if (mesh_port == nullptr) mesh_port = &vnfd.connection_points.front();

  ResolvedService result = r;
  ServiceDescriptor& s = result.service;
  const auto n = static_cast<double>(clones.size());
  ReplaceVnf(s, target, CloneEntries(*r.service.FindVnf(target), clones));

  double ingress_bandwidth = 0;
  double narrowest = 0;
  const std::set<std::string> ingress = IngressLinks(r, target);
  std::vector<VirtualLink> links;
  for (const auto& link : r.service.virtual_links) {
    if (!TouchesVnf(link, target)) {
      links.push_back(link);
      continue;
    }
    if (ingress.count(link.id) != 0) ingress_bandwidth += link.bandwidth_mbps;
    if (narrowest == 0 || link.bandwidth_mbps < narrowest) {
      narrowest = link.bandwidth_mbps;
    }
  }
  for (std::size_t k = 0; k < clones.size(); ++k) {
    for (const auto& link : r.service.virtual_links) {
      if (!TouchesVnf(link, target)) continue;
      links.push_back(RenameLink(link, target, clones[k],
                                 link.id + "-" + std::to_string(k + 1)));
    }
  }
  double mesh_bandwidth = ingress_bandwidth > 0 ? ingress_bandwidth / n
                                                : (narrowest > 0 ? narrowest
                                                                 : 1.0);
  for (std::size_t i = 0; i < clones.size(); ++i) {
    for (std::size_t j = i + 1; j < clones.size(); ++j) {
      VirtualLink link;
      link.id = target + "-mesh-" + std::to_string(i + 1) + "-" +
                std::to_string(j + 1);
      link.endpoints = {CpRef{clones[i], mesh_port->id},
                        CpRef{clones[j], mesh_port->id}};
      link.bandwidth_mbps = mesh_bandwidth;
      links.push_back(std::move(link));
    }
  }
  s.virtual_links = std::move(links);
  s.forwarding_graphs = DuplicatePaths(
      r.service, target, clones,
      [](const CpRef&, const CpRef& step, const std::string& clone) {
        return std::vector<CpRef>{CpRef{clone, step.cp}};
      });
  RekeyControl(s, target, clones);
  Finish(result, target, clones);
  return result;
}

std::string RequireString(const YAML::Node& node, const char* key) {
  const YAML::Node child = node[key];
  if (!child || !child.IsScalar()) {
    throw Error(ErrorCode::kSchema, "invalid scaling template",
                {ErrorDetail{std::string("/") + key,
                             "required string field missing"}});
  }
  return child.Scalar();
}

}  // namespace

std::string_view TemplateKindName(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::kLoadBalancer:
      return "load-balancer";
    case TemplateKind::kHubAndSpoke:
      return "hub-and-spoke";
    case TemplateKind::kFullMesh:
      return "full-mesh";
  }
  return "load-balancer";
}

TemplateKind TemplateKindFromName(std::string_view name) {
  for (auto kind : {TemplateKind::kLoadBalancer, TemplateKind::kHubAndSpoke,
                    TemplateKind::kFullMesh}) {
    if (TemplateKindName(kind) == name) return kind;
  }
  throw Error(ErrorCode::kUnknownTemplate,
              "unknown scaling template '" + std::string(name) + "'");
}

std::string CloneId(std::string_view vnf_id, int k) {
  return std::string(vnf_id) + "-" + std::to_string(k);
}

std::string BalancerId(std::string_view vnf_id) {
  return std::string(vnf_id) + "-lb";
}

std::string SerializeTemplate(const ScalingTemplate& t) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "template" << YAML::Value
      << std::string(TemplateKindName(t.kind));
  out << YAML::Key << "target" << YAML::Value << t.target_vnf;
  out << YAML::Key << "instances" << YAML::Value << t.instance_count;
  if (t.balancer) {
    out << YAML::Key << "balancer" << YAML::Value << YAML::Flow
        << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << t.balancer->name;
    out << YAML::Key << "version" << YAML::Value << YAML::DoubleQuoted
        << t.balancer->version;
    out << YAML::EndMap;
  }
  if (!t.hub_vnf.empty()) out << YAML::Key << "hub" << YAML::Value << t.hub_vnf;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

ScalingTemplate ParseTemplate(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse,
                "invalid YAML in scaling template: " + e.msg,
                {ErrorDetail{"line " + std::to_string(e.mark.line + 1) +
                                 ", column " +
                                 std::to_string(e.mark.column + 1),
                             e.msg}});
  }
  if (!root.IsMap()) {
    throw Error(ErrorCode::kSchema, "invalid scaling template",
                {ErrorDetail{"/", "expected a mapping"}});
  }
  for (const auto& kv : root) {
    const std::string key = kv.first.Scalar();
    if (key != "template" && key != "target" && key != "instances" &&
        key != "balancer" && key != "hub") {
      throw Error(ErrorCode::kSchema, "invalid scaling template",
                  {ErrorDetail{"/" + key, "unknown field"}});
    }
  }
  ScalingTemplate t;
  t.kind = TemplateKindFromName(RequireString(root, "template"));
  t.target_vnf = RequireString(root, "target");
  try {
    t.instance_count = root["instances"] ? root["instances"].as<int>() : 1;
  } catch (const YAML::Exception&) {
    throw Error(ErrorCode::kSchema, "invalid scaling template",
                {ErrorDetail{"/instances", "expected an integer"}});
  }
  if (t.instance_count < 1) {
    throw Error(ErrorCode::kSchema, "invalid scaling template",
                {ErrorDetail{"/instances", "must be at least 1"}});
  }
  if (const YAML::Node b = root["balancer"]) {
    if (!b.IsMap()) {
      throw Error(ErrorCode::kSchema, "invalid scaling template",
                  {ErrorDetail{"/balancer", "expected a mapping"}});
    }
    t.balancer = VnfdRef{RequireString(b, "name"), RequireString(b, "version")};
  }
  if (root["hub"]) t.hub_vnf = RequireString(root, "hub");
  return t;
}

ResolvedService InstantiateTemplate(const ScalingTemplate& t,
                                    const ResolvedService& target,
                                    const VnfdLookup& lookup) {
  if (target.service.FindVnf(t.target_vnf) == nullptr) {
    throw Error(ErrorCode::kTargetNotFound,
                "VNF '" + t.target_vnf + "' is not part of the service");
  }
  if (t.instance_count < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "instance count must be at least 1");
  }
  std::vector<std::string> clones;
  for (int k = 1; k <= t.instance_count; ++k) {
    clones.push_back(CloneId(t.target_vnf, k));
  }
  CheckUniqueIds(target, clones);
  switch (t.kind) {
    case TemplateKind::kLoadBalancer:
      return ExpandLoadBalancer(t, target, clones, lookup);
    case TemplateKind::kHubAndSpoke:
      return ExpandHubAndSpoke(t, target, clones);
    case TemplateKind::kFullMesh:
      return ExpandFullMesh(t, target, clones);
  }
  throw Error(ErrorCode::kUnknownTemplate, "unknown scaling template");
}

}  // namespace svcsdk
