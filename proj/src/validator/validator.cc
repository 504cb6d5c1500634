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

#include "svcsdk/validator/validator.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <map>
#include <set>

#include "svcsdk/common/error.h"
#include "svcsdk/common/util.h"
#include "svcsdk/descriptor/parser.h"
#include "svcsdk/validator/cycles.h"

namespace svcsdk {
namespace {

namespace fs = std::filesystem;

std::string JoinNodes(const std::vector<std::string>& nodes) {
  std::string out;
  for (const auto& node : nodes) {
    if (!out.empty()) out += "->";
    out += node;
  }
  return out;
}

// Why `ref` names no declared connection point, or nullopt when it does.
std::optional<std::string> UndeclaredReason(const ResolvedService& resolved,
                                            const CpRef& ref) {
  const ServiceDescriptor& service = resolved.service;
  if (ref.IsService()) {
    if (service.FindServiceCp(ref.cp) != nullptr) return std::nullopt;
    return "service declares no connection point '" + ref.cp + "'";
  }
  if (service.FindVnf(ref.owner) == nullptr) {
    return "no vnf with id '" + ref.owner + "'";
  }
  auto it = resolved.vnfds.find(ref.owner);
  if (it == resolved.vnfds.end() ||
      it->second.FindConnectionPoint(ref.cp) == nullptr) {
    std::string vnfd = it == resolved.vnfds.end() ? "its VNFD" : it->second.name;
    return vnfd + " declares no connection point '" + ref.cp + "'";
  }
  return std::nullopt;
}

void AddPrefixed(ValidationReport& report, const ValidationReport& sub,
                 const std::string& prefix) {
  for (Issue issue : sub.issues()) {
    issue.location = prefix + ":" + issue.location;
    report.Add(std::move(issue));
  }
}

bool IsOwnerExecutable(const fs::path& path) {
  std::error_code ec;
  auto status = fs::status(path, ec);
  if (ec || !fs::is_regular_file(status)) return false;
  return (status.permissions() & fs::perms::owner_exec) != fs::perms::none;
}

}  // namespace

ValidationReport ValidateSchema(std::string_view text, DescriptorKind kind) {
  std::vector<ErrorDetail> violations = kind == DescriptorKind::kNsd
                                            ? CheckServiceDescriptorSchema(text)
                                            : CheckVnfDescriptorSchema(text);
  ValidationReport report;
  for (auto& violation : violations) {
    report.Add(MakeIssue(IssueCode::kSchema, violation.location,
                         violation.message));
  }
  return report;
}

ValidationReport AnalyzeGraph(const ResolvedService& resolved) {
  const ServiceDescriptor& service = resolved.service;
  std::vector<Issue> issues;

  for (std::size_t i = 0; i < service.virtual_links.size(); ++i) {
    const VirtualLink& link = service.virtual_links[i];
    for (std::size_t j = 0; j < link.endpoints.size(); ++j) {
      if (auto reason = UndeclaredReason(resolved, link.endpoints[j])) {
        issues.push_back(MakeIssue(
            IssueCode::kInvalidConnectionPoint,
            "/virtual_links[" + std::to_string(i) + "].endpoints[" +
                std::to_string(j) + "]",
            "link " + link.id + " endpoint " + link.endpoints[j].ToString() +
                ": " + *reason,
            {"link:" + link.id, link.endpoints[j].ToString()}));
      }
    }
  }
  for (std::size_t g = 0; g < service.forwarding_graphs.size(); ++g) {
    const ForwardingGraph& graph = service.forwarding_graphs[g];
    for (std::size_t i = 0; i < graph.path.size(); ++i) {
      if (auto reason = UndeclaredReason(resolved, graph.path[i])) {
        issues.push_back(MakeIssue(
            IssueCode::kInvalidConnectionPoint,
            "/forwarding_graphs[" + std::to_string(g) + "].path[" +
                std::to_string(i) + "]",
            "forwarding graph " + graph.id + " step " +
                graph.path[i].ToString() + ": " + *reason,
            {"forwarding_graph:" + graph.id, graph.path[i].ToString()}));
      }
    }
  }

  std::set<GraphEdge> vnf_edges;
  for (const auto& edge : resolved.adjacency) {
    if (!IsEndpointNode(edge.first) && !IsEndpointNode(edge.second)) {
      vnf_edges.insert(edge);
    }
  }
  for (auto& cycle : ElementaryCycles(vnf_edges)) {
    bool steered = std::any_of(cycle.begin(), cycle.end(), [&](const auto& n) {
      auto it = resolved.vnfds.find(n);
      return it != resolved.vnfds.end() &&
             it->second.HasCapability(kTrafficSteering);
    });
    std::string walk = JoinNodes(cycle) + "->" + cycle.front();
    if (steered) {
      issues.push_back(MakeIssue(
          IssueCode::kSteeredCycle, "cycle:" + JoinNodes(cycle),
          "forwarding cycle " + walk + " passes a traffic-steering VNF",
          cycle));
    } else {
      issues.push_back(MakeIssue(
          IssueCode::kCycle, "cycle:" + JoinNodes(cycle),
          "forwarding cycle " + walk + " with no traffic-steering VNF",
          cycle));
    }
  }

  std::set<std::string> on_path;
  for (const auto& graph : service.forwarding_graphs) {
    for (const auto& step : graph.path) {
      if (!step.IsService()) on_path.insert(step.owner);
    }
    std::map<GraphEdge, int> counts;
    for (const auto& hop : PathHops(service, graph)) {
      if (IsEndpointNode(hop.from) || IsEndpointNode(hop.to)) continue;
      ++counts[{hop.from, hop.to}];
    }
    for (const auto& [edge, count] : counts) {
      if (count < 2) continue;
      issues.push_back(MakeIssue(
          IssueCode::kRepeatedPath,
          "forwarding_graph:" + graph.id + "/edge:" + edge.first + "->" +
              edge.second,
          "path " + graph.id + " traverses " + edge.first + "->" +
              edge.second + " " + std::to_string(count) + " times",
          {edge.first, edge.second}));
    }
  }
  for (const auto& vnf : service.vnfs) {
    if (!on_path.contains(vnf.vnf_id)) {
      issues.push_back(MakeIssue(IssueCode::kDisconnectedVnf,
                                 "vnf:" + vnf.vnf_id,
                                 "vnf " + vnf.vnf_id +
                                     " appears in no forwarding path",
                                 {vnf.vnf_id}));
    }
  }
  return ValidationReport(std::move(issues));
}

ValidationReport AnalyzeBandwidth(const ResolvedService& resolved) {
  const ServiceDescriptor& service = resolved.service;
  std::vector<Issue> issues;

  std::set<CpRef> entered;
  std::map<std::string, std::set<std::string>> paths_per_link;
  std::map<std::string, double> path_demand;
  for (const auto& graph : service.forwarding_graphs) {
    std::optional<double> narrowest;
    for (const auto& hop : PathHops(service, graph)) {
      entered.insert(hop.to_cp);
      if (hop.link == nullptr) continue;
      paths_per_link[hop.link->id].insert(graph.id);
      narrowest = std::min(narrowest.value_or(hop.link->bandwidth_mbps),
                           hop.link->bandwidth_mbps);
    }
    if (narrowest) path_demand[graph.id] = *narrowest;
  }

  for (const auto& vnf : service.vnfs) {
    auto it = resolved.vnfds.find(vnf.vnf_id);
    if (it == resolved.vnfds.end()) continue;
    std::optional<double> cap = it->second.ThroughputCap(vnf.flavor);
    if (!cap) continue;
    std::set<CpRef> ingress;
    for (const auto& decl : it->second.connection_points) {
      CpRef ref{vnf.vnf_id, decl.id};
      if (decl.direction == Direction::kIngress ||
          (decl.direction == Direction::kBidirectional &&
           entered.contains(ref))) {
        ingress.insert(ref);
      }
    }
    double demand = 0;
    for (const auto& link : service.virtual_links) {
      bool incident = std::any_of(
          link.endpoints.begin(), link.endpoints.end(),
          [&](const CpRef& ep) { return ingress.contains(ep); });
      if (incident) demand += link.bandwidth_mbps;
    }
    if (demand > *cap) {
      issues.push_back(MakeIssue(
          IssueCode::kVnfBottleneck, "vnf:" + vnf.vnf_id,
          "ingress demand " + FormatNumber(demand) +
              " Mbit/s exceeds capacity " + FormatNumber(*cap) +
              " Mbit/s of flavor " + vnf.flavor,
          {vnf.vnf_id}));
    }
  }

  for (const auto& link : service.virtual_links) {
    auto it = paths_per_link.find(link.id);
    if (it == paths_per_link.end() || it->second.size() < 2) continue;
    double demand = 0;
    std::vector<std::string> paths;
    for (const auto& graph_id : it->second) {
      demand += path_demand[graph_id];
      paths.push_back(graph_id);
    }
    if (demand > link.bandwidth_mbps) {
      issues.push_back(MakeIssue(
          IssueCode::kLinkBottleneck, "link:" + link.id,
          "paths sharing the link demand " + FormatNumber(demand) +
              " Mbit/s, link provides " + FormatNumber(link.bandwidth_mbps) +
              " Mbit/s",
          paths));
    }
  }
  return ValidationReport(std::move(issues));
}

PluginManifest ReadPluginManifest(const fs::path& plugin_dir) {
  fs::path file = plugin_dir / "plugin.yaml";
  std::string text = ReadFile(file);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kSchema, "malformed plugin manifest",
                {ErrorDetail{file.string(), e.what()}});
  }
  if (!root.IsMap()) {
    throw Error(ErrorCode::kSchema, "plugin manifest must be a mapping",
                {ErrorDetail{file.string(), "expected a mapping"}});
  }
  PluginManifest manifest;
  auto scalar = [&](const char* key) -> std::optional<std::string> {
    YAML::Node node = root[key];
    if (!node.IsDefined() || node.IsNull()) return std::nullopt;
    if (!node.IsScalar()) {
      throw Error(ErrorCode::kSchema, "plugin manifest field is not a scalar",
                  {ErrorDetail{file.string() + ":/" + key, "expected scalar"}});
    }
    return node.Scalar();
  };
  auto integer = [&](const char* key) -> std::optional<std::int64_t> {
    auto text_value = scalar(key);
    if (!text_value) return std::nullopt;
    try {
      std::size_t used = 0;
      std::int64_t value = std::stoll(*text_value, &used);
      if (used != text_value->size()) throw std::invalid_argument(key);
      return value;
    } catch (const std::exception&) {
      throw Error(ErrorCode::kSchema, "plugin manifest field is not an integer",
                  {ErrorDetail{file.string() + ":/" + key, *text_value}});
    }
  };
  manifest.entry = scalar("entry").value_or("");
  manifest.protocol_version = scalar("protocol_version").value_or("");
  manifest.max_instances = integer("max_instances");
  manifest.max_total_cpu_cores = integer("max_total_cpu_cores");
  return manifest;
}

ValidationReport CheckControlFunctions(const fs::path& pkg_root,
                                       const ControlFunctionRefs& refs) {
  std::vector<std::pair<std::string, PluginRef>> plugins;
  if (const auto* p = std::get_if<PluginRef>(&refs.nfvo)) {
    plugins.emplace_back("nfvo", *p);
  }
  for (const auto& [vnf_id, fn] : refs.vnfm) {
    if (const auto* p = std::get_if<PluginRef>(&fn)) {
      plugins.emplace_back("vnfm of " + vnf_id, *p);
    }
  }

  std::vector<Issue> issues;
  std::set<std::pair<std::string, std::string>> checked;
  for (const auto& [role, ref] : plugins) {
    if (!checked.insert({ref.path, ref.entry}).second) continue;
    const fs::path dir = pkg_root / ref.path;
    const std::string location = "plugin:" + ref.path;
    PluginManifest manifest;
    try {
      manifest = ReadPluginManifest(dir);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kIo) {
        issues.push_back(MakeIssue(IssueCode::kPluginEntrypointMissing,
                                   location,
                                   role + " plugin has no plugin.yaml under " +
                                       ref.path));
      } else {
        issues.push_back(MakeIssue(IssueCode::kSchema,
                                   location + "/plugin.yaml", e.what()));
      }
      continue;
    }

    if (!manifest.entry.empty() && manifest.entry != ref.entry) {
      issues.push_back(MakeIssue(
          IssueCode::kPluginEntrypointMissing, location,
          "descriptor declares entry '" + ref.entry +
              "' but the plugin manifest declares '" + manifest.entry + "'"));
    } else if (!IsOwnerExecutable(dir / ref.entry)) {
      issues.push_back(MakeIssue(
          IssueCode::kPluginEntrypointMissing, location,
          role + " entry point " + ref.path + "/" + ref.entry +
              " is missing or not executable"));
    }
    if (manifest.protocol_version != kPluginProtocolVersion) {
      issues.push_back(MakeIssue(
          IssueCode::kPluginProtocolMismatch, location,
          "plugin speaks protocol '" + manifest.protocol_version +
              "', the SDK supports \"" + std::string(kPluginProtocolVersion) +
              "\""));
    }
    std::vector<std::string> missing;
    if (!manifest.max_instances || *manifest.max_instances < 1) {
      missing.push_back("max_instances");
    }
    if (!manifest.max_total_cpu_cores || *manifest.max_total_cpu_cores < 1) {
      missing.push_back("max_total_cpu_cores");
    }
    if (!missing.empty()) {
      std::string names;
      for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
      issues.push_back(MakeIssue(IssueCode::kPluginBoundsMissing, location,
                                 "plugin manifest lacks a positive " + names));
    }
  }
  return ValidationReport(std::move(issues));
}

ValidationReport ValidateAll(const ResolvedService& service,
                             const std::optional<fs::path>& pkg_root) {
  ValidationReport report = AnalyzeGraph(service);
  report.Merge(AnalyzeBandwidth(service));
  if (pkg_root) {
    report.Merge(CheckControlFunctions(*pkg_root, service.service.control_functions));
  }
  return report;
}

ServiceSources LoadPackageTree(const fs::path& root) {
  ServiceSources sources;
  sources.nsd_location = "descriptors/nsd.yaml";
  sources.nsd_text = ReadFile(root / "descriptors" / "nsd.yaml");
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root / "descriptors", ec)) {
    std::string name = entry.path().filename().string();
    if (name.starts_with("vnfd-") && name.ends_with(".yaml")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    sources.vnfd_texts.emplace_back(
        "descriptors/" + file.filename().string(), ReadFile(file));
  }
  sources.plugin_root = root;
  return sources;
}

namespace {

VnfdLookup Chain(std::map<VnfdRef, VnfDescriptor> local,
                 const VnfdLookup& fallback) {
  return [local = std::move(local), fallback](
             const VnfdRef& ref) -> std::optional<VnfDescriptor> {
    auto it = local.find(ref);
    if (it != local.end()) return it->second;
    if (fallback) return fallback(ref);
    return std::nullopt;
  };
}

}  // namespace

ValidationReport ValidateSources(const ServiceSources& sources,
                                 const VnfdLookup& fallback) {
  ValidationReport report;
  ValidationReport nsd_schema =
      ValidateSchema(sources.nsd_text, DescriptorKind::kNsd);
  if (!nsd_schema.issues().empty()) {
    AddPrefixed(report, nsd_schema, sources.nsd_location);
    return report;
  }
  ServiceDescriptor nsd = ParseServiceDescriptor(sources.nsd_text);

  std::map<VnfdRef, VnfDescriptor> local;
  for (const auto& [location, text] : sources.vnfd_texts) {
    ValidationReport vnfd_schema = ValidateSchema(text, DescriptorKind::kVnfd);
    if (!vnfd_schema.issues().empty()) {
      AddPrefixed(report, vnfd_schema, location);
      continue;
    }
    VnfDescriptor vnfd = ParseVnfDescriptor(text);
    local.emplace(VnfdRef{vnfd.name, vnfd.version}, std::move(vnfd));
  }

  std::optional<ResolvedService> resolved;
  try {
    resolved = ResolveReferences(nsd, Chain(std::move(local), fallback));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnresolvedReference &&
        e.code() != ErrorCode::kFlavorMismatch) {
      throw;
    }
    for (const auto& detail : e.details()) {
      report.Add(MakeIssue(IssueCode::kUnresolvedReference, detail.location,
                           detail.message));
    }
  }
  if (resolved) {
    report.Merge(ValidateAll(*resolved, sources.plugin_root));
  } else if (sources.plugin_root) {
    report.Merge(
        CheckControlFunctions(*sources.plugin_root, nsd.control_functions));
  }
  return report;
}

ResolvedService ResolveSources(const ServiceSources& sources,
                               const VnfdLookup& fallback) {
  ServiceDescriptor nsd = ParseServiceDescriptor(sources.nsd_text);
  std::map<VnfdRef, VnfDescriptor> local;
  for (const auto& [location, text] : sources.vnfd_texts) {
    VnfDescriptor vnfd = ParseVnfDescriptor(text);
    local.emplace(VnfdRef{vnfd.name, vnfd.version}, std::move(vnfd));
  }
  return ResolveReferences(nsd, Chain(std::move(local), fallback));
}

}  // namespace svcsdk
