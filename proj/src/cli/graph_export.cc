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

#include "svcsdk/cli/graph_export.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

#include "svcsdk/common/util.h"

namespace svcsdk {
namespace {

std::string Quote(std::string_view text) {
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') quoted += '\\';
    quoted += c;
  }
  return quoted + "\"";
}

std::string EndpointNode(std::string_view cp) {
  return std::string(kServiceOwner) + ":" + std::string(cp);
}

std::string BandwidthLabel(double mbps) {
  return FormatNumber(mbps) + " Mbit/s";
}

void Header(std::ostringstream& dot, std::string_view name) {
  dot << "digraph " << Quote(name) << " {\n";
  dot << "  rankdir=LR;\n";
  dot << "  node [shape=box];\n";
}

void EndpointNodes(std::ostringstream& dot,
                   const std::vector<std::string>& endpoints) {
  for (const auto& cp : endpoints) {
    dot << "  " << Quote(EndpointNode(cp)) << " [label=" << Quote(cp)
        << ", shape=ellipse];\n";
  }
}

// Every pair of endpoints on a link, expanded to the nodes standing for
// each endpoint.
void LinkEdges(std::ostringstream& dot, const std::vector<std::string>& cps,
               double bandwidth,
               const std::map<std::string, std::vector<std::string>>& nodes_of) {
  std::vector<std::vector<std::string>> ends;
  for (const auto& text : cps) {
    auto ref = CpRef::Parse(text);
    if (!ref) continue;
    if (ref->IsService()) {
      ends.push_back({EndpointNode(ref->cp)});
      continue;
    }
    auto it = nodes_of.find(ref->owner);
    ends.push_back(it == nodes_of.end() ? std::vector<std::string>{}
                                        : it->second);
  }
  for (std::size_t i = 0; i < ends.size(); ++i) {
    for (std::size_t j = i + 1; j < ends.size(); ++j) {
      for (const auto& from : ends[i]) {
        for (const auto& to : ends[j]) {
          dot << "  " << Quote(from) << " -> " << Quote(to)
              << " [label=" << Quote(BandwidthLabel(bandwidth)) << "];\n";
        }
      }
    }
  }
}

}  // namespace

std::string ExportDot(const ServiceDescriptor& service) {
  std::ostringstream dot;
  Header(dot, service.name);
  std::vector<std::string> endpoints;
  for (const auto& cp : service.service_connection_points) {
    endpoints.push_back(cp.id);
  }
  EndpointNodes(dot, endpoints);
  std::map<std::string, std::vector<std::string>> nodes_of;
  for (const auto& vnf : service.vnfs) {
    dot << "  " << Quote(vnf.vnf_id)
        << " [label=" << Quote(vnf.vnf_id + "\\n" + vnf.flavor) << "];\n";
    nodes_of[vnf.vnf_id] = {vnf.vnf_id};
  }
  for (const auto& link : service.virtual_links) {
    std::vector<std::string> cps;
    for (const auto& ep : link.endpoints) cps.push_back(ep.ToString());
    LinkEdges(dot, cps, link.bandwidth_mbps, nodes_of);
  }
  dot << "}\n";
  return dot.str();
}

std::string ExportDot(const DeploymentSnapshot& deployment) {
  const nlohmann::json& service = deployment.service;
  std::ostringstream dot;
  Header(dot, service.value("name", std::string("service")));
  std::vector<std::string> endpoints;
  for (const auto& cp : service.value("service_connection_points",
                                      nlohmann::json::array())) {
    endpoints.push_back(cp.get<std::string>());
  }
  EndpointNodes(dot, endpoints);

  std::map<std::string, std::vector<std::string>> nodes_of;
  std::map<std::string, std::vector<const VnfInstance*>> by_pop;
  for (const auto& instance : deployment.instances) {
    nodes_of[instance.vnf_id].push_back(instance.instance_id);
    auto it = deployment.placement.find(instance.instance_id);
    by_pop[it == deployment.placement.end() ? std::string() : it->second]
        .push_back(&instance);
  }
  std::vector<std::string> pops = deployment.pops;
  for (const auto& [pop, instances] : by_pop) {
    if (!pop.empty() &&
        std::find(pops.begin(), pops.end(), pop) == pops.end()) {
      pops.push_back(pop);
    }
  }
  auto node = [&](const VnfInstance& instance, std::string_view indent) {
    dot << indent << Quote(instance.instance_id) << " [label="
        << Quote(instance.instance_id + "\\n" + instance.flavor.name)
        << "];\n";
  };
  for (const auto& pop : pops) {
    auto it = by_pop.find(pop);
    if (it == by_pop.end()) continue;
    dot << "  subgraph " << Quote("cluster_" + pop) << " {\n";
    dot << "    label=" << Quote(pop) << ";\n";
    for (const auto* instance : it->second) node(*instance, "    ");
    dot << "  }\n";
  }
  if (auto it = by_pop.find(""); it != by_pop.end()) {
    for (const auto* instance : it->second) node(*instance, "  ");
  }
  for (const auto& link :
       service.value("virtual_links", nlohmann::json::array())) {
    LinkEdges(dot, link.at("endpoints").get<std::vector<std::string>>(),
              link.value("bandwidth_mbps", 0.0), nodes_of);
  }
  dot << "}\n";
  return dot.str();
}

}  // namespace svcsdk
