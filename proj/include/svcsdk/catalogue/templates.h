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

#ifndef SVCSDK_CATALOGUE_TEMPLATES_H_
#define SVCSDK_CATALOGUE_TEMPLATES_H_

#include <optional>
#include <string>
#include <string_view>

#include "svcsdk/descriptor/model.h"
#include "svcsdk/descriptor/resolve.h"

namespace svcsdk {

enum class TemplateKind { kLoadBalancer, kHubAndSpoke, kFullMesh };

std::string_view TemplateKindName(TemplateKind kind);
// Throws Error(kUnknownTemplate) for names other than "load-balancer",
// "hub-and-spoke" and "full-mesh".
TemplateKind TemplateKindFromName(std::string_view name);

struct ScalingTemplate {
  TemplateKind kind = TemplateKind::kLoadBalancer;
  std::string target_vnf;
  int instance_count = 1;
  // load-balancer only.
  std::optional<VnfdRef> balancer;
  // hub-and-spoke only: the existing VNF every clone attaches to.
  std::string hub_vnf;

  bool operator==(const ScalingTemplate&) const = default;
};

std::string SerializeTemplate(const ScalingTemplate& t);
// Throws Error(kParse), Error(kSchema) or Error(kUnknownTemplate).
ScalingTemplate ParseTemplate(std::string_view text);

// Id of the k-th clone (1-based) of `vnf_id`.
std::string CloneId(std::string_view vnf_id, int k);
std::string BalancerId(std::string_view vnf_id);

// Expands the target VNF into the template's topology. Clones are named
// "<vnf_id>-<k>", every forwarding path through the target is duplicated once
// per clone, and the adjacency is recomputed.
//   load-balancer: target -> balancer "<vnf_id>-lb" + n clones; ingress links
//     end at the balancer, balancer->clone links share the summed ingress
//     bandwidth uniformly, egress links are copied per clone.
//   hub-and-spoke: n clones, each holding a copy of every target link; links
//     to the hub share the original bandwidth uniformly.
//   full-mesh: n clones with copied links plus C(n,2) clone-to-clone links.
// Throws Error(kTargetNotFound) if the target (or hub) is absent.
ResolvedService InstantiateTemplate(const ScalingTemplate& t,
                                    const ResolvedService& target,
                                    const VnfdLookup& lookup = nullptr);

}  // namespace svcsdk

#endif  // SVCSDK_CATALOGUE_TEMPLATES_H_
