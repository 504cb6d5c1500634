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

#include "svcsdk/descriptor/resolve.h"

#include <set>

#include "svcsdk/common/error.h"

namespace svcsdk {

VnfdLookup MapLookup(std::map<VnfdRef, VnfDescriptor> vnfds) {
  return [vnfds = std::move(vnfds)](
             const VnfdRef& ref) -> std::optional<VnfDescriptor> {
    auto it = vnfds.find(ref);
    if (it == vnfds.end()) return std::nullopt;
    return it->second;
  };
}

ResolvedService ResolveReferences(const ServiceDescriptor& service,
                                  const VnfdLookup& lookup) {
  ResolvedService resolved;
  resolved.service = service;

  std::map<VnfdRef, std::optional<VnfDescriptor>> cache;
  std::set<VnfdRef> missing;
  for (const auto& vnf : service.vnfs) {
    auto [it, inserted] = cache.try_emplace(vnf.vnfd);
    if (inserted) it->second = lookup(vnf.vnfd);
    if (!it->second) missing.insert(vnf.vnfd);
  }
  if (!missing.empty()) {
    std::vector<ErrorDetail> details;
    for (const auto& ref : missing) {
      details.push_back(ErrorDetail{"(" + ref.name + "," + ref.version + ")",
                                    "no VNFD with this name and version"});
    }
    throw Error(ErrorCode::kUnresolvedReference,
                "service references unknown VNF descriptors",
                std::move(details));
  }

  std::vector<ErrorDetail> flavor_errors;
  for (std::size_t i = 0; i < resolved.service.vnfs.size(); ++i) {
    VnfEntry& vnf = resolved.service.vnfs[i];
    const VnfDescriptor& vnfd = *cache.at(vnf.vnfd);
    if (vnf.flavor.empty() && !vnfd.resource_flavors.empty()) {
      vnf.flavor = vnfd.resource_flavors.front().name;
    }
    if (vnfd.FindFlavor(vnf.flavor) == nullptr) {
      flavor_errors.push_back(ErrorDetail{
          "/vnfs[" + std::to_string(i) + "].flavor",
          "flavor '" + vnf.flavor + "' not declared by " + vnfd.name + " " +
              vnfd.version});
    }
    resolved.vnfds.emplace(vnf.vnf_id, vnfd);
  }
  if (!flavor_errors.empty()) {
    throw Error(ErrorCode::kFlavorMismatch,
                "service selects flavors its VNFDs do not declare",
                std::move(flavor_errors));
  }

  resolved.adjacency = DeriveAdjacency(resolved.service);
  return resolved;
}

}  // namespace svcsdk
