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

#ifndef SVCSDK_DESCRIPTOR_RESOLVE_H_
#define SVCSDK_DESCRIPTOR_RESOLVE_H_

#include <functional>
#include <map>
#include <optional>

#include "svcsdk/descriptor/model.h"

namespace svcsdk {

using VnfdLookup =
    std::function<std::optional<VnfDescriptor>(const VnfdRef& ref)>;

// Lookup over an in-memory set of VNFDs keyed by (name, version).
VnfdLookup MapLookup(std::map<VnfdRef, VnfDescriptor> vnfds);

// Resolves every vnfd reference, defaults unset flavors to the VNFD's first
// flavor and derives the VNF adjacency. Resolution is all-or-nothing:
// Error(kUnresolvedReference) lists every missing (name, version) pair,
// Error(kFlavorMismatch) every vnf whose flavor the VNFD lacks.
ResolvedService ResolveReferences(const ServiceDescriptor& service,
                                  const VnfdLookup& lookup);

}  // namespace svcsdk

#endif  // SVCSDK_DESCRIPTOR_RESOLVE_H_
