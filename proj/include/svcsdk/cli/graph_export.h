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

#ifndef SVCSDK_CLI_GRAPH_EXPORT_H_
#define SVCSDK_CLI_GRAPH_EXPORT_H_

#include <string>

#include "svcsdk/descriptor/model.h"
#include "svcsdk/sandbox/event_log.h"

namespace svcsdk {

// Graphviz DOT of the service graph: service endpoints, then VNFs in
// declaration order, then one edge per virtual link.
std::string ExportDot(const ServiceDescriptor& service);

// DOT of the final deployment recorded in an event log: one node per VNF
// instance, grouped into one cluster per PoP.
std::string ExportDot(const DeploymentSnapshot& deployment);

}  // namespace svcsdk

#endif  // SVCSDK_CLI_GRAPH_EXPORT_H_
