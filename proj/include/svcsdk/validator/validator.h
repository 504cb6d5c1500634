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

#ifndef SVCSDK_VALIDATOR_VALIDATOR_H_
#define SVCSDK_VALIDATOR_VALIDATOR_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svcsdk/descriptor/model.h"
#include "svcsdk/descriptor/resolve.h"
#include "svcsdk/validator/issue.h"

namespace svcsdk {

enum class DescriptorKind { kNsd, kVnfd };

// Schema conformance of one descriptor document; every violation becomes a
// SCHEMA error located at its field path.
ValidationReport ValidateSchema(std::string_view text, DescriptorKind kind);

// Connection points, cycles (with the traffic-steering exemption), repeated
// VNF->VNF hops within one path and VNFs outside every path. Cycles are
// searched among VNF nodes only: service endpoints are where traffic leaves
// the service.
ValidationReport AnalyzeGraph(const ResolvedService& service);

// Ingress demand against declared VNF caps and per-link demand of paths that
// share a link. A path's demand is its narrowest link. Strict inequality.
ValidationReport AnalyzeBandwidth(const ResolvedService& service);

// Plugin manifest (plugins/<name>/plugin.yaml).
struct PluginManifest {
  std::string entry;
  std::string protocol_version;
  std::optional<std::int64_t> max_instances;
  std::optional<std::int64_t> max_total_cpu_cores;
};

// Throws Error(kIo) if absent, Error(kSchema) if malformed.
PluginManifest ReadPluginManifest(const std::filesystem::path& plugin_dir);

// Static conformance of every plugin referenced by `refs` under `pkg_root`.
ValidationReport CheckControlFunctions(const std::filesystem::path& pkg_root,
                                       const ControlFunctionRefs& refs);

ValidationReport ValidateAll(
    const ResolvedService& service,
    const std::optional<std::filesystem::path>& pkg_root = std::nullopt);

// Descriptor texts of one service as found in a package tree or workspace.
struct ServiceSources {
  std::string nsd_location = "descriptors/nsd.yaml";
  std::string nsd_text;
  // (location, text) of every VNFD available to resolution.
  std::vector<std::pair<std::string, std::string>> vnfd_texts;
  std::optional<std::filesystem::path> plugin_root;
};

// Reads descriptors/nsd.yaml, descriptors/vnfd-*.yaml and treats `root` as
// the plugin root.
ServiceSources LoadPackageTree(const std::filesystem::path& root);

// Full pipeline from text: schema, resolution, graph, bandwidth, control
// functions. Resolution failures become UNRESOLVED_REFERENCE errors.
// `fallback` is consulted for references no local VNFD satisfies.
ValidationReport ValidateSources(const ServiceSources& sources,
                                 const VnfdLookup& fallback = nullptr);

// Parses and resolves sources that are known to validate; throws otherwise.
ResolvedService ResolveSources(const ServiceSources& sources,
                               const VnfdLookup& fallback = nullptr);

}  // namespace svcsdk

#endif  // SVCSDK_VALIDATOR_VALIDATOR_H_
