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

#ifndef SVCSDK_SANDBOX_INFRASTRUCTURE_H_
#define SVCSDK_SANDBOX_INFRASTRUCTURE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace svcsdk {

enum class Zone { kEdge, kCore, kCloud };

std::string_view ZoneName(Zone zone);
std::optional<Zone> ParseZone(std::string_view text);

struct Pop {
  std::string id;
  Zone zone = Zone::kEdge;
  std::int64_t cpu_cores = 0;
  std::int64_t memory_mb = 0;
  std::int64_t storage_gb = 0;

  bool operator==(const Pop&) const = default;
};

struct InterPopLink {
  std::string pop_a;
  std::string pop_b;
  double bandwidth_mbps = 0;
  double latency_ms = 0;

  bool operator==(const InterPopLink&) const = default;
};

struct InfrastructureModel {
  std::vector<Pop> pops;
  std::vector<InterPopLink> inter_pop_links;

  const Pop* FindPop(std::string_view id) const;
  nlohmann::json ToJson() const;

  bool operator==(const InfrastructureModel&) const = default;
};

// Throws Error(kParse) on malformed YAML and Error(kSchema) listing every
// violated invariant.
InfrastructureModel LoadInfrastructure(std::string_view text);

}  // namespace svcsdk

#endif  // SVCSDK_SANDBOX_INFRASTRUCTURE_H_
