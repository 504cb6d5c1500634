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

#ifndef SVCSDK_VALIDATOR_CYCLES_H_
#define SVCSDK_VALIDATOR_CYCLES_H_

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "svcsdk/descriptor/model.h"

namespace svcsdk {

inline constexpr std::size_t kMaxCycleReports = 1000;

// Elementary cycles of the digraph (Johnson's algorithm). Each cycle starts at
// its lexicographically smallest node; a self-loop is the one-node cycle.
// Enumeration stops after `limit` cycles.
std::vector<std::vector<std::string>> ElementaryCycles(
    const std::set<GraphEdge>& edges, std::size_t limit = kMaxCycleReports);

}  // namespace svcsdk

#endif  // SVCSDK_VALIDATOR_CYCLES_H_
