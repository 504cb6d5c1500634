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

#ifndef SVCSDK_SANDBOX_TRACE_H_
#define SVCSDK_SANDBOX_TRACE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace svcsdk {

inline constexpr std::string_view kTraceHeader = "tick,cp,offered_mbps";

struct TraceSample {
  std::int64_t tick = 0;
  double offered_mbps = 0;

  bool operator==(const TraceSample&) const = default;
};

// Offered load per service connection point. A sample holds until the next
// one; before its first sample a connection point offers nothing.
struct TrafficTrace {
  std::map<std::string, std::vector<TraceSample>> samples;

  double OfferedAt(std::string_view cp, std::int64_t tick) const;
  // Largest sample tick; the run covers ticks 0..LastTick().
  std::int64_t LastTick() const;

  bool operator==(const TrafficTrace&) const = default;
};

// Throws Error(kParse) naming the line, Error(kRange) for negative load.
TrafficTrace ParseTrace(std::string_view text);
std::string FormatTrace(const TrafficTrace& trace);

}  // namespace svcsdk

#endif  // SVCSDK_SANDBOX_TRACE_H_
