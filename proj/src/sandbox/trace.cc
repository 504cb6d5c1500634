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

#include "svcsdk/sandbox/trace.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "svcsdk/common/error.h"
#include "svcsdk/common/util.h"

namespace svcsdk {
namespace {

[[noreturn]] void Fail(ErrorCode code, std::size_t line,
                       const std::string& message) {
  const std::string location = "line " + std::to_string(line);
  throw Error(code, "trace " + location + ": " + message,
              {ErrorDetail{location, message}});
}

}  // namespace

double TrafficTrace::OfferedAt(std::string_view cp, std::int64_t tick) const {
  auto it = samples.find(std::string(cp));
  if (it == samples.end()) return 0;
  double offered = 0;
  for (const auto& s : it->second) {
    if (s.tick > tick) break;
    offered = s.offered_mbps;
  }
  return offered;
}

std::int64_t TrafficTrace::LastTick() const {
  std::int64_t last = -1;
  for (const auto& [cp, list] : samples) {
    if (!list.empty()) last = std::max(last, list.back().tick);
  }
  return last;
}

TrafficTrace ParseTrace(std::string_view text) {
  TrafficTrace trace;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool header_seen = false;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != kTraceHeader) {
        Fail(ErrorCode::kParse, line_no,
             "header must be '" + std::string(kTraceHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 =
        c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos ||
        line.find(',', c2 + 1) != std::string_view::npos) {
      Fail(ErrorCode::kParse, line_no, "expected 3 fields");
    }
    const std::string_view tick_text = line.substr(0, c1);
    const std::string cp(line.substr(c1 + 1, c2 - c1 - 1));
    const std::string_view load_text = line.substr(c2 + 1);
    std::int64_t tick = 0;
    auto [p1, e1] = std::from_chars(tick_text.data(),
                                    tick_text.data() + tick_text.size(), tick);
    if (e1 != std::errc() || p1 != tick_text.data() + tick_text.size() ||
        tick_text.empty()) {
      Fail(ErrorCode::kParse, line_no, "tick is not an integer");
    }
    double load = 0;
    auto [p2, e2] = std::from_chars(load_text.data(),
                                    load_text.data() + load_text.size(), load);
    if (e2 != std::errc() || p2 != load_text.data() + load_text.size() ||
        load_text.empty()) {
      Fail(ErrorCode::kParse, line_no, "offered_mbps is not a number");
    }
    if (cp.empty()) Fail(ErrorCode::kParse, line_no, "empty connection point");
    if (tick < 0) Fail(ErrorCode::kRange, line_no, "tick must be non-negative");
    if (load < 0) {
      Fail(ErrorCode::kRange, line_no, "offered_mbps must be non-negative");
    }
    auto& list = trace.samples[cp];
    if (!list.empty() && list.back().tick >= tick) {
      Fail(ErrorCode::kParse, line_no,
           "ticks for '" + cp + "' must be strictly increasing");
    }
    list.push_back(TraceSample{tick, load});
  }
  if (!header_seen) Fail(ErrorCode::kParse, 1, "missing header");
  return trace;
}

std::string FormatTrace(const TrafficTrace& trace) {
  std::vector<std::pair<TraceSample, std::string>> rows;
  for (const auto& [cp, list] : trace.samples) {
    for (const auto& s : list) rows.emplace_back(s, cp);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.first.tick < b.first.tick;
  });
  std::ostringstream out;
  out << kTraceHeader << "\n";
  for (const auto& [s, cp] : rows) {
    out << s.tick << "," << cp << "," << FormatNumber(s.offered_mbps) << "\n";
  }
  return out.str();
}

}  // namespace svcsdk
