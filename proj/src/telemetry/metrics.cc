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

#include "svcsdk/telemetry/metrics.h"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <tuple>

#include "svcsdk/common/error.h"
#include "svcsdk/common/util.h"

namespace svcsdk {
namespace {

constexpr double kAchievedSlack = 1e-9;

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string LineLocation(std::size_t line) {
  return "line " + std::to_string(line);
}

double ParseDouble(std::string_view field, std::size_t line,
                   std::string_view column) {
  double value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() ||
      field.empty()) {
    throw Error(ErrorCode::kParse,
                "metrics " + LineLocation(line) + ": " + std::string(column) +
                    " is not a number",
                {ErrorDetail{LineLocation(line),
                             std::string(column) + " '" + std::string(field) +
                                 "' is not a number"}});
  }
  return value;
}

void CheckRange(bool ok, std::size_t line, const std::string& message) {
  if (!ok) {
    throw Error(ErrorCode::kRange,
                "metrics " + LineLocation(line) + ": " + message,
                {ErrorDetail{LineLocation(line), message}});
  }
}

}  // namespace

MetricSeries IngestMetrics(std::string_view text) {
  MetricSeries series;
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
      if (line != kMetricsHeader) {
        throw Error(ErrorCode::kParse, "metrics header must be '" +
                                           std::string(kMetricsHeader) + "'",
                    {ErrorDetail{LineLocation(line_no), "unexpected header"}});
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = SplitCsv(line);
    if (fields.size() != 7) {
      throw Error(ErrorCode::kParse,
                  "metrics " + LineLocation(line_no) + ": expected 7 fields",
                  {ErrorDetail{LineLocation(line_no),
                               "expected 7 fields, got " +
                                   std::to_string(fields.size())}});
    }
    MetricRecord r;
    const double tick = ParseDouble(fields[0], line_no, "tick");
    if (tick != static_cast<double>(static_cast<std::int64_t>(tick))) {
      throw Error(ErrorCode::kParse,
                  "metrics " + LineLocation(line_no) + ": tick not integral",
                  {ErrorDetail{LineLocation(line_no), "tick not integral"}});
    }
    r.tick = static_cast<std::int64_t>(tick);
    r.vnf_id = std::string(fields[1]);
    if (r.vnf_id.empty()) {
      throw Error(ErrorCode::kParse,
                  "metrics " + LineLocation(line_no) + ": empty vnf_id",
                  {ErrorDetail{LineLocation(line_no), "empty vnf_id"}});
    }
    r.cpu_cores = ParseDouble(fields[2], line_no, "cpu_cores");
    r.offered_mbps = ParseDouble(fields[3], line_no, "offered_mbps");
    r.achieved_mbps = ParseDouble(fields[4], line_no, "achieved_mbps");
    r.packet_loss_ratio = ParseDouble(fields[5], line_no, "packet_loss_ratio");
    r.cpu_utilization = ParseDouble(fields[6], line_no, "cpu_utilization");
    CheckRange(r.tick >= 0, line_no, "tick must be non-negative");
    CheckRange(r.cpu_cores >= 0, line_no, "cpu_cores must be non-negative");
    CheckRange(r.offered_mbps >= 0 && r.achieved_mbps >= 0, line_no,
               "throughput must be non-negative");
    CheckRange(r.achieved_mbps <= r.offered_mbps + kAchievedSlack, line_no,
               "achieved_mbps exceeds offered_mbps");
    CheckRange(r.packet_loss_ratio >= 0 && r.packet_loss_ratio <= 1, line_no,
               "packet_loss_ratio " + FormatNumber(r.packet_loss_ratio) +
                   " outside [0,1]");
    CheckRange(r.cpu_utilization >= 0 && r.cpu_utilization <= 1, line_no,
               "cpu_utilization " + FormatNumber(r.cpu_utilization) +
                   " outside [0,1]");
    series.push_back(std::move(r));
  }
  if (!header_seen) {
    throw Error(ErrorCode::kParse, "metrics file is empty",
                {ErrorDetail{LineLocation(1), "missing header"}});
  }
  std::stable_sort(series.begin(), series.end(),
                   [](const MetricRecord& a, const MetricRecord& b) {
                     return std::tie(a.vnf_id, a.tick) <
                            std::tie(b.vnf_id, b.tick);
                   });
  return series;
}

std::string FormatMetricsCsv(const MetricSeries& series) {
  std::ostringstream out;
  out << kMetricsHeader << "\n";
  for (const auto& r : series) {
    out << r.tick << "," << r.vnf_id << "," << FormatNumber(r.cpu_cores) << ","
        << FormatNumber(r.offered_mbps) << "," << FormatNumber(r.achieved_mbps)
        << "," << FormatNumber(r.packet_loss_ratio) << ","
        << FormatNumber(r.cpu_utilization) << "\n";
  }
  return out.str();
}

MetricSeries SeriesFor(const MetricSeries& series, std::string_view vnf_id) {
  MetricSeries out;
  for (const auto& r : series) {
    if (r.vnf_id == vnf_id) out.push_back(r);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const MetricRecord& a, const MetricRecord& b) {
                     return a.tick < b.tick;
                   });
  return out;
}

}  // namespace svcsdk
