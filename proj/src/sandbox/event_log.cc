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

#include "svcsdk/sandbox/event_log.h"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "svcsdk/common/error.h"

namespace svcsdk {
namespace {

std::vector<VnfInstance> InstancesFrom(const nlohmann::json& list) {
  std::vector<VnfInstance> instances;
  for (const auto& item : list) {
    VnfInstance inst;
    inst.instance_id = item.at("instance_id").get<std::string>();
    inst.vnf_id = item.at("vnf_id").get<std::string>();
    const auto& f = item.at("flavor");
    inst.flavor.name = f.at("name").get<std::string>();
    inst.flavor.cpu_cores = f.at("cpu_cores").get<std::int64_t>();
    inst.flavor.memory_mb = f.at("memory_mb").get<std::int64_t>();
    inst.flavor.storage_gb = f.at("storage_gb").get<std::int64_t>();
    instances.push_back(std::move(inst));
  }
  return instances;
}

}  // namespace

void EventLog::Append(std::int64_t tick, std::string_view type,
                      nlohmann::json payload) {
  payload["seq"] = records_.size();
  payload["tick"] = tick;
  payload["type"] = std::string(type);
  records_.push_back(std::move(payload));
}

std::vector<nlohmann::json> EventLog::OfType(std::string_view type) const {
  std::vector<nlohmann::json> out;
  for (const auto& r : records_) {
    if (r.value("type", "") == type) out.push_back(r);
  }
  return out;
}

std::string EventLog::ToJsonLines() const {
  std::string out;
  for (const auto& r : records_) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

EventLog EventLog::Parse(std::string_view text) {
  EventLog log;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse,
                  "event log line " + std::to_string(line_no) +
                      " is not JSON",
                  {ErrorDetail{"line " + std::to_string(line_no), e.what()}});
    }
    if (!record.is_object() || !record.contains("type") ||
        !record.contains("tick") || !record.contains("seq")) {
      throw Error(ErrorCode::kParse,
                  "event log line " + std::to_string(line_no) +
                      " lacks seq, tick or type",
                  {ErrorDetail{"line " + std::to_string(line_no),
                               "missing seq, tick or type"}});
    }
    log.records_.push_back(std::move(record));
  }
  return log;
}

MetricSeries MetricsFromEventLog(const EventLog& log) {
  MetricSeries series;
  for (const auto& record : log.records()) {
    if (record.value("type", "") != "metrics") continue;
    const std::int64_t tick = record.at("tick").get<std::int64_t>();
    for (const auto& v : record.at("vnfs")) {
      MetricRecord r;
      r.tick = tick;
      r.vnf_id = v.at("vnf_id").get<std::string>();
      r.cpu_cores = v.at("cpu_cores").get<double>();
      r.offered_mbps = v.at("offered_mbps").get<double>();
      r.achieved_mbps = v.at("achieved_mbps").get<double>();
      r.packet_loss_ratio = v.at("packet_loss_ratio").get<double>();
      r.cpu_utilization = v.at("cpu_utilization").get<double>();
      series.push_back(std::move(r));
    }
  }
  std::stable_sort(series.begin(), series.end(),
                   [](const MetricRecord& a, const MetricRecord& b) {
                     return std::tie(a.vnf_id, a.tick) <
                            std::tie(b.vnf_id, b.tick);
                   });
  return series;
}

DeploymentSnapshot FinalDeployment(const EventLog& log) {
  DeploymentSnapshot snapshot;
  bool deployed = false;
  try {
    for (const auto& record : log.records()) {
      const std::string type = record.value("type", "");
      if (type == "deploy") {
        deployed = true;
        snapshot.service = record.at("service");
        for (const auto& pop : record.at("infrastructure").at("pops")) {
          snapshot.pops.push_back(pop.at("id").get<std::string>());
        }
      }
      if (type == "deploy" || type == "placement_update") {
        snapshot.instances = InstancesFrom(record.at("instances"));
        snapshot.placement =
            record.at("assignments").get<std::map<std::string, std::string>>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse,
                std::string("event log deployment records are malformed: ") +
                    e.what());
  }
  if (!deployed) {
    throw Error(ErrorCode::kParse, "event log has no deploy record");
  }
  return snapshot;
}

}  // namespace svcsdk
