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

#include "svcsdk/sandbox/infrastructure.h"

#include <yaml-cpp/yaml.h>

#include <set>

#include "svcsdk/common/error.h"

namespace svcsdk {
namespace {

class Reader {
 public:
  void Fail(const std::string& location, const std::string& message) {
    errors_.push_back(ErrorDetail{location, message});
  }

  void OnlyKeys(const YAML::Node& node, const std::string& location,
                std::initializer_list<std::string_view> keys) {
    for (const auto& kv : node) {
      const std::string key = kv.first.Scalar();
      bool known = false;
      for (auto k : keys) known = known || k == key;
      if (!known) Fail(location + "." + key, "unknown field");
    }
  }

  std::string String(const YAML::Node& node, const std::string& location) {
    if (!node || !node.IsScalar() || node.Scalar().empty()) {
      Fail(location, "required string field missing");
      return {};
    }
    return node.Scalar();
  }

  double Positive(const YAML::Node& node, const std::string& location,
                  bool allow_zero = false) {
    if (!node || !node.IsScalar()) {
      Fail(location, "required number missing");
      return 0;
    }
    double value = 0;
    try {
      value = node.as<double>();
    } catch (const YAML::Exception&) {
      Fail(location, "expected a number");
      return 0;
    }
    if (allow_zero ? value < 0 : value <= 0) {
      Fail(location, allow_zero ? "must be non-negative" : "must be positive");
    }
    return value;
  }

  std::int64_t Integer(const YAML::Node& node, const std::string& location,
                       bool allow_zero = false) {
    const double value = Positive(node, location, allow_zero);
    if (value != static_cast<double>(static_cast<std::int64_t>(value))) {
      Fail(location, "expected an integer");
    }
    return static_cast<std::int64_t>(value);
  }

  std::vector<ErrorDetail>& errors() { return errors_; }

 private:
  std::vector<ErrorDetail> errors_;
};

}  // namespace

std::string_view ZoneName(Zone zone) {
  switch (zone) {
    case Zone::kEdge:
      return "edge";
    case Zone::kCore:
      return "core";
    case Zone::kCloud:
      return "cloud";
  }
  return "edge";
}

std::optional<Zone> ParseZone(std::string_view text) {
  for (auto zone : {Zone::kEdge, Zone::kCore, Zone::kCloud}) {
    if (ZoneName(zone) == text) return zone;
  }
  return std::nullopt;
}

const Pop* InfrastructureModel::FindPop(std::string_view id) const {
  for (const auto& pop : pops) {
    if (pop.id == id) return &pop;
  }
  return nullptr;
}

nlohmann::json InfrastructureModel::ToJson() const {
  nlohmann::json doc;
  doc["pops"] = nlohmann::json::array();
  for (const auto& pop : pops) {
    doc["pops"].push_back({{"id", pop.id},
                           {"zone", std::string(ZoneName(pop.zone))},
                           {"cpu_cores", pop.cpu_cores},
                           {"memory_mb", pop.memory_mb},
                           {"storage_gb", pop.storage_gb}});
  }
  doc["inter_pop_links"] = nlohmann::json::array();
  for (const auto& link : inter_pop_links) {
    doc["inter_pop_links"].push_back({{"pop_a", link.pop_a},
                                      {"pop_b", link.pop_b},
                                      {"bandwidth_mbps", link.bandwidth_mbps},
                                      {"latency_ms", link.latency_ms}});
  }
  return doc;
}

InfrastructureModel LoadInfrastructure(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::kParse, "invalid YAML in infrastructure: " + e.msg,
                {ErrorDetail{"line " + std::to_string(e.mark.line + 1) +
                                 ", column " +
                                 std::to_string(e.mark.column + 1),
                             e.msg}});
  }
  Reader reader;
  InfrastructureModel model;
  if (!root.IsMap()) {
    throw Error(ErrorCode::kSchema, "invalid infrastructure model",
                {ErrorDetail{"/", "expected a mapping"}});
  }
  reader.OnlyKeys(root, "", {"pops", "inter_pop_links"});
  const YAML::Node pops = root["pops"];
  if (!pops || !pops.IsSequence() || pops.size() == 0) {
    reader.Fail("/pops", "at least one PoP required");
  } else {
    std::set<std::string> ids;
    for (std::size_t i = 0; i < pops.size(); ++i) {
      const std::string loc = "/pops[" + std::to_string(i) + "]";
      const YAML::Node node = pops[i];
      if (!node.IsMap()) {
        reader.Fail(loc, "expected a mapping");
        continue;
      }
      reader.OnlyKeys(node, loc,
                      {"id", "zone", "cpu_cores", "memory_mb", "storage_gb"});
      Pop pop;
      pop.id = reader.String(node["id"], loc + ".id");
      const std::string zone = reader.String(node["zone"], loc + ".zone");
      if (auto z = ParseZone(zone)) {
        pop.zone = *z;
      } else if (!zone.empty()) {
        reader.Fail(loc + ".zone", "zone must be edge, core or cloud");
      }
      pop.cpu_cores = reader.Integer(node["cpu_cores"], loc + ".cpu_cores");
      pop.memory_mb = reader.Integer(node["memory_mb"], loc + ".memory_mb");
      pop.storage_gb = reader.Integer(node["storage_gb"], loc + ".storage_gb");
      if (!pop.id.empty() && !ids.insert(pop.id).second) {
        reader.Fail(loc + ".id", "duplicate PoP id '" + pop.id + "'");
      }
      model.pops.push_back(std::move(pop));
    }
  }
  if (const YAML::Node links = root["inter_pop_links"]) {
    if (!links.IsSequence()) {
      reader.Fail("/inter_pop_links", "expected a sequence");
    } else {
      for (std::size_t i = 0; i < links.size(); ++i) {
        const std::string loc = "/inter_pop_links[" + std::to_string(i) + "]";
        const YAML::Node node = links[i];
        if (!node.IsMap()) {
          reader.Fail(loc, "expected a mapping");
          continue;
        }
        reader.OnlyKeys(node, loc,
                        {"pop_a", "pop_b", "bandwidth_mbps", "latency_ms"});
        InterPopLink link;
        link.pop_a = reader.String(node["pop_a"], loc + ".pop_a");
        link.pop_b = reader.String(node["pop_b"], loc + ".pop_b");
        link.bandwidth_mbps =
            reader.Positive(node["bandwidth_mbps"], loc + ".bandwidth_mbps");
        link.latency_ms = reader.Positive(node["latency_ms"],
                                          loc + ".latency_ms", true);
        for (const auto* end : {&link.pop_a, &link.pop_b}) {
          if (!end->empty() && model.FindPop(*end) == nullptr) {
            reader.Fail(loc, "unknown PoP '" + *end + "'");
          }
        }
        if (!link.pop_a.empty() && link.pop_a == link.pop_b) {
          reader.Fail(loc, "link must join two different PoPs");
        }
        model.inter_pop_links.push_back(std::move(link));
      }
    }
  }
  if (!reader.errors().empty()) {
    throw Error(ErrorCode::kSchema, "invalid infrastructure model",
                std::move(reader.errors()));
  }
  return model;
}

}  // namespace svcsdk
