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

#include "svcsdk/descriptor/parser.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <set>
#include <string>

#include "svcsdk/common/util.h"

namespace svcsdk {
namespace {

std::string Field(const std::string& path, std::string_view key) {
  if (path == "/") return "/" + std::string(key);
  return path + "." + std::string(key);
}

std::string Elem(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

struct SyntaxError {
  ErrorDetail detail;
};

YAML::Node LoadYaml(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw SyntaxError{ErrorDetail{
        "line " + std::to_string(e.mark.line + 1) + ", column " +
            std::to_string(e.mark.column + 1),
        e.msg}};
  }
}

// Walks a YAML tree against the descriptor schema, collecting violations.
class SchemaReader {
 public:
  std::vector<ErrorDetail>& violations() { return violations_; }

  void Fail(const std::string& path, std::string message) {
    violations_.push_back(ErrorDetail{path, std::move(message)});
  }

  bool ExpectMap(const YAML::Node& node, const std::string& path,
                 std::initializer_list<std::string_view> allowed) {
    if (!node.IsMap()) {
      Fail(path, "expected a mapping");
      return false;
    }
    std::set<std::string> seen;
    for (const auto& kv : node) {
      std::string key = kv.first.Scalar();
      if (!seen.insert(key).second) {
        Fail(Field(path, key), "duplicate key");
      }
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        Fail(Field(path, key), "unknown key");
      }
    }
    return true;
  }

  // Returns the child node or an invalid node; reports a missing required key.
  YAML::Node Child(const YAML::Node& map, std::string_view key,
                   const std::string& path, bool required) {
    YAML::Node child = map[std::string(key)];
    if (!child.IsDefined() || child.IsNull()) {
      if (required) Fail(Field(path, key), "missing required field");
      return YAML::Node(YAML::NodeType::Undefined);
    }
    return child;
  }

  std::optional<std::string> Scalar(const YAML::Node& node,
                                    const std::string& path) {
    if (!node.IsScalar()) {
      Fail(path, "expected a string");
      return std::nullopt;
    }
    return node.Scalar();
  }

  std::optional<std::string> String(const YAML::Node& map, std::string_view key,
                                    const std::string& path, bool required) {
    YAML::Node child = Child(map, key, path, required);
    if (!child.IsDefined()) return std::nullopt;
    auto value = Scalar(child, Field(path, key));
    if (value && value->empty()) {
      Fail(Field(path, key), "must not be empty");
      return std::nullopt;
    }
    return value;
  }

  std::optional<std::string> Identifier(const YAML::Node& map,
                                        std::string_view key,
                                        const std::string& path,
                                        bool required) {
    auto value = String(map, key, path, required);
    if (value && !IsIdentifier(*value)) {
      Fail(Field(path, key), "not a valid identifier: '" + *value + "'");
      return std::nullopt;
    }
    return value;
  }

  std::optional<double> NumberNode(const YAML::Node& node,
                                   const std::string& path) {
    if (!node.IsScalar()) {
      Fail(path, "expected a number");
      return std::nullopt;
    }
    const std::string& text = node.Scalar();
    double value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                     value);
    if (ec != std::errc() || end != text.data() + text.size() ||
        !std::isfinite(value)) {
      Fail(path, "expected a number, got '" + text + "'");
      return std::nullopt;
    }
    return value;
  }

  std::optional<double> Number(const YAML::Node& map, std::string_view key,
                               const std::string& path, bool required) {
    YAML::Node child = Child(map, key, path, required);
    if (!child.IsDefined()) return std::nullopt;
    return NumberNode(child, Field(path, key));
  }

  std::optional<std::int64_t> Integer(const YAML::Node& map,
                                      std::string_view key,
                                      const std::string& path, bool required) {
    YAML::Node child = Child(map, key, path, required);
    if (!child.IsDefined()) return std::nullopt;
    std::string where = Field(path, key);
    if (!child.IsScalar()) {
      Fail(where, "expected an integer");
      return std::nullopt;
    }
    const std::string& text = child.Scalar();
    std::int64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                     value);
    if (ec != std::errc() || end != text.data() + text.size()) {
      Fail(where, "expected an integer, got '" + text + "'");
      return std::nullopt;
    }
    return value;
  }

  // Iterates a sequence child; absent optional sequences yield nothing.
  template <typename Fn>
  void Sequence(const YAML::Node& map, std::string_view key,
                const std::string& path, bool required, Fn&& fn) {
    YAML::Node child = Child(map, key, path, required);
    if (!child.IsDefined()) return;
    std::string where = Field(path, key);
    if (!child.IsSequence()) {
      Fail(where, "expected a list");
      return;
    }
    for (std::size_t i = 0; i < child.size(); ++i) {
      fn(child[i], Elem(where, i));
    }
  }

 private:
  std::vector<ErrorDetail> violations_;
};

void ReadHeader(SchemaReader& reader, const YAML::Node& root,
                std::string& descriptor_version, std::string& name,
                std::string& vendor, std::string& version) {
  if (auto v = reader.String(root, "descriptor_version", "/", true)) {
    descriptor_version = *v;
    if (*v != kDescriptorVersion) {
      reader.Fail("/descriptor_version",
                  "unsupported descriptor_version '" + *v + "', expected \"" +
                      std::string(kDescriptorVersion) + "\"");
    }
  }
  if (auto v = reader.Identifier(root, "name", "/", true)) name = *v;
  if (auto v = reader.Identifier(root, "vendor", "/", true)) vendor = *v;
  if (auto v = reader.String(root, "version", "/", true)) version = *v;
}

std::optional<ConnectionPointDecl> ReadCpDecl(SchemaReader& reader,
                                              const YAML::Node& node,
                                              const std::string& path) {
  if (!reader.ExpectMap(node, path, {"id", "direction"})) return std::nullopt;
  ConnectionPointDecl decl;
  auto id = reader.Identifier(node, "id", path, true);
  if (!id) return std::nullopt;
  decl.id = *id;
  if (auto dir = reader.String(node, "direction", path, false)) {
    auto parsed = ParseDirection(*dir);
    if (!parsed) {
      reader.Fail(Field(path, "direction"),
                  "expected ingress, egress or bidirectional");
    } else {
      decl.direction = *parsed;
    }
  }
  return decl;
}

void ReadCpDecls(SchemaReader& reader, const YAML::Node& root,
                 std::string_view key, std::vector<ConnectionPointDecl>& out) {
  std::set<std::string> ids;
  reader.Sequence(root, key, "/", false,
                  [&](const YAML::Node& node, const std::string& path) {
                    auto decl = ReadCpDecl(reader, node, path);
                    if (!decl) return;
                    if (!ids.insert(decl->id).second) {
                      reader.Fail(Field(path, "id"),
                                  "duplicate connection point id '" + decl->id +
                                      "'");
                    }
                    out.push_back(*decl);
                  });
}

bool IsHexDigest(std::string_view text) {
  if (text.size() != 64) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
           (c >= 'A' && c <= 'F');
  });
}

std::optional<VnfDescriptor> ReadVnfd(SchemaReader& reader,
                                      const YAML::Node& root) {
  if (!reader.ExpectMap(root, "/",
                        {"descriptor_version", "name", "vendor", "version",
                         "image", "connection_points", "resource_flavors",
                         "capabilities", "performance"})) {
    return std::nullopt;
  }
  VnfDescriptor vnfd;
  ReadHeader(reader, root, vnfd.descriptor_version, vnfd.name, vnfd.vendor,
             vnfd.version);

  YAML::Node image = reader.Child(root, "image", "/", true);
  if (image.IsDefined() &&
      reader.ExpectMap(image, "/image", {"uri", "sha256"})) {
    if (auto uri = reader.String(image, "uri", "/image", true)) {
      vnfd.image.uri = *uri;
    }
    if (auto digest = reader.String(image, "sha256", "/image", true)) {
      if (!IsHexDigest(*digest)) {
        reader.Fail("/image.sha256",
                    "expected 64 hex characters, got " +
                        std::to_string(digest->size()));
      }
      vnfd.image.sha256 = *digest;
    }
  }

  ReadCpDecls(reader, root, "connection_points", vnfd.connection_points);

  std::set<std::string> flavor_names;
  reader.Sequence(
      root, "resource_flavors", "/", true,
      [&](const YAML::Node& node, const std::string& path) {
        if (!reader.ExpectMap(node, path,
                              {"name", "cpu_cores", "memory_mb",
                               "storage_gb"})) {
          return;
        }
        ResourceFlavor flavor;
        auto name = reader.Identifier(node, "name", path, true);
        auto cores = reader.Integer(node, "cpu_cores", path, true);
        auto memory = reader.Integer(node, "memory_mb", path, true);
        auto storage = reader.Integer(node, "storage_gb", path, false);
        if (cores && *cores < 1) {
          reader.Fail(Field(path, "cpu_cores"), "must be >= 1");
        }
        if (memory && *memory < 1) {
          reader.Fail(Field(path, "memory_mb"), "must be >= 1");
        }
        if (storage && *storage < 0) {
          reader.Fail(Field(path, "storage_gb"), "must be >= 0");
        }
        if (!name) return;
        flavor.name = *name;
        if (!flavor_names.insert(flavor.name).second) {
          reader.Fail(Field(path, "name"),
                      "duplicate flavor name '" + flavor.name + "'");
        }
        flavor.cpu_cores = cores.value_or(1);
        flavor.memory_mb = memory.value_or(1);
        flavor.storage_gb = storage.value_or(0);
        vnfd.resource_flavors.push_back(flavor);
      });
  if (root["resource_flavors"].IsSequence() &&
      root["resource_flavors"].size() == 0) {
    reader.Fail("/resource_flavors", "at least one flavor is required");
  }

  reader.Sequence(root, "capabilities", "/", false,
                  [&](const YAML::Node& node, const std::string& path) {
                    auto tag = reader.Scalar(node, path);
                    if (tag && tag->empty()) {
                      reader.Fail(path, "must not be empty");
                    } else if (tag) {
                      vnfd.capabilities.push_back(*tag);
                    }
                  });

  std::set<std::string> perf_flavors;
  reader.Sequence(
      root, "performance", "/", false,
      [&](const YAML::Node& node, const std::string& path) {
        if (!reader.ExpectMap(node, path,
                              {"flavor", "max_throughput_mbps"})) {
          return;
        }
        PerformanceEntry entry;
        auto flavor = reader.Identifier(node, "flavor", path, true);
        auto cap = reader.Number(node, "max_throughput_mbps", path, true);
        if (cap && *cap < 0) {
          reader.Fail(Field(path, "max_throughput_mbps"), "must be >= 0");
        }
        if (!flavor) return;
        if (!flavor_names.contains(*flavor)) {
          reader.Fail(Field(path, "flavor"),
                      "references undeclared flavor '" + *flavor + "'");
        }
        if (!perf_flavors.insert(*flavor).second) {
          reader.Fail(Field(path, "flavor"),
                      "duplicate performance entry for '" + *flavor + "'");
        }
        entry.flavor = *flavor;
        entry.max_throughput_mbps = cap.value_or(0);
        vnfd.performance.push_back(entry);
      });
  return vnfd;
}

std::optional<CpRef> ReadCpRef(SchemaReader& reader, const YAML::Node& node,
                               const std::string& path) {
  auto text = reader.Scalar(node, path);
  if (!text) return std::nullopt;
  auto ref = CpRef::Parse(*text);
  if (!ref || !IsIdentifier(ref->owner) || !IsIdentifier(ref->cp)) {
    reader.Fail(path, "expected \"ns:<cp>\" or \"<vnf_id>:<cp>\", got '" +
                          *text + "'");
    return std::nullopt;
  }
  return ref;
}

std::optional<ControlFunction> ReadControlFunction(SchemaReader& reader,
                                                   const YAML::Node& node,
                                                   const std::string& path) {
  if (!reader.ExpectMap(node, path, {"builtin", "parameters", "plugin"})) {
    return std::nullopt;
  }
  bool has_builtin = node["builtin"].IsDefined();
  bool has_plugin = node["plugin"].IsDefined();
  if (has_builtin == has_plugin) {
    reader.Fail(path, "exactly one of 'builtin' or 'plugin' is required");
    return std::nullopt;
  }
  if (has_builtin) {
    BuiltinPolicy policy;
    auto name = reader.Identifier(node, "builtin", path, true);
    if (!name) return std::nullopt;
    policy.name = *name;
    YAML::Node params = reader.Child(node, "parameters", path, false);
    if (params.IsDefined()) {
      std::string where = Field(path, "parameters");
      if (!params.IsMap()) {
        reader.Fail(where, "expected a mapping");
      } else {
        for (const auto& kv : params) {
          std::string key = kv.first.Scalar();
          if (auto v = reader.NumberNode(kv.second, Field(where, key))) {
            policy.parameters[key] = *v;
          }
        }
      }
    }
    return policy;
  }
  if (node["parameters"].IsDefined()) {
    reader.Fail(Field(path, "parameters"),
                "parameters apply to builtin policies only");
  }
  std::string where = Field(path, "plugin");
  YAML::Node plugin = node["plugin"];
  if (!reader.ExpectMap(plugin, where, {"path", "entry", "protocol_version"})) {
    return std::nullopt;
  }
  PluginRef ref;
  auto dir = reader.String(plugin, "path", where, true);
  auto entry = reader.String(plugin, "entry", where, true);
  auto version = reader.String(plugin, "protocol_version", where, true);
  if (dir && (dir->starts_with("/") || dir->find("..") != std::string::npos)) {
    reader.Fail(Field(where, "path"), "must be relative to the package root");
    dir.reset();
  }
  if (version && *version != kPluginProtocolVersion) {
    reader.Fail(Field(where, "protocol_version"),
                "unsupported protocol version '" + *version + "', expected \"" +
                    std::string(kPluginProtocolVersion) + "\"");
  }
  if (!dir || !entry || !version) return std::nullopt;
  ref.path = *dir;
  ref.entry = *entry;
  ref.protocol_version = *version;
  return ref;
}

std::optional<ServiceDescriptor> ReadNsd(SchemaReader& reader,
                                         const YAML::Node& root) {
  if (!reader.ExpectMap(root, "/",
                        {"descriptor_version", "name", "vendor", "version",
                         "vnfs", "service_connection_points", "virtual_links",
                         "forwarding_graphs", "control_functions",
                         "monitoring"})) {
    return std::nullopt;
  }
  ServiceDescriptor nsd;
  ReadHeader(reader, root, nsd.descriptor_version, nsd.name, nsd.vendor,
             nsd.version);

  std::set<std::string> vnf_ids;
  reader.Sequence(
      root, "vnfs", "/", true,
      [&](const YAML::Node& node, const std::string& path) {
        if (!reader.ExpectMap(node, path, {"vnf_id", "vnfd", "flavor"})) {
          return;
        }
        VnfEntry entry;
        auto id = reader.Identifier(node, "vnf_id", path, true);
        if (id && *id == kServiceOwner) {
          reader.Fail(Field(path, "vnf_id"), "'ns' is reserved");
          id.reset();
        }
        if (id && !vnf_ids.insert(*id).second) {
          reader.Fail(Field(path, "vnf_id"), "duplicate vnf_id '" + *id + "'");
        }
        YAML::Node ref = reader.Child(node, "vnfd", path, true);
        std::optional<std::string> ref_name, ref_version;
        std::string ref_path = Field(path, "vnfd");
        if (ref.IsDefined() &&
            reader.ExpectMap(ref, ref_path, {"name", "version"})) {
          ref_name = reader.Identifier(ref, "name", ref_path, true);
          ref_version = reader.String(ref, "version", ref_path, true);
        }
        auto flavor = reader.Identifier(node, "flavor", path, false);
        if (!id || !ref_name || !ref_version) return;
        entry.vnf_id = *id;
        entry.vnfd = VnfdRef{*ref_name, *ref_version};
        entry.flavor = flavor.value_or("");
        nsd.vnfs.push_back(entry);
      });

  ReadCpDecls(reader, root, "service_connection_points",
              nsd.service_connection_points);

  std::set<std::string> link_ids;
  // Links with well-formed endpoints, for path checks.
  std::vector<VirtualLink> joinable;
  reader.Sequence(
      root, "virtual_links", "/", false,
      [&](const YAML::Node& node, const std::string& path) {
        if (!reader.ExpectMap(node, path,
                              {"id", "endpoints", "bandwidth_mbps",
                               "max_latency_ms"})) {
          return;
        }
        VirtualLink link;
        auto id = reader.Identifier(node, "id", path, true);
        if (id && !link_ids.insert(*id).second) {
          reader.Fail(Field(path, "id"), "duplicate link id '" + *id + "'");
        }
        bool endpoints_ok = true;
        YAML::Node endpoints = reader.Child(node, "endpoints", path, true);
        std::string ep_path = Field(path, "endpoints");
        if (!endpoints.IsDefined()) {
          endpoints_ok = false;
        } else if (!endpoints.IsSequence()) {
          reader.Fail(ep_path, "expected a list");
          endpoints_ok = false;
        } else if (endpoints.size() != 2) {
          reader.Fail(ep_path, "a virtual link needs exactly two endpoints, got " +
                                   std::to_string(endpoints.size()));
          endpoints_ok = false;
        } else {
          for (std::size_t i = 0; i < 2; ++i) {
            auto ref = ReadCpRef(reader, endpoints[i], Elem(ep_path, i));
            if (!ref) {
              endpoints_ok = false;
            } else {
              link.endpoints.push_back(*ref);
            }
          }
          if (endpoints_ok && link.endpoints[0] == link.endpoints[1]) {
            reader.Fail(ep_path, "endpoints must be distinct");
            endpoints_ok = false;
          }
        }
        auto bandwidth = reader.Number(node, "bandwidth_mbps", path, true);
        if (bandwidth && *bandwidth <= 0) {
          reader.Fail(Field(path, "bandwidth_mbps"), "must be > 0");
          bandwidth.reset();
        }
        auto latency = reader.Number(node, "max_latency_ms", path, false);
        if (latency && *latency <= 0) {
          reader.Fail(Field(path, "max_latency_ms"), "must be > 0");
        }
        if (endpoints_ok) joinable.push_back(link);
        if (!id || !endpoints_ok || !bandwidth) return;
        link.id = *id;
        link.bandwidth_mbps = *bandwidth;
        link.max_latency_ms = latency;
        nsd.virtual_links.push_back(link);
      });

  std::set<std::string> graph_ids;
  reader.Sequence(
      root, "forwarding_graphs", "/", false,
      [&](const YAML::Node& node, const std::string& path) {
        if (!reader.ExpectMap(node, path, {"id", "path"})) return;
        ForwardingGraph graph;
        auto id = reader.Identifier(node, "id", path, true);
        if (id && !graph_ids.insert(*id).second) {
          reader.Fail(Field(path, "id"),
                      "duplicate forwarding graph id '" + *id + "'");
        }
        bool ok = true;
        std::size_t count = 0;
        reader.Sequence(node, "path", path, true,
                        [&](const YAML::Node& step, const std::string& where) {
                          ++count;
                          auto ref = ReadCpRef(reader, step, where);
                          if (!ref) {
                            ok = false;
                          } else {
                            graph.path.push_back(*ref);
                          }
                        });
        if (node["path"].IsSequence() && count < 2) {
          reader.Fail(Field(path, "path"), "a path needs at least two steps");
          ok = false;
        }
        if (!id || !ok || graph.path.size() < 2) return;
        graph.id = *id;
        nsd.forwarding_graphs.push_back(graph);
      });

  // Consecutive path steps must be joined by a link or stay inside one VNF.
  for (std::size_t g = 0; g < nsd.forwarding_graphs.size(); ++g) {
    const auto& graph = nsd.forwarding_graphs[g];
    for (std::size_t i = 0; i + 1 < graph.path.size(); ++i) {
      const CpRef& a = graph.path[i];
      const CpRef& b = graph.path[i + 1];
      if (a.owner == b.owner && !a.IsService()) continue;
      const bool joined =
          std::any_of(joinable.begin(), joinable.end(),
                      [&](const VirtualLink& l) { return l.Joins(a, b); });
      if (!joined) {
        reader.Fail(Elem(Field("/forwarding_graphs[" + std::to_string(g) + "]",
                               "path"),
                         i + 1),
                    "no virtual link joins " + a.ToString() + " and " +
                        b.ToString());
      }
    }
  }

  YAML::Node cf = reader.Child(root, "control_functions", "/", false);
  if (cf.IsDefined() &&
      reader.ExpectMap(cf, "/control_functions", {"nfvo", "vnfm"})) {
    YAML::Node nfvo = reader.Child(cf, "nfvo", "/control_functions", false);
    if (nfvo.IsDefined()) {
      if (auto fn = ReadControlFunction(reader, nfvo, "/control_functions.nfvo")) {
        nsd.control_functions.nfvo = *fn;
      }
    }
    YAML::Node vnfm = reader.Child(cf, "vnfm", "/control_functions", false);
    if (vnfm.IsDefined()) {
      const std::string where = "/control_functions.vnfm";
      if (!vnfm.IsMap()) {
        reader.Fail(where, "expected a mapping from vnf_id");
      } else {
        for (const auto& kv : vnfm) {
          std::string vnf_id = kv.first.Scalar();
          if (!vnf_ids.contains(vnf_id)) {
            reader.Fail(Field(where, vnf_id),
                        "unknown vnf_id '" + vnf_id + "'");
            continue;
          }
          if (auto fn = ReadControlFunction(reader, kv.second,
                                            Field(where, vnf_id))) {
            nsd.control_functions.vnfm[vnf_id] = *fn;
          }
        }
      }
    }
  }

  reader.Sequence(
      root, "monitoring", "/", false,
      [&](const YAML::Node& node, const std::string& path) {
        if (!reader.ExpectMap(node, path, {"metric", "vnf_id", "alarm"})) {
          return;
        }
        MonitoringSpec spec;
        auto metric = reader.String(node, "metric", path, true);
        if (metric) {
          auto parsed = ParseMetricKind(*metric);
          if (!parsed) {
            reader.Fail(Field(path, "metric"),
                        "expected throughput_mbps, packet_loss_ratio or "
                        "cpu_utilization");
            metric.reset();
          } else {
            spec.metric = *parsed;
          }
        }
        auto vnf_id = reader.Identifier(node, "vnf_id", path, true);
        if (vnf_id && !vnf_ids.contains(*vnf_id)) {
          reader.Fail(Field(path, "vnf_id"),
                      "unknown vnf_id '" + *vnf_id + "'");
        }
        YAML::Node alarm = reader.Child(node, "alarm", path, false);
        std::string alarm_path = Field(path, "alarm");
        if (alarm.IsDefined() &&
            reader.ExpectMap(alarm, alarm_path,
                             {"comparator", "threshold", "duration_s"})) {
          AlarmSpec spec_alarm;
          auto cmp = reader.String(alarm, "comparator", alarm_path, true);
          auto threshold = reader.Number(alarm, "threshold", alarm_path, true);
          auto duration = reader.Integer(alarm, "duration_s", alarm_path, true);
          if (cmp && !ParseComparator(*cmp)) {
            reader.Fail(Field(alarm_path, "comparator"), "expected '>' or '<'");
            cmp.reset();
          }
          if (duration && *duration < 1) {
            reader.Fail(Field(alarm_path, "duration_s"), "must be >= 1");
            duration.reset();
          }
          if (cmp && threshold && duration) {
            spec_alarm.comparator = *ParseComparator(*cmp);
            spec_alarm.threshold = *threshold;
            spec_alarm.duration_s = *duration;
            spec.alarm = spec_alarm;
          }
        }
        if (!metric || !vnf_id) return;
        spec.vnf_id = *vnf_id;
        nsd.monitoring.push_back(spec);
      });
  return nsd;
}

template <typename T, typename ReadFn>
T ParseOrThrow(std::string_view text, ReadFn read) {
  YAML::Node root;
  try {
    root = LoadYaml(text);
  } catch (const SyntaxError& e) {
    throw Error(ErrorCode::kParse, "malformed YAML", {e.detail});
  }
  SchemaReader reader;
  std::optional<T> value = read(reader, root);
  if (!reader.violations().empty() || !value) {
    if (reader.violations().empty()) reader.Fail("/", "invalid document");
    throw Error(ErrorCode::kSchema, "descriptor violates the schema",
                std::move(reader.violations()));
  }
  return *std::move(value);
}

template <typename ReadFn>
std::vector<ErrorDetail> CheckSchema(std::string_view text, ReadFn read) {
  YAML::Node root;
  try {
    root = LoadYaml(text);
  } catch (const SyntaxError& e) {
    return {ErrorDetail{"/", "malformed YAML at " + e.detail.location + ": " +
                                 e.detail.message}};
  }
  SchemaReader reader;
  auto value = read(reader, root);
  if (!value && reader.violations().empty()) reader.Fail("/", "invalid document");
  return std::move(reader.violations());
}

}  // namespace

ServiceDescriptor ParseServiceDescriptor(std::string_view text) {
  return ParseOrThrow<ServiceDescriptor>(text, ReadNsd);
}

VnfDescriptor ParseVnfDescriptor(std::string_view text) {
  return ParseOrThrow<VnfDescriptor>(text, ReadVnfd);
}

std::vector<ErrorDetail> CheckServiceDescriptorSchema(std::string_view text) {
  return CheckSchema(text, ReadNsd);
}

std::vector<ErrorDetail> CheckVnfDescriptorSchema(std::string_view text) {
  return CheckSchema(text, ReadVnfd);
}

}  // namespace svcsdk
