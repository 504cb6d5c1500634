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

#include "svcsdk/descriptor/serializer.h"

#include <yaml-cpp/yaml.h>

#include <charconv>

#include "svcsdk/common/util.h"

namespace svcsdk {
namespace {

bool LooksNumeric(const std::string& text) {
  double value = 0;
  auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && end == text.data() + text.size();
}

bool IsYamlKeyword(const std::string& text) {
  static const char* const kWords[] = {"true", "false", "yes",  "no",
                                       "on",   "off",   "null", "~",
                                       "True", "False", "Null", "NULL",
                                       "TRUE", "FALSE", "Yes",  "No"};
  for (const char* word : kWords) {
    if (text == word) return true;
  }
  return false;
}

void Str(YAML::Emitter& out, const std::string& text) {
  if (IsIdentifier(text) && !LooksNumeric(text) && !IsYamlKeyword(text)) {
    out << text;
  } else {
    out << YAML::DoubleQuoted << text;
  }
}

void Num(YAML::Emitter& out, double value) { out << FormatNumber(value); }

void Header(YAML::Emitter& out, const std::string& descriptor_version,
            const std::string& name, const std::string& vendor,
            const std::string& version) {
  out << YAML::Key << "descriptor_version" << YAML::Value;
  Str(out, descriptor_version);
  out << YAML::Key << "name" << YAML::Value;
  Str(out, name);
  out << YAML::Key << "vendor" << YAML::Value;
  Str(out, vendor);
  out << YAML::Key << "version" << YAML::Value;
  Str(out, version);
}

void CpDecls(YAML::Emitter& out, const char* key,
             const std::vector<ConnectionPointDecl>& decls) {
  out << YAML::Key << key << YAML::Value << YAML::BeginSeq;
  for (const auto& decl : decls) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value;
    Str(out, decl.id);
    out << YAML::Key << "direction" << YAML::Value
        << std::string(DirectionName(decl.direction));
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
}

void RefList(YAML::Emitter& out, const std::vector<CpRef>& refs) {
  out << YAML::Flow << YAML::BeginSeq;
  for (const auto& ref : refs) Str(out, ref.ToString());
  out << YAML::EndSeq;
}

void Function(YAML::Emitter& out, const ControlFunction& fn) {
  out << YAML::BeginMap;
  if (const auto* builtin = std::get_if<BuiltinPolicy>(&fn)) {
    out << YAML::Key << "builtin" << YAML::Value;
    Str(out, builtin->name);
    if (!builtin->parameters.empty()) {
      out << YAML::Key << "parameters" << YAML::Value << YAML::BeginMap;
      for (const auto& [key, value] : builtin->parameters) {
        out << YAML::Key;
        Str(out, key);
        out << YAML::Value;
        Num(out, value);
      }
      out << YAML::EndMap;
    }
  } else {
    const auto& plugin = std::get<PluginRef>(fn);
    out << YAML::Key << "plugin" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "path" << YAML::Value;
    Str(out, plugin.path);
    out << YAML::Key << "entry" << YAML::Value;
    Str(out, plugin.entry);
    out << YAML::Key << "protocol_version" << YAML::Value;
    Str(out, plugin.protocol_version);
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
}

std::string Finish(YAML::Emitter& out) {
  std::string text = out.c_str();
  text.push_back('\n');
  return text;
}

}  // namespace

std::string SerializeDescriptor(const ServiceDescriptor& nsd) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  Header(out, nsd.descriptor_version, nsd.name, nsd.vendor, nsd.version);

  out << YAML::Key << "vnfs" << YAML::Value << YAML::BeginSeq;
  for (const auto& vnf : nsd.vnfs) {
    out << YAML::BeginMap;
    out << YAML::Key << "vnf_id" << YAML::Value;
    Str(out, vnf.vnf_id);
    out << YAML::Key << "vnfd" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value;
    Str(out, vnf.vnfd.name);
    out << YAML::Key << "version" << YAML::Value;
    Str(out, vnf.vnfd.version);
    out << YAML::EndMap;
    if (!vnf.flavor.empty()) {
      out << YAML::Key << "flavor" << YAML::Value;
      Str(out, vnf.flavor);
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  CpDecls(out, "service_connection_points", nsd.service_connection_points);

  out << YAML::Key << "virtual_links" << YAML::Value << YAML::BeginSeq;
  for (const auto& link : nsd.virtual_links) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value;
    Str(out, link.id);
    out << YAML::Key << "endpoints" << YAML::Value;
    RefList(out, link.endpoints);
    out << YAML::Key << "bandwidth_mbps" << YAML::Value;
    Num(out, link.bandwidth_mbps);
    if (link.max_latency_ms) {
      out << YAML::Key << "max_latency_ms" << YAML::Value;
      Num(out, *link.max_latency_ms);
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "forwarding_graphs" << YAML::Value << YAML::BeginSeq;
  for (const auto& graph : nsd.forwarding_graphs) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value;
    Str(out, graph.id);
    out << YAML::Key << "path" << YAML::Value;
    RefList(out, graph.path);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "control_functions" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "nfvo" << YAML::Value;
  Function(out, nsd.control_functions.nfvo);
  if (!nsd.control_functions.vnfm.empty()) {
    out << YAML::Key << "vnfm" << YAML::Value << YAML::BeginMap;
    for (const auto& [vnf_id, fn] : nsd.control_functions.vnfm) {
      out << YAML::Key;
      Str(out, vnf_id);
      out << YAML::Value;
      Function(out, fn);
    }
    out << YAML::EndMap;
  }
  out << YAML::EndMap;

  out << YAML::Key << "monitoring" << YAML::Value << YAML::BeginSeq;
  for (const auto& spec : nsd.monitoring) {
    out << YAML::BeginMap;
    out << YAML::Key << "metric" << YAML::Value
        << std::string(MetricKindName(spec.metric));
    out << YAML::Key << "vnf_id" << YAML::Value;
    Str(out, spec.vnf_id);
    if (spec.alarm) {
      out << YAML::Key << "alarm" << YAML::Value << YAML::BeginMap;
      out << YAML::Key << "comparator" << YAML::Value << YAML::DoubleQuoted
          << std::string(ComparatorSymbol(spec.alarm->comparator));
      out << YAML::Key << "threshold" << YAML::Value;
      Num(out, spec.alarm->threshold);
      out << YAML::Key << "duration_s" << YAML::Value
          << std::to_string(spec.alarm->duration_s);
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::EndMap;
  return Finish(out);
}

std::string SerializeDescriptor(const VnfDescriptor& vnfd) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  Header(out, vnfd.descriptor_version, vnfd.name, vnfd.vendor, vnfd.version);

  out << YAML::Key << "image" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "uri" << YAML::Value << YAML::DoubleQuoted
      << vnfd.image.uri;
  out << YAML::Key << "sha256" << YAML::Value << YAML::DoubleQuoted
      << vnfd.image.sha256;
  out << YAML::EndMap;

  CpDecls(out, "connection_points", vnfd.connection_points);

  out << YAML::Key << "resource_flavors" << YAML::Value << YAML::BeginSeq;
  for (const auto& flavor : vnfd.resource_flavors) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value;
    Str(out, flavor.name);
    out << YAML::Key << "cpu_cores" << YAML::Value
        << std::to_string(flavor.cpu_cores);
    out << YAML::Key << "memory_mb" << YAML::Value
        << std::to_string(flavor.memory_mb);
    out << YAML::Key << "storage_gb" << YAML::Value
        << std::to_string(flavor.storage_gb);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "capabilities" << YAML::Value << YAML::Flow
      << YAML::BeginSeq;
  for (const auto& tag : vnfd.capabilities) {
    out << YAML::DoubleQuoted << tag;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "performance" << YAML::Value << YAML::BeginSeq;
  for (const auto& entry : vnfd.performance) {
    out << YAML::BeginMap;
    out << YAML::Key << "flavor" << YAML::Value;
    Str(out, entry.flavor);
    out << YAML::Key << "max_throughput_mbps" << YAML::Value;
    Num(out, entry.max_throughput_mbps);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::EndMap;
  return Finish(out);
}

}  // namespace svcsdk
