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

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "svcsdk/catalogue/catalogue.h"
#include "svcsdk/catalogue/templates.h"
#include "svcsdk/cli/cli.h"
#include "svcsdk/cli/graph_export.h"
#include "svcsdk/cli/push.h"
#include "svcsdk/common/util.h"
#include "svcsdk/descriptor/parser.h"
#include "svcsdk/descriptor/serializer.h"
#include "svcsdk/packager/keys.h"
#include "svcsdk/packager/package.h"
#include "svcsdk/sandbox/emulator.h"
#include "svcsdk/sandbox/event_log.h"
#include "svcsdk/telemetry/alarms.h"
#include "svcsdk/telemetry/profile.h"
#include "svcsdk/validator/validator.h"

namespace svcsdk {
namespace fs = std::filesystem;
using nlohmann::json;

ExitStatus ExitStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kValidationGate:
    case ErrorCode::kRejectedUnvalidated:
    case ErrorCode::kUnresolvedReference:
    case ErrorCode::kFlavorMismatch:
    case ErrorCode::kUnknownTemplate:
    case ErrorCode::kTargetNotFound:
    case ErrorCode::kDuplicateEntry:
    case ErrorCode::kInsufficientData:
    case ErrorCode::kInfeasible:
    case ErrorCode::kNoFeasiblePlacement:
      return kExitValidation;
    case ErrorCode::kSigning:
    case ErrorCode::kMalformedArchive:
    case ErrorCode::kPathTraversal:
      return kExitSignature;
    case ErrorCode::kPlugin:
      return kExitAborted;
    default:
      return kExitIo;
  }
}

namespace {

constexpr std::string_view kTokenVariable = "SVCSDK_TOKEN";

struct Io {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
};

struct SourceOptions {
  std::string nsd;
  std::vector<std::string> vnfd_dirs;
  std::string catalogue;
};

void AddSourceOptions(CLI::App* cmd, SourceOptions* options) {
  cmd->add_option("--vnfd-dir", options->vnfd_dirs,
                  "Extra directory of VNFD YAML files")
      ->check(CLI::ExistingDirectory);
  cmd->add_option("--catalogue", options->catalogue,
                  "Catalogue root (default $SVCSDK_CATALOGUE or "
                  "~/.svcsdk/catalogue)");
}

fs::path CatalogueRoot(const std::string& option) {
  return option.empty() ? Catalogue::DefaultRoot() : fs::path(option);
}

// VNFDs missing from the local files resolve through the catalogue when one
// exists.
VnfdLookup CatalogueFallback(const std::string& option) {
  const fs::path root = CatalogueRoot(option);
  if (!fs::exists(root)) return nullptr;
  return Catalogue(root).VnfdResolver();
}

std::vector<fs::path> YamlFiles(const fs::path& dir, bool vnfd_prefix_only) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    const bool yaml = name.ends_with(".yaml") || name.ends_with(".yml");
    if (!yaml) continue;
    if (vnfd_prefix_only && !name.starts_with("vnfd-")) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

// NSD plus sibling vnfd-*.yaml files and any --vnfd-dir contents; plugin
// paths resolve against the NSD's directory.
ServiceSources LoadSources(const SourceOptions& options) {
  const fs::path nsd = options.nsd;
  ServiceSources sources;
  sources.nsd_location = nsd.filename().string();
  sources.nsd_text = ReadFile(nsd);
  const fs::path dir = nsd.has_parent_path() ? nsd.parent_path() : fs::path(".");
  for (const auto& file : YamlFiles(dir, true)) {
    if (fs::equivalent(file, nsd)) continue;
    sources.vnfd_texts.emplace_back(file.filename().string(), ReadFile(file));
  }
  for (const auto& extra : options.vnfd_dirs) {
    for (const auto& file : YamlFiles(extra, false)) {
      sources.vnfd_texts.emplace_back(file.string(), ReadFile(file));
    }
  }
  sources.plugin_root = dir;
  return sources;
}

// Local VNFD files first, then the fallback.
VnfdLookup SourcesLookup(const ServiceSources& sources,
                         const VnfdLookup& fallback) {
  std::map<VnfdRef, VnfDescriptor> local;
  for (const auto& [location, text] : sources.vnfd_texts) {
    try {
      VnfDescriptor vnfd = ParseVnfDescriptor(text);
      local.emplace(VnfdRef{vnfd.name, vnfd.version}, std::move(vnfd));
    } catch (const Error&) {
      continue;
    }
  }
  return [local = std::move(local),
          fallback](const VnfdRef& ref) -> std::optional<VnfDescriptor> {
    auto it = local.find(ref);
    if (it != local.end()) return it->second;
    if (fallback) return fallback(ref);
    return std::nullopt;
  };
}

void PrintReport(const Io& io, const ValidationReport& report,
                 std::ostream& text_stream) {
  if (io.json) {
    io.out << report.ToJson() << "\n";
    return;
  }
  text_stream << report.ToTable();
}

bool HasIntegrityFailure(const ValidationReport& report) {
  for (const auto& issue : report.issues()) {
    switch (issue.code) {
      case IssueCode::kBadSignature:
      case IssueCode::kUnknownSigner:
      case IssueCode::kDigestMismatch:
      case IssueCode::kMalformedArchive:
        return true;
      default:
        break;
    }
  }
  return false;
}

int VerificationStatus(const ValidationReport& report) {
  if (report.passed()) return kExitOk;
  return HasIntegrityFailure(report) ? kExitSignature : kExitValidation;
}

std::vector<PublicKey> LoadTrust(const fs::path& trust) {
  if (!fs::exists(trust)) {
    throw Error(ErrorCode::kIo, "trust store " + trust.string() +
                                    " does not exist");
  }
  if (!fs::is_directory(trust)) return {ReadPublicKey(trust)};
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(trust)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pub") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<PublicKey> keys;
  for (const auto& file : files) keys.push_back(ReadPublicKey(file));
  return keys;
}

bool IsGzip(const std::string& bytes) {
  return bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
         static_cast<unsigned char>(bytes[1]) == 0x8b;
}

bool LooksLikeEventLog(const fs::path& path, std::string_view text) {
  if (path.extension() == ".jsonl") return true;
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string_view::npos && text[first] == '{';
}

MetricSeries LoadMetrics(const fs::path& path) {
  const std::string text = ReadFile(path);
  if (LooksLikeEventLog(path, text)) {
    return MetricsFromEventLog(EventLog::Parse(text));
  }
  return IngestMetrics(text);
}

json ProfileJson(const PerformanceProfile& p) {
  json points = json::array();
  for (const auto& point : p.points) {
    points.push_back({{"cpu_cores", point.cpu_cores},
                      {"saturation_mbps", point.saturation_mbps}});
  }
  json result = {{"vnf", p.vnf},
                 {"a", p.a},
                 {"b", p.b},
                 {"plateau", p.plateau ? json(*p.plateau) : json(nullptr)},
                 {"r_squared", p.r_squared},
                 {"rse", p.rse},
                 {"verdict", std::string(LinearityName(p.verdict))},
                 {"linear_points", p.linear_points},
                 {"points", points}};
  return result;
}

std::string Mbps(double value) { return FormatNumber(value) + " Mbit/s"; }

AlarmRule ParseAlarmRule(const std::string& text) {
  static const std::regex pattern(
      R"(^\s*([a-z_]+)\(([^)]+)\)\s*([<>])\s*([-+0-9.eE]+)\s*(?:for\s+([0-9]+)s?)?\s*$)");
  std::smatch match;
  if (!std::regex_match(text, match, pattern)) {
    throw Error(ErrorCode::kInvalidArgument,
                "alarm rule '" + text +
                    "' must look like 'packet_loss_ratio(router) > 0.01 for 5s'");
  }
  AlarmRule rule;
  auto metric = ParseMetricKind(match[1].str());
  if (!metric) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown metric '" + match[1].str() + "'");
  }
  rule.metric = *metric;
  rule.vnf_id = match[2].str();
  rule.comparator = *ParseComparator(match[3].str());
  rule.threshold = std::stod(match[4].str());
  rule.duration_s = match[5].matched ? std::stoll(match[5].str()) : 1;
  if (rule.duration_s < 1) {
    throw Error(ErrorCode::kInvalidArgument, "alarm duration must be >= 1s");
  }
  return rule;
}

EntryKind DetectKind(const std::string& text) {
  YAML::Node node = YAML::Load(text);
  if (node.IsMap() && node["template"]) return EntryKind::kTemplate;
  if (node.IsMap() && (node["vnfs"] || node["forwarding_graphs"])) {
    return EntryKind::kNsd;
  }
  return EntryKind::kVnfd;
}


int CmdValidate(const Io& io, const SourceOptions& options) {
  const ServiceSources sources = LoadSources(options);
  // Malformed YAML is a parse failure; schema violations go to the report.
  try {
    ParseServiceDescriptor(ReadFile(options.nsd));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
  }
  const ValidationReport report =
      ValidateSources(sources, CatalogueFallback(options.catalogue));
  PrintReport(io, report, io.out);
  return report.passed() ? kExitOk : kExitValidation;
}


int CmdKeygen(const Io& io, const std::string& prefix) {
  const KeyPair pair = GenerateKeyPair();
  const fs::path secret = prefix + ".key";
  const fs::path pub = prefix + ".pub";
  WriteSecretKey(secret, pair);
  WritePublicKey(pub, pair.public_key);
  if (io.json) {
    io.out << json{{"key_id", KeyId(pair.public_key)},
                   {"secret_key", secret.string()},
                   {"public_key", pub.string()}}
                  .dump()
           << "\n";
  } else {
    io.out << "key id " << KeyId(pair.public_key) << "\n"
           << "secret key " << secret.string() << "\n"
           << "public key " << pub.string() << "\n";
  }
  return kExitOk;
}

int CmdBuild(const Io& io, const SourceOptions& options,
             const std::string& key_path, const std::string& output,
             std::optional<std::int64_t> created_at) {
  const ServiceSources sources = LoadSources(options);
  const VnfdLookup fallback = CatalogueFallback(options.catalogue);
  const ValidationReport report = ValidateSources(sources, fallback);
  if (!report.passed()) {
    PrintReport(io, report, io.err);
    io.err << "error: validation failed, package not built\n";
    return kExitValidation;
  }
  const ResolvedService resolved = ResolveSources(sources, fallback);
  const KeyPair key = ReadSecretKey(key_path);
  BuildOptions build;
  build.created_at = created_at;
  const std::string bytes =
      BuildPackage(resolved, sources.plugin_root, key, build);
  const fs::path path =
      output.empty() ? fs::path(resolved.service.name + "-" +
                                resolved.service.version +
                                std::string(kPackageExtension))
                     : fs::path(output);
  WriteFile(path, bytes);
  const std::string digest = Sha256Hex(bytes);
  if (io.json) {
    io.out << json{{"package", path.string()},
                   {"sha256", digest},
                   {"size", bytes.size()},
                   {"signer_key_id", KeyId(key.public_key)}}
                  .dump()
           << "\n";
  } else {
    io.out << "built " << path.string() << " (" << bytes.size()
           << " bytes, sha256 " << digest << ", signer "
           << KeyId(key.public_key) << ")\n";
  }
  return kExitOk;
}

int CmdVerify(const Io& io, const std::string& package,
              const std::string& trust, const std::string& catalogue) {
  const std::string bytes = ReadFile(package);
  const ValidationReport report = VerifyPackage(
      bytes, LoadTrust(trust), CatalogueFallback(catalogue));
  PrintReport(io, report, io.out);
  if (!io.json) io.out << (report.passed() ? "verified\n" : "rejected\n");
  return VerificationStatus(report);
}


int CmdCatalogueAdd(const Io& io, const std::string& file,
                    const std::string& kind_text, const std::string& name,
                    const std::string& version, const SourceOptions& options) {
  const std::string text = ReadFile(file);
  EntryKind kind;
  if (kind_text.empty()) {
    kind = DetectKind(text);
  } else if (auto parsed = ParseEntryKind(kind_text)) {
    kind = *parsed;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown entry kind '" + kind_text + "'");
  }
  Catalogue catalogue(CatalogueRoot(options.catalogue));
  CatalogueEntry entry;
  switch (kind) {
    case EntryKind::kVnfd: {
      const ValidationReport report = ValidateSchema(text, DescriptorKind::kVnfd);
      if (!report.passed()) {
        PrintReport(io, report, io.err);
        io.err << "error: VNFD failed validation, not added\n";
        return kExitValidation;
      }
      const VnfDescriptor vnfd = ParseVnfDescriptor(text);
      entry = catalogue.Add(kind, vnfd.name, vnfd.version, text, report);
      break;
    }
    case EntryKind::kNsd: {
      SourceOptions nsd_options = options;
      nsd_options.nsd = file;
      const ServiceSources sources = LoadSources(nsd_options);
      const ValidationReport report =
          ValidateSources(sources, catalogue.VnfdResolver());
      if (!report.passed()) {
        PrintReport(io, report, io.err);
        io.err << "error: NSD failed validation, not added\n";
        return kExitValidation;
      }
      const ServiceDescriptor nsd = ParseServiceDescriptor(text);
      entry = catalogue.Add(kind, nsd.name, nsd.version, text, report);
      break;
    }
    case EntryKind::kTemplate: {
      ParseTemplate(text);
      if (name.empty() || version.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "templates need --name and --version");
      }
      entry = catalogue.Add(kind, name, version, text, ValidationReport{});
      break;
    }
  }
  if (io.json) {
    io.out << json{{"kind", std::string(EntryKindName(entry.kind))},
                   {"name", entry.name},
                   {"version", entry.version},
                   {"sha256", entry.sha256},
                   {"validated_at", entry.validated_at}}
                  .dump()
           << "\n";
  } else {
    io.out << "added " << EntryKindName(entry.kind) << " " << entry.name << " "
           << entry.version << " (sha256 " << entry.sha256 << ")\n";
  }
  return kExitOk;
}

int CmdCatalogueGet(const Io& io, const std::string& kind_text,
                    const std::string& name, const std::string& version,
                    const std::string& root) {
  auto kind = ParseEntryKind(kind_text);
  if (!kind) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown entry kind '" + kind_text + "'");
  }
  io.out << Catalogue(CatalogueRoot(root)).Lookup(*kind, name, version);
  return kExitOk;
}

int CmdCatalogueList(const Io& io, const std::string& root) {
  const fs::path path = CatalogueRoot(root);
  std::vector<CatalogueEntry> entries;
  if (fs::exists(path)) entries = Catalogue(path).List();
  if (io.json) {
    json list = json::array();
    for (const auto& e : entries) {
      list.push_back({{"kind", std::string(EntryKindName(e.kind))},
                      {"name", e.name},
                      {"version", e.version},
                      {"sha256", e.sha256},
                      {"validated_at", e.validated_at}});
    }
    io.out << list.dump() << "\n";
    return kExitOk;
  }
  io.out << std::left << std::setw(10) << "KIND" << std::setw(24) << "NAME"
         << std::setw(10) << "VERSION" << std::setw(14) << "SHA256"
         << "VALIDATED_AT\n";
  for (const auto& e : entries) {
    io.out << std::left << std::setw(10) << EntryKindName(e.kind)
           << std::setw(24) << e.name << std::setw(10) << e.version
           << std::setw(14) << e.sha256.substr(0, 12) << e.validated_at
           << "\n";
  }
  return kExitOk;
}


ScalingTemplate LoadTemplate(const std::string& spec,
                             const std::string& catalogue) {
  if (fs::exists(spec)) return ParseTemplate(ReadFile(spec));
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::kIo, "template " + spec +
                                    " is neither a file nor name:version");
  }
  return Catalogue(CatalogueRoot(catalogue))
      .LookupTemplate(spec.substr(0, colon), spec.substr(colon + 1));
}

int CmdTemplateExpand(const Io& io, const std::string& template_spec,
                      const SourceOptions& options, std::optional<int> instances,
                      const std::string& output) {
  ScalingTemplate scaling = LoadTemplate(template_spec, options.catalogue);
  if (instances) scaling.instance_count = *instances;
  const ServiceSources sources = LoadSources(options);
  const VnfdLookup fallback = CatalogueFallback(options.catalogue);
  const ValidationReport before = ValidateSources(sources, fallback);
  if (!before.passed()) {
    PrintReport(io, before, io.err);
    io.err << "error: base service failed validation\n";
    return kExitValidation;
  }
  const ResolvedService resolved = ResolveSources(sources, fallback);
  const ResolvedService expanded =
      InstantiateTemplate(scaling, resolved, SourcesLookup(sources, fallback));
  const ValidationReport report = ValidateAll(expanded, sources.plugin_root);
  const std::string yaml = SerializeDescriptor(expanded.service);
  if (!output.empty()) WriteFile(output, yaml);
  if (io.json) {
    io.out << json{{"template", std::string(TemplateKindName(scaling.kind))},
                   {"target", scaling.target_vnf},
                   {"instances", scaling.instance_count},
                   {"vnfs", expanded.service.vnfs.size()},
                   {"virtual_links", expanded.service.virtual_links.size()},
                   {"passed", report.passed()},
                   {"issues", json::parse(report.ToJson())},
                   {"output", output}}
                  .dump()
           << "\n";
  } else {
    if (output.empty()) {
      io.out << yaml;
    } else {
      io.out << "expanded " << scaling.target_vnf << " x"
             << scaling.instance_count << " ("
             << TemplateKindName(scaling.kind) << ") into " << output << "\n";
    }
    PrintReport(io, report, output.empty() ? io.err : io.out);
  }
  return report.passed() ? kExitOk : kExitValidation;
}


int CmdPush(const Io& io, const std::string& package,
            const std::string& target_text, const std::string& trust,
            std::string token, const std::string& catalogue) {
  const std::string bytes = ReadFile(package);
  const ValidationReport report =
      VerifyPackage(bytes, LoadTrust(trust), CatalogueFallback(catalogue));
  if (!report.passed()) {
    PrintReport(io, report, io.err);
    io.err << "error: package failed local verification, not pushed\n";
    return VerificationStatus(report);
  }
  if (token.empty()) {
    if (const char* env = std::getenv(std::string(kTokenVariable).c_str())) {
      token = env;
    }
  }
  const PushTarget target = PushTarget::Parse(target_text, token);
  const PushResult result = Push(bytes, target);
  if (io.json) {
    json summary = {{"accepted", result.accepted},
                    {"package_id", result.package_id},
                    {"message", result.message}};
    if (target.scheme == PushTarget::Scheme::kSandbox) {
      summary["workspace"] = result.workspace.string();
    } else {
      summary["http_status"] = result.http_status;
    }
    io.out << summary.dump() << "\n";
  } else if (target.scheme == PushTarget::Scheme::kSandbox) {
    io.out << "workspace " << result.workspace.string() << "\n"
           << result.message << "\n";
  } else if (result.accepted) {
    io.out << "package_id " << result.package_id << "\n";
  } else {
    io.err << "error: push " << result.message << "\n";
  }
  if (target.scheme == PushTarget::Scheme::kSandbox) {
    return result.accepted ? kExitOk : kExitValidation;
  }
  return result.accepted ? kExitOk : kExitPushRejected;
}


struct EmulateOptions {
  SourceOptions sources;
  std::string infra;
  std::string trace;
  std::string out;
  std::string metrics_out;
  std::string policy;
  std::int64_t decision_interval = 5;
  std::int64_t delay = 3;
  bool strict = false;
  std::uint64_t seed = 0;
  std::vector<std::string> profiles;
  std::string trust;
};

int CmdEmulate(const Io& io, const EmulateOptions& options) {
  const VnfdLookup fallback = CatalogueFallback(options.sources.catalogue);
  std::optional<TempDir> unpacked;
  ServiceSources sources;
  const std::string input = ReadFile(options.sources.nsd);
  if (IsGzip(input)) {
    if (options.trust.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "emulating a package needs --trust");
    }
    const ValidationReport verified =
        VerifyPackage(input, LoadTrust(options.trust), fallback);
    if (!verified.passed()) {
      PrintReport(io, verified, io.err);
      return VerificationStatus(verified);
    }
    unpacked.emplace("svcsdk-emulate");
    Unpack(input, unpacked->path());
    sources = LoadPackageTree(unpacked->path());
  } else {
    sources = LoadSources(options.sources);
  }
  const ValidationReport report = ValidateSources(sources, fallback);
  if (!report.passed()) {
    PrintReport(io, report, io.err);
    io.err << "error: service failed validation, not emulated\n";
    return kExitValidation;
  }
  const ResolvedService resolved = ResolveSources(sources, fallback);
  const InfrastructureModel infra = LoadInfrastructure(ReadFile(options.infra));
  const TrafficTrace trace = ParseTrace(ReadFile(options.trace));

  EmulationConfig config;
  config.decision_interval = options.decision_interval;
  config.instantiation_delay = options.delay;
  config.strict = options.strict;
  config.seed = options.seed;
  if (!options.policy.empty()) config.policy = options.policy;
  config.plugin_root = sources.plugin_root;
  for (const auto& file : options.profiles) {
    PerformanceProfile profile = ParseProfile(ReadFile(file));
    config.profiles[profile.vnf] = std::move(profile);
  }
  const EmulationResult result = RunEmulation(resolved, infra, trace, config);
  if (!options.out.empty()) WriteFile(options.out, result.log.ToJsonLines());
  if (!options.metrics_out.empty()) {
    WriteFile(options.metrics_out, FormatMetricsCsv(result.state.metrics));
  }

  if (io.json) {
    json applied = json::array();
    for (const auto& a : result.applied) {
      json entry = {{"vnf_id", a.vnf_id},
                    {"issued_tick", a.issued_tick},
                    {"effective_tick", a.effective_tick}};
      if (a.target_instances) entry["target_instances"] = *a.target_instances;
      if (a.target_flavor) entry["target_flavor"] = *a.target_flavor;
      applied.push_back(std::move(entry));
    }
    json summary = {{"ticks", result.ticks_run},
                    {"scale_requests", result.requested.size()},
                    {"scale_applied", applied},
                    {"max_packet_loss_ratio", result.max_loss},
                    {"aborted", result.aborted()},
                    {"abort_reason", result.abort_reason
                                         ? json(*result.abort_reason)
                                         : json(nullptr)},
                    {"abort_message", result.abort_message},
                    {"events", options.out}};
    io.out << summary.dump() << "\n";
  } else {
    io.out << "ticks " << result.ticks_run << "\n"
           << "scale requests " << result.requested.size() << "\n"
           << "scale events applied " << result.applied.size() << "\n";
    for (const auto& a : result.applied) {
      io.out << "  tick " << a.effective_tick << ": " << a.vnf_id << " -> ";
      if (a.target_instances) {
        io.out << *a.target_instances << " instance(s)";
      } else {
        io.out << "flavor " << *a.target_flavor;
      }
      io.out << "\n";
    }
    io.out << "max packet loss " << FormatNumber(result.max_loss) << "\n";
    if (result.aborted()) {
      io.out << "aborted " << *result.abort_reason << ": "
             << result.abort_message << "\n";
    }
    if (!options.out.empty()) io.out << "events " << options.out << "\n";
  }
  if (!result.placement_report.issues().empty() && !io.json) {
    io.err << result.placement_report.ToTable();
  }
  if (!result.aborted()) return kExitOk;
  return *result.abort_reason == kAbortPlacementRejected ? kExitValidation
                                                          : kExitAborted;
}


int CmdProfileFit(const Io& io, const std::string& input, std::string vnf,
                  const std::string& output) {
  const MetricSeries series = LoadMetrics(input);
  if (vnf.empty()) {
    std::set<std::string> ids;
    for (const auto& r : series) ids.insert(r.vnf_id);
    if (ids.size() != 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "metrics cover " + std::to_string(ids.size()) +
                      " VNFs; choose one with --vnf");
    }
    vnf = *ids.begin();
  }
  const PerformanceProfile profile = FitProfile(series, vnf);
  const std::string yaml = SerializeProfile(profile);
  if (!output.empty()) WriteFile(output, yaml);
  if (io.json) {
    io.out << ProfileJson(profile).dump() << "\n";
  } else if (output.empty()) {
    io.out << yaml;
  } else {
    io.out << "profile " << profile.vnf << ": a=" << FormatNumber(profile.a)
           << " b=" << FormatNumber(profile.b) << " L="
           << (profile.plateau ? FormatNumber(*profile.plateau) : "none")
           << " r2=" << FormatNumber(profile.r_squared) << " verdict "
           << LinearityName(profile.verdict) << "\n"
           << "wrote " << output << "\n";
  }
  return kExitOk;
}

struct PredictOptions {
  std::string profile;
  int instances = 1;
  double cores = 1;
  std::string template_name = "load-balancer";
  std::optional<double> balancer_cap;
  std::optional<double> hub_cap;
  std::optional<double> offered;
};

int CmdProfilePredict(const Io& io, const PredictOptions& options) {
  const PerformanceProfile profile = ParseProfile(ReadFile(options.profile));
  ScaledTopologyQuery query;
  query.kind = TemplateKindFromName(options.template_name);
  query.instances = options.instances;
  query.cpu_cores = options.cores;
  query.balancer_cap_mbps = options.balancer_cap;
  query.hub_cap_mbps = options.hub_cap;
  query.offered_mbps = options.offered;
  const double predicted = PredictScaledTopology(profile, query);
  if (io.json) {
    io.out << json{{"vnf", profile.vnf},
                   {"template", options.template_name},
                   {"instances", options.instances},
                   {"cpu_cores", options.cores},
                   {"predicted_mbps", predicted}}
                  .dump()
           << "\n";
  } else {
    io.out << "predicted aggregate throughput " << Mbps(predicted) << " ("
           << options.instances << " x " << FormatNumber(options.cores)
           << " cores, " << options.template_name << ")\n";
  }
  return kExitOk;
}

struct CapacityOptions {
  double target = 0;
  std::string profile;
  std::optional<double> per_instance;
  std::string mode;
  double cores = 1;
  std::string vnfd;
};

int CmdProfileCapacity(const Io& io, const CapacityOptions& options) {
  PerformanceProfile profile;
  if (!options.profile.empty()) {
    profile = ParseProfile(ReadFile(options.profile));
  } else if (options.per_instance) {
    // Flat profile: every instance saturates at the given rate.
    profile.vnf = "instance";
    profile.b = *options.per_instance;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "capacity needs --profile or --per-instance");
  }
  std::string mode_text = options.mode;
  if (mode_text.empty()) {
    mode_text = options.per_instance ? "horizontal" : "vertical";
  }
  ScalingMode mode;
  if (mode_text == "vertical") {
    mode = ScalingMode::kVertical;
  } else if (mode_text == "horizontal") {
    mode = ScalingMode::kHorizontal;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "--mode must be vertical or horizontal");
  }
  std::vector<ResourceFlavor> flavors;
  if (!options.vnfd.empty()) {
    flavors = ParseVnfDescriptor(ReadFile(options.vnfd)).resource_flavors;
  }
  const CapacityPlan plan =
      EstimateCapacity(profile, options.target, mode, options.cores, flavors);
  if (io.json) {
    json summary = {{"target_mbps", plan.target_mbps},
                    {"mode", mode_text},
                    {"cpu_cores", plan.cpu_cores},
                    {"instances", plan.instances},
                    {"predicted_mbps", plan.predicted_mbps},
                    {"headroom", plan.headroom}};
    summary["flavor"] = plan.flavor ? json(*plan.flavor) : json(nullptr);
    io.out << summary.dump() << "\n";
    return kExitOk;
  }
  if (mode == ScalingMode::kHorizontal) {
    io.out << plan.instances << " instances x "
           << FormatNumber(plan.cpu_cores) << " cores";
  } else {
    io.out << FormatNumber(plan.cpu_cores) << " cores";
    if (plan.flavor) io.out << " (flavor " << *plan.flavor << ")";
  }
  io.out << ", predicted " << Mbps(plan.predicted_mbps) << " for target "
         << Mbps(plan.target_mbps) << ", headroom "
         << FormatNumber(plan.headroom) << "\n";
  return kExitOk;
}


int CmdAlarms(const Io& io, const std::string& input, const std::string& nsd,
              const std::vector<std::string>& rule_texts) {
  std::vector<AlarmRule> rules;
  if (!nsd.empty()) rules = AlarmRulesOf(ParseServiceDescriptor(ReadFile(nsd)));
  for (const auto& text : rule_texts) rules.push_back(ParseAlarmRule(text));
  if (rules.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no alarm rules: pass --nsd or --rule");
  }
  const std::vector<AlarmEvent> events =
      EvaluateAlarms(LoadMetrics(input), rules);
  if (io.json) {
    json list = json::array();
    for (const auto& e : events) {
      list.push_back({{"rule", e.rule.ToString()},
                      {"vnf_id", e.rule.vnf_id},
                      {"first_tick", e.first_tick},
                      {"duration", e.duration}});
    }
    io.out << list.dump() << "\n";
    return kExitOk;
  }
  if (events.empty()) io.out << "no alarms\n";
  for (const auto& e : events) {
    io.out << e.rule.ToString() << ": ticks " << e.first_tick << ".."
           << e.first_tick + e.duration - 1 << "\n";
  }
  return kExitOk;
}


int CmdGraph(const Io& io, const std::string& input, const std::string& output) {
  const std::string text = ReadFile(input);
  const std::string dot =
      LooksLikeEventLog(input, text)
          ? ExportDot(FinalDeployment(EventLog::Parse(text)))
          : ExportDot(ParseServiceDescriptor(text));
  if (output.empty()) {
    io.out << dot;
  } else {
    WriteFile(output, dot);
    if (io.json) {
      io.out << json{{"output", output}}.dump() << "\n";
    } else {
      io.out << "wrote " << output << "\n";
    }
  }
  return kExitOk;
}

void PrintError(std::ostream& err, const Error& e) {
  err << "error: " << e.what() << "\n";
  for (const auto& detail : e.details()) {
    err << "  " << detail.location << ": " << detail.message << "\n";
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"svcsdk: develop, validate, package and emulate network services",
               "svcsdk"};
  app.require_subcommand(1);
  Io io{out, err, false};
  std::function<int()> action;
  auto json_flag = [&](CLI::App* cmd) {
    cmd->add_flag("--json", io.json, "Machine-readable output");
  };

  SourceOptions validate_options;
  auto* validate = app.add_subcommand("validate", "Validate a service descriptor");
  validate->add_option("nsd", validate_options.nsd, "NSD YAML file")->required();
  AddSourceOptions(validate, &validate_options);
  json_flag(validate);
  validate->callback([&] { action = [&] { return CmdValidate(io, validate_options); }; });

  auto* package = app.add_subcommand("package", "Build, verify and sign packages");
  package->require_subcommand(1);
  std::string keygen_prefix;
  auto* keygen = package->add_subcommand("keygen", "Generate an Ed25519 key pair");
  keygen->add_option("--out", keygen_prefix, "Path prefix for .key and .pub")
      ->required();
  json_flag(keygen);
  keygen->callback([&] { action = [&] { return CmdKeygen(io, keygen_prefix); }; });

  SourceOptions build_options;
  std::string build_key;
  std::string build_output;
  std::optional<std::int64_t> build_created_at;
  auto* build = package->add_subcommand("build", "Validate, bundle and sign");
  build->add_option("nsd", build_options.nsd, "NSD YAML file")->required();
  build->add_option("--key", build_key, "Secret key file")->required();
  build->add_option("-o,--output", build_output, "Package path");
  build->add_option("--created-at", build_created_at,
                    "Manifest timestamp (unix seconds)");
  AddSourceOptions(build, &build_options);
  json_flag(build);
  build->callback([&] {
    action = [&] {
      return CmdBuild(io, build_options, build_key, build_output,
                      build_created_at);
    };
  });

  std::string verify_package;
  std::string verify_trust;
  std::string verify_catalogue;
  auto* verify = package->add_subcommand("verify", "Verify a package");
  verify->add_option("package", verify_package, "Package file")->required();
  verify->add_option("--trust", verify_trust,
                     "Directory of trusted .pub keys (or one key file)")
      ->required();
  verify->add_option("--catalogue", verify_catalogue, "Catalogue root");
  json_flag(verify);
  verify->callback([&] {
    action = [&] {
      return CmdVerify(io, verify_package, verify_trust, verify_catalogue);
    };
  });

  auto* catalogue = app.add_subcommand("catalogue", "Manage the local catalogue");
  catalogue->require_subcommand(1);
  SourceOptions add_options;
  std::string add_file;
  std::string add_kind;
  std::string add_name;
  std::string add_version;
  auto* add = catalogue->add_subcommand("add", "Validate and store a descriptor");
  add->add_option("file", add_file, "Descriptor or template YAML")->required();
  add->add_option("--kind", add_kind, "nsd, vnfd or template (default: detect)");
  add->add_option("--name", add_name, "Template name");
  add->add_option("--version", add_version, "Template version");
  AddSourceOptions(add, &add_options);
  json_flag(add);
  add->callback([&] {
    action = [&] {
      return CmdCatalogueAdd(io, add_file, add_kind, add_name, add_version,
                             add_options);
    };
  });

  std::string get_kind;
  std::string get_name;
  std::string get_version;
  std::string get_root;
  auto* get = catalogue->add_subcommand("get", "Print a stored entry");
  get->add_option("kind", get_kind, "nsd, vnfd or template")->required();
  get->add_option("name", get_name)->required();
  get->add_option("version", get_version)->required();
  get->add_option("--catalogue", get_root, "Catalogue root");
  get->callback([&] {
    action = [&] {
      return CmdCatalogueGet(io, get_kind, get_name, get_version, get_root);
    };
  });

  std::string list_root;
  auto* list = catalogue->add_subcommand("list", "List catalogue entries");
  list->add_option("--catalogue", list_root, "Catalogue root");
  json_flag(list);
  list->callback([&] { action = [&] { return CmdCatalogueList(io, list_root); }; });

  auto* templ = app.add_subcommand("template", "Scaling templates");
  templ->require_subcommand(1);
  SourceOptions expand_options;
  std::string expand_template;
  std::optional<int> expand_instances;
  std::string expand_output;
  auto* expand = templ->add_subcommand("expand", "Instantiate a template");
  expand->add_option("template", expand_template,
                     "Template YAML file or catalogue name:version")
      ->required();
  expand->add_option("nsd", expand_options.nsd, "NSD YAML file")->required();
  expand->add_option("--instances", expand_instances, "Override instance count")
      ->check(CLI::PositiveNumber);
  expand->add_option("-o,--output", expand_output, "Expanded NSD path");
  AddSourceOptions(expand, &expand_options);
  json_flag(expand);
  expand->callback([&] {
    action = [&] {
      return CmdTemplateExpand(io, expand_template, expand_options,
                               expand_instances, expand_output);
    };
  });

  std::string push_package;
  std::string push_target;
  std::string push_trust;
  std::string push_token;
  std::string push_catalogue;
  auto* push = app.add_subcommand("push", "Push a package to an environment");
  push->add_option("package", push_package, "Package file")->required();
  push->add_option("target", push_target,
                   "sandbox:<dir>, http://host[:port] or https://...")
      ->required();
  push->add_option("--trust", push_trust, "Trusted keys for local verification")
      ->required();
  push->add_option("--token", push_token,
                   "Bearer token (default $SVCSDK_TOKEN)");
  push->add_option("--catalogue", push_catalogue, "Catalogue root");
  json_flag(push);
  push->callback([&] {
    action = [&] {
      return CmdPush(io, push_package, push_target, push_trust, push_token,
                     push_catalogue);
    };
  });

  EmulateOptions emulate_options;
  auto* emulate = app.add_subcommand("emulate", "Run the sandbox emulator");
  emulate->add_option("input", emulate_options.sources.nsd,
                      "NSD YAML file or signed package")
      ->required();
  emulate->add_option("--infra", emulate_options.infra, "Infrastructure YAML")
      ->required();
  emulate->add_option("--trace", emulate_options.trace, "Traffic trace CSV")
      ->required();
  emulate->add_option("--out", emulate_options.out, "Event log (JSON lines)");
  emulate->add_option("--metrics-out", emulate_options.metrics_out,
                      "Metrics CSV");
  emulate->add_option("--policy", emulate_options.policy,
                      "Override every VNFM: threshold or none");
  emulate->add_option("--decision-interval", emulate_options.decision_interval,
                      "Ticks between VNFM decisions");
  emulate->add_option("--delay", emulate_options.delay,
                      "Instantiation delay in ticks");
  emulate->add_flag("--strict", emulate_options.strict,
                    "Abort when a scaling action cannot be placed");
  emulate->add_option("--seed", emulate_options.seed, "Recorded seed");
  emulate->add_option("--profile", emulate_options.profiles,
                      "Performance profile YAML (repeatable)");
  emulate->add_option("--trust", emulate_options.trust,
                      "Trusted keys when the input is a package");
  AddSourceOptions(emulate, &emulate_options.sources);
  json_flag(emulate);
  emulate->callback([&] { action = [&] { return CmdEmulate(io, emulate_options); }; });

  auto* profile = app.add_subcommand("profile", "Performance profiles");
  profile->require_subcommand(1);
  std::string fit_input;
  std::string fit_vnf;
  std::string fit_output;
  auto* fit = profile->add_subcommand("fit", "Fit a profile to metrics");
  fit->add_option("metrics", fit_input, "Metrics CSV or event log")->required();
  fit->add_option("--vnf", fit_vnf, "VNF id to profile");
  fit->add_option("-o,--output", fit_output, "Profile YAML path");
  json_flag(fit);
  fit->callback([&] {
    action = [&] { return CmdProfileFit(io, fit_input, fit_vnf, fit_output); };
  });

  PredictOptions predict_options;
  auto* predict = profile->add_subcommand("predict", "Predict scaled throughput");
  predict->add_option("--profile", predict_options.profile, "Profile YAML")
      ->required();
  predict->add_option("--instances", predict_options.instances)
      ->check(CLI::PositiveNumber);
  predict->add_option("--cores", predict_options.cores, "Cores per instance");
  predict->add_option("--template", predict_options.template_name,
                      "load-balancer, hub-and-spoke or full-mesh");
  predict->add_option("--balancer-cap", predict_options.balancer_cap,
                      "Balancer capacity in Mbit/s");
  predict->add_option("--hub-cap", predict_options.hub_cap,
                      "Hub capacity in Mbit/s");
  predict->add_option("--offered", predict_options.offered,
                      "Offered load in Mbit/s");
  json_flag(predict);
  predict->callback([&] {
    action = [&] { return CmdProfilePredict(io, predict_options); };
  });

  CapacityOptions capacity_options;
  auto* capacity = profile->add_subcommand("capacity", "Plan capacity");
  capacity->add_option("--target", capacity_options.target,
                       "Target throughput in Mbit/s")
      ->required();
  capacity->add_option("--profile", capacity_options.profile, "Profile YAML");
  capacity->add_option("--per-instance", capacity_options.per_instance,
                       "Flat per-instance capacity in Mbit/s");
  capacity->add_option("--mode", capacity_options.mode, "vertical or horizontal");
  capacity->add_option("--cores", capacity_options.cores,
                       "Cores per instance for horizontal plans");
  capacity->add_option("--vnfd", capacity_options.vnfd,
                       "VNFD whose flavors bound vertical plans");
  json_flag(capacity);
  capacity->callback([&] {
    action = [&] { return CmdProfileCapacity(io, capacity_options); };
  });

  auto* alarms = app.add_subcommand("alarms", "Alarm evaluation");
  alarms->require_subcommand(1);
  std::string eval_input;
  std::string eval_nsd;
  std::vector<std::string> eval_rules;
  auto* eval = alarms->add_subcommand("eval", "Evaluate alarm rules on metrics");
  eval->add_option("metrics", eval_input, "Metrics CSV or event log")->required();
  eval->add_option("--nsd", eval_nsd, "Take rules from an NSD's monitoring");
  eval->add_option("--rule", eval_rules,
                   "Rule such as 'packet_loss_ratio(router) > 0.01 for 5s'");
  json_flag(eval);
  eval->callback([&] {
    action = [&] { return CmdAlarms(io, eval_input, eval_nsd, eval_rules); };
  });

  std::string graph_input;
  std::string graph_output;
  auto* graph = app.add_subcommand("graph", "Export a Graphviz DOT graph");
  graph->add_option("input", graph_input, "NSD YAML or event log")->required();
  graph->add_option("-o,--output", graph_output, "DOT file");
  json_flag(graph);
  graph->callback([&] { action = [&] { return CmdGraph(io, graph_input, graph_output); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }
  if (!action) return kExitIo;
  try {
    return action();
  } catch (const Error& e) {
    PrintError(err, e);
    return ExitStatusFor(e.code());
  } catch (const YAML::Exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace svcsdk
