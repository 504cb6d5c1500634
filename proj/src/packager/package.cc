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

#include "svcsdk/packager/package.h"

#include <sys/stat.h>

#include <algorithm>
#include <cstring>
#include <map>
#include <set>

#include "json.hpp"
#include "svcsdk/common/error.h"
#include "svcsdk/common/util.h"
#include "svcsdk/descriptor/serializer.h"
#include "svcsdk/packager/archive.h"
#include "svcsdk/validator/validator.h"

namespace svcsdk {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kPackageLocation = "package";

bool SafeRelativePath(std::string_view path) {
  if (path.empty() || path.front() == '/') return false;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    std::string_view part = path.substr(start, end - start);
    if (part.empty() || part == "." || part == "..") return false;
    start = end + 1;
  }
  return true;
}

bool IsExecutable(const fs::path& path) {
  const auto perms = fs::status(path).permissions();
  return (perms & fs::perms::owner_exec) != fs::perms::none;
}

void CollectPlugin(const fs::path& plugin_root, const PluginRef& ref,
                   std::map<std::string, ArchiveFile>& files) {
  if (!SafeRelativePath(ref.path)) {
    throw Error(ErrorCode::kInvalidArgument,
                "plugin path '" + ref.path + "' must stay inside the package");
  }
  const fs::path dir = plugin_root / ref.path;
  std::vector<fs::path> found;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) found.push_back(entry.path());
  }
  for (const auto& path : found) {
    const std::string rel =
        ref.path + "/" + path.lexically_relative(dir).generic_string();
    files[rel] = ArchiveFile{rel, ReadFile(path), IsExecutable(path)};
  }
}

std::vector<PluginRef> ReferencedPlugins(const ServiceDescriptor& s) {
  std::vector<PluginRef> plugins;
  if (const auto* p = std::get_if<PluginRef>(&s.control_functions.nfvo)) {
    plugins.push_back(*p);
  }
  for (const auto& [vnf, fn] : s.control_functions.vnfm) {
    if (const auto* p = std::get_if<PluginRef>(&fn)) plugins.push_back(*p);
  }
  return plugins;
}

}  // namespace

std::string PackageManifest::ToJson() const {
  json files_json = json::array();
  for (const auto& f : files) {
    files_json.push_back(
        {{"path", f.path}, {"sha256", f.sha256}, {"size", f.size}});
  }
  json doc = {{"package_name", package_name},
              {"package_version", package_version},
              {"created_at", FormatUtc(created_at)},
              {"files", files_json},
              {"signer_key_id", signer_key_id}};
  return doc.dump(2) + "\n";
}

PackageManifest PackageManifest::FromJson(std::string_view text) {
  PackageManifest m;
  try {
    const json doc = json::parse(text);
    m.package_name = doc.at("package_name").get<std::string>();
    m.package_version = doc.at("package_version").get<std::string>();
    m.created_at = ParseUtc(doc.at("created_at").get<std::string>());
    m.signer_key_id = doc.at("signer_key_id").get<std::string>();
    for (const auto& f : doc.at("files")) {
      m.files.push_back(ManifestFile{f.at("path").get<std::string>(),
                                     f.at("sha256").get<std::string>(),
                                     f.at("size").get<std::uint64_t>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedArchive,
                std::string("manifest is malformed: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformedArchive,
                std::string("manifest is malformed: ") + e.what());
  }
  return m;
}

std::string SealPackage(std::string_view name, std::string_view version,
                        std::vector<ArchiveFile> payload, const KeyPair& key,
                        std::int64_t created_at) {
  std::map<std::string, ArchiveFile> ordered;
  for (auto& file : payload) {
    if (file.path == kManifestPath || file.path == kSignaturePath) {
      throw Error(ErrorCode::kInvalidArgument,
                  "payload may not contain " + file.path);
    }
    const std::string path = file.path;
    ordered[path] = std::move(file);
  }
  PackageManifest manifest;
  manifest.package_name = std::string(name);
  manifest.package_version = std::string(version);
  manifest.created_at = created_at;
  manifest.signer_key_id = KeyId(key.public_key);
  for (const auto& [path, file] : ordered) {
    manifest.files.push_back(
        ManifestFile{path, Sha256Hex(file.contents), file.contents.size()});
  }
  const std::string manifest_bytes = manifest.ToJson();
  const Signature signature = Sign(manifest_bytes, key.secret_key);

  ordered[std::string(kManifestPath)] =
      ArchiveFile{std::string(kManifestPath), manifest_bytes, false};
  std::vector<ArchiveFile> entries;
  for (auto& [path, file] : ordered) entries.push_back(std::move(file));
  entries.push_back(ArchiveFile{
      std::string(kSignaturePath),
      std::string(reinterpret_cast<const char*>(signature.data()),
                  signature.size()),
      false});
  return Gzip(WriteTar(entries, created_at));
}

std::string BuildPackage(const ResolvedService& service,
                         const std::optional<std::filesystem::path>& plugin_root,
                         const KeyPair& key, const BuildOptions& options) {
  const ValidationReport report = ValidateAll(service, plugin_root);
  if (!report.passed()) {
    std::vector<ErrorDetail> details;
    for (const auto& issue : report.issues()) {
      if (issue.severity != Severity::kError) continue;
      details.push_back(ErrorDetail{
          issue.location,
          std::string(IssueCodeName(issue.code)) + ": " + issue.message});
    }
    throw Error(ErrorCode::kValidationGate,
                "service " + service.service.name +
                    " does not validate; refusing to package",
                std::move(details));
  }

  std::map<std::string, ArchiveFile> payload;
  const std::string nsd_path = "descriptors/nsd.yaml";
  payload[nsd_path] =
      ArchiveFile{nsd_path, SerializeDescriptor(service.service), false};
  std::set<VnfdRef> seen;
  std::set<std::string> names;
  for (const auto& vnf : service.service.vnfs) {
    if (!seen.insert(vnf.vnfd).second) continue;
    std::string file = "descriptors/vnfd-" + vnf.vnfd.name + ".yaml";
    if (!names.insert(vnf.vnfd.name).second) {
      file = "descriptors/vnfd-" + vnf.vnfd.name + "-" + vnf.vnfd.version +
             ".yaml";
    }
    payload[file] = ArchiveFile{
        file, SerializeDescriptor(service.Vnfd(vnf.vnf_id)), false};
  }
  const std::vector<PluginRef> plugins = ReferencedPlugins(service.service);
  if (!plugins.empty() && !plugin_root) {
    throw Error(ErrorCode::kInvalidArgument,
                "service references plugins but no plugin root was given");
  }
  for (const auto& ref : plugins) CollectPlugin(*plugin_root, ref, payload);

  std::vector<ArchiveFile> files;
  for (auto& [path, file] : payload) files.push_back(std::move(file));
  return SealPackage(service.service.name, service.service.version,
                     std::move(files), key,
                     options.created_at.value_or(NowUnixSeconds()));
}

ValidationReport VerifyPackage(std::string_view bytes,
                               const std::vector<PublicKey>& trusted_keys,
                               const VnfdLookup& fallback) {
  ValidationReport report;
  auto malformed = [&](const std::string& message) {
    report.Add(MakeIssue(IssueCode::kMalformedArchive,
                         std::string(kPackageLocation), message));
    return report;
  };

  std::string tar;
  TarContents contents;
  try {
    tar = Gunzip(bytes);
    if (Gzip(tar) != bytes) {
      return malformed("archive is not canonically compressed");
    }
    contents = ReadTar(tar);
    if (WriteTar(contents.files, contents.mtime) != tar) {
      return malformed("archive entries are not canonically encoded");
    }
  } catch (const Error& e) {
    return malformed(e.what());
  }

  const auto& files = contents.files;
  if (files.empty() || files.back().path != kSignaturePath ||
      files.back().contents.size() != std::tuple_size_v<Signature>) {
    return malformed("signature.bin must be the last entry and hold 64 bytes");
  }
  std::map<std::string, const ArchiveFile*> by_path;
  for (const auto& f : files) {
    if (!by_path.emplace(f.path, &f).second) {
      return malformed("duplicate archive entry " + f.path);
    }
  }
  auto manifest_it = by_path.find(std::string(kManifestPath));
  if (manifest_it == by_path.end()) return malformed("manifest.json missing");
  const std::string& manifest_bytes = manifest_it->second->contents;

  PackageManifest manifest;
  try {
    manifest = PackageManifest::FromJson(manifest_bytes);
  } catch (const Error& e) {
    return malformed(e.what());
  }
  if (manifest.created_at != contents.mtime) {
    return malformed("entry timestamps differ from manifest created_at");
  }

  Signature signature{};
  std::memcpy(signature.data(), files.back().contents.data(),
              signature.size());
  const PublicKey* signer = nullptr;
  for (const auto& key : trusted_keys) {
    if (KeyId(key) == manifest.signer_key_id) signer = &key;
  }
  if (signer == nullptr) {
    report.Add(MakeIssue(IssueCode::kUnknownSigner,
                         std::string(kPackageLocation),
                         "signer key " + manifest.signer_key_id +
                             " is not in the trusted set"));
  } else if (!VerifySignature(signature, manifest_bytes, *signer)) {
    report.Add(MakeIssue(IssueCode::kBadSignature,
                         std::string(kPackageLocation),
                         "signature does not match the manifest"));
  }

  std::set<std::string> listed;
  for (const auto& entry : manifest.files) {
    listed.insert(entry.path);
    auto it = by_path.find(entry.path);
    if (it == by_path.end()) {
      report.Add(MakeIssue(IssueCode::kDigestMismatch, "file:" + entry.path,
                           "listed file is missing from the archive"));
      continue;
    }
    const std::string& data = it->second->contents;
    if (data.size() != entry.size || Sha256Hex(data) != entry.sha256) {
      report.Add(MakeIssue(IssueCode::kDigestMismatch, "file:" + entry.path,
                           "content does not match the manifest digest"));
    }
  }
  for (const auto& f : files) {
    if (f.path == kManifestPath || f.path == kSignaturePath) continue;
    if (listed.count(f.path) == 0) {
      report.Add(MakeIssue(IssueCode::kDigestMismatch, "file:" + f.path,
                           "archive entry is not listed in the manifest"));
    }
  }
  if (!report.passed()) return report;

  try {
    TempDir dir("svcsdk-verify");
    Unpack(bytes, dir.path());
    report.Merge(ValidateSources(LoadPackageTree(dir.path()), fallback));
  } catch (const Error& e) {
    report.Add(MakeIssue(IssueCode::kMalformedArchive,
                         std::string(kPackageLocation), e.what()));
  }
  return report;
}

PackageManifest Unpack(std::string_view bytes,
                       const std::filesystem::path& dest) {
  const TarContents contents = ReadTar(Gunzip(bytes));
  for (const auto& f : contents.files) {
    if (!SafeRelativePath(f.path)) {
      throw Error(ErrorCode::kPathTraversal,
                  "archive entry '" + f.path + "' escapes the destination");
    }
  }
  auto manifest_it =
      std::find_if(contents.files.begin(), contents.files.end(),
                   [](const ArchiveFile& f) { return f.path == kManifestPath; });
  if (manifest_it == contents.files.end()) {
    throw Error(ErrorCode::kMalformedArchive, "manifest.json missing");
  }
  PackageManifest manifest = PackageManifest::FromJson(manifest_it->contents);
  for (const auto& f : contents.files) {
    const fs::path target = dest / f.path;
    WriteFile(target, f.contents);
    ::chmod(target.c_str(), f.executable ? 0755 : 0644);
  }
  return manifest;
}

}  // namespace svcsdk
