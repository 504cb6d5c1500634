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

#ifndef SVCSDK_PACKAGER_PACKAGE_H_
#define SVCSDK_PACKAGER_PACKAGE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svcsdk/descriptor/model.h"
#include "svcsdk/descriptor/resolve.h"
#include "svcsdk/packager/archive.h"
#include "svcsdk/packager/keys.h"
#include "svcsdk/validator/issue.h"

namespace svcsdk {

inline constexpr std::string_view kManifestPath = "manifest.json";
inline constexpr std::string_view kSignaturePath = "signature.bin";
inline constexpr std::string_view kPackageExtension = ".svcpkg";

struct ManifestFile {
  std::string path;
  std::string sha256;
  std::uint64_t size = 0;

  bool operator==(const ManifestFile&) const = default;
};

struct PackageManifest {
  std::string package_name;
  std::string package_version;
  std::int64_t created_at = 0;
  std::vector<ManifestFile> files;
  std::string signer_key_id;

  // Canonical bytes: JSON with sorted keys, two-space indent, trailing
  // newline. The signature covers exactly these bytes.
  std::string ToJson() const;
  // Throws Error(kMalformedArchive).
  static PackageManifest FromJson(std::string_view text);

  bool operator==(const PackageManifest&) const = default;
};

struct BuildOptions {
  // Pins the manifest timestamp and every tar mtime; defaults to now.
  std::optional<std::int64_t> created_at;
};

// Signs and bundles payload files as a package without validating them.
std::string SealPackage(std::string_view name, std::string_view version,
                        std::vector<ArchiveFile> payload, const KeyPair& key,
                        std::int64_t created_at);

// Archive entries in order: manifest.json and the payload sorted by path,
// then signature.bin. Plugins referenced by the service are copied from
// `plugin_root` at their declared paths. Throws Error(kValidationGate) when
// ValidateAll(service, plugin_root) fails, Error(kSigning) on key problems.
std::string BuildPackage(const ResolvedService& service,
                         const std::optional<std::filesystem::path>& plugin_root,
                         const KeyPair& key, const BuildOptions& options = {});

// Integrity, digests, signature and signer trust, then full re-validation of
// the unpacked descriptors. Never throws on bad input.
ValidationReport VerifyPackage(std::string_view bytes,
                               const std::vector<PublicKey>& trusted_keys,
                               const VnfdLookup& fallback = nullptr);

// Extracts every entry under `dest`. Throws Error(kMalformedArchive) or
// Error(kPathTraversal).
PackageManifest Unpack(std::string_view bytes,
                       const std::filesystem::path& dest);

}  // namespace svcsdk

#endif  // SVCSDK_PACKAGER_PACKAGE_H_
