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

#ifndef SVCSDK_CATALOGUE_CATALOGUE_H_
#define SVCSDK_CATALOGUE_CATALOGUE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svcsdk/catalogue/templates.h"
#include "svcsdk/descriptor/model.h"
#include "svcsdk/descriptor/resolve.h"
#include "svcsdk/validator/issue.h"

namespace svcsdk {

enum class EntryKind { kNsd, kVnfd, kTemplate };

std::string_view EntryKindName(EntryKind kind);
std::optional<EntryKind> ParseEntryKind(std::string_view text);

struct CatalogueEntry {
  EntryKind kind = EntryKind::kVnfd;
  std::string name;
  std::string version;
  std::string sha256;
  std::string validated_at;
  std::string body;

  bool operator==(const CatalogueEntry&) const = default;
};

// A directory-backed store of validated descriptors and scaling templates:
//   <root>/<kind>/<name>/<version>.yaml
//   <root>/index.json
// Writers serialize on <root>/.lock; readers take the lock shared.
class Catalogue {
 public:
  explicit Catalogue(std::filesystem::path root);

  // $SVCSDK_CATALOGUE, else $HOME/.svcsdk/catalogue.
  static std::filesystem::path DefaultRoot();

  const std::filesystem::path& root() const { return root_; }

  // Stores `body` verbatim. Re-adding identical bytes is a no-op returning
  // the existing entry. Throws Error(kRejectedUnvalidated) when `report`
  // failed and Error(kDuplicateEntry) for different bytes under the same
  // (kind, name, version).
  CatalogueEntry Add(EntryKind kind, std::string_view name,
                     std::string_view version, std::string_view body,
                     const ValidationReport& report,
                     std::optional<std::int64_t> validated_at = std::nullopt);
  CatalogueEntry Add(const VnfDescriptor& vnfd, const ValidationReport& report);
  CatalogueEntry Add(const ServiceDescriptor& nsd,
                     const ValidationReport& report);
  CatalogueEntry AddTemplate(std::string_view name, std::string_view version,
                             const ScalingTemplate& t,
                             const ValidationReport& report);

  // Stored bytes, digest re-verified. Throws Error(kNotFound) or
  // Error(kCorruptEntry).
  std::string Lookup(EntryKind kind, std::string_view name,
                     std::string_view version) const;
  ScalingTemplate LookupTemplate(std::string_view name,
                                 std::string_view version) const;

  // Index entries (without bodies), sorted by (kind, name, version).
  std::vector<CatalogueEntry> List() const;

  // Resolves VNFD references against this catalogue.
  VnfdLookup VnfdResolver() const;

 private:
  std::filesystem::path EntryPath(EntryKind kind, std::string_view name,
                                  std::string_view version) const;
  std::vector<CatalogueEntry> ReadIndex() const;
  void WriteIndex(const std::vector<CatalogueEntry>& entries) const;

  std::filesystem::path root_;
};

}  // namespace svcsdk

#endif  // SVCSDK_CATALOGUE_CATALOGUE_H_
