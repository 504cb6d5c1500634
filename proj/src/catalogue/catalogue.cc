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

#include "svcsdk/catalogue/catalogue.h"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <tuple>

#include "json.hpp"
#include "svcsdk/common/error.h"
#include "svcsdk/common/util.h"
#include "svcsdk/descriptor/parser.h"
#include "svcsdk/descriptor/serializer.h"

namespace svcsdk {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Advisory lock on <root>/.lock, held for the lifetime of the object.
class IndexLock {
 public:
  IndexLock(const fs::path& root, bool exclusive) {
    std::error_code ec;
    fs::create_directories(root, ec);
    const fs::path path = root / ".lock";
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) {
      throw Error(ErrorCode::kIo, "cannot open lock file " + path.string());
    }
    if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      throw Error(ErrorCode::kIo, "cannot lock " + path.string());
    }
  }
  ~IndexLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  IndexLock(const IndexLock&) = delete;
  IndexLock& operator=(const IndexLock&) = delete;

 private:
  int fd_ = -1;
};

auto Key(const CatalogueEntry& e) {
  return std::tie(e.kind, e.name, e.version);
}

void WriteAtomically(const fs::path& path, std::string_view contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  WriteFile(tmp, contents);
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                "cannot write " + path.string() + ": " + ec.message());
  }
}

void CheckName(std::string_view what, std::string_view value) {
  if (!IsIdentifier(value)) {
    throw Error(ErrorCode::kInvalidArgument,
                "catalogue " + std::string(what) + " '" + std::string(value) +
                    "' is not a valid identifier");
  }
}

}  // namespace

std::string_view EntryKindName(EntryKind kind) {
  switch (kind) {
    case EntryKind::kNsd:
      return "nsd";
    case EntryKind::kVnfd:
      return "vnfd";
    case EntryKind::kTemplate:
      return "template";
  }
  return "vnfd";
}

std::optional<EntryKind> ParseEntryKind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (auto kind : {EntryKind::kNsd, EntryKind::kVnfd, EntryKind::kTemplate}) {
    if (EntryKindName(kind) == lower) return kind;
  }
  return std::nullopt;
}

Catalogue::Catalogue(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path Catalogue::DefaultRoot() {
  if (const char* env = std::getenv("SVCSDK_CATALOGUE"); env && *env) {
    return env;
  }
  const char* home = std::getenv("HOME");
  return fs::path(home && *home ? home : ".") / ".svcsdk" / "catalogue";
}

std::filesystem::path Catalogue::EntryPath(EntryKind kind,
                                           std::string_view name,
                                           std::string_view version) const {
  return root_ / std::string(EntryKindName(kind)) / std::string(name) /
         (std::string(version) + ".yaml");
}

std::vector<CatalogueEntry> Catalogue::ReadIndex() const {
  const fs::path path = root_ / "index.json";
  if (!fs::exists(path)) return {};
  std::vector<CatalogueEntry> entries;
  try {
    const json doc = json::parse(ReadFile(path));
    for (const auto& item : doc.at("entries")) {
      CatalogueEntry e;
      auto kind = ParseEntryKind(item.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::kCorruptEntry, "unknown entry kind");
      e.kind = *kind;
      e.name = item.at("name").get<std::string>();
      e.version = item.at("version").get<std::string>();
      e.sha256 = item.at("sha256").get<std::string>();
      e.validated_at = item.at("validated_at").get<std::string>();
      entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kCorruptEntry,
                "catalogue index " + path.string() + " is malformed: " +
                    e.what());
  }
  return entries;
}

void Catalogue::WriteIndex(const std::vector<CatalogueEntry>& entries) const {
  json items = json::array();
  for (const auto& e : entries) {
    const fs::path rel = EntryPath(e.kind, e.name, e.version).lexically_relative(
        root_);
    items.push_back({{"kind", std::string(EntryKindName(e.kind))},
                     {"name", e.name},
                     {"version", e.version},
                     {"sha256", e.sha256},
                     {"validated_at", e.validated_at},
                     {"path", rel.generic_string()}});
  }
  WriteAtomically(root_ / "index.json",
                  json{{"entries", items}}.dump(2) + "\n");
}

CatalogueEntry Catalogue::Add(EntryKind kind, std::string_view name,
                              std::string_view version, std::string_view body,
                              const ValidationReport& report,
                              std::optional<std::int64_t> validated_at) {
  if (!report.passed()) {
    throw Error(ErrorCode::kRejectedUnvalidated,
                "refusing to catalogue " + std::string(name) + " " +
                    std::string(version) + ": validation failed");
  }
  CheckName("name", name);
  CheckName("version", version);

  CatalogueEntry entry;
  entry.kind = kind;
  entry.name = std::string(name);
  entry.version = std::string(version);
  entry.sha256 = Sha256Hex(body);
  entry.validated_at = FormatUtc(validated_at.value_or(NowUnixSeconds()));

  IndexLock lock(root_, /*exclusive=*/true);
  std::vector<CatalogueEntry> entries = ReadIndex();
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const CatalogueEntry& e) {
                           return Key(e) == Key(entry);
                         });
  if (it != entries.end()) {
    if (it->sha256 != entry.sha256) {
      throw Error(ErrorCode::kDuplicateEntry,
                  std::string(EntryKindName(kind)) + " " + entry.name + " " +
                      entry.version + " already exists with a different digest");
    }
    CatalogueEntry existing = *it;
    existing.body = std::string(body);
    return existing;
  }
  WriteAtomically(EntryPath(kind, name, version), body);
  entries.push_back(entry);
  std::sort(entries.begin(), entries.end(),
            [](const CatalogueEntry& a, const CatalogueEntry& b) {
              return Key(a) < Key(b);
            });
  WriteIndex(entries);
  entry.body = std::string(body);
  return entry;
}

CatalogueEntry Catalogue::Add(const VnfDescriptor& vnfd,
                              const ValidationReport& report) {
  return Add(EntryKind::kVnfd, vnfd.name, vnfd.version,
             SerializeDescriptor(vnfd), report);
}

CatalogueEntry Catalogue::Add(const ServiceDescriptor& nsd,
                              const ValidationReport& report) {
  return Add(EntryKind::kNsd, nsd.name, nsd.version, SerializeDescriptor(nsd),
             report);
}

CatalogueEntry Catalogue::AddTemplate(std::string_view name,
                                      std::string_view version,
                                      const ScalingTemplate& t,
                                      const ValidationReport& report) {
  return Add(EntryKind::kTemplate, name, version, SerializeTemplate(t), report);
}

std::string Catalogue::Lookup(EntryKind kind, std::string_view name,
                              std::string_view version) const {
  IndexLock lock(root_, /*exclusive=*/false);
  const std::vector<CatalogueEntry> entries = ReadIndex();
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const CatalogueEntry& e) {
                           return e.kind == kind && e.name == name &&
                                  e.version == version;
                         });
  const std::string label = std::string(EntryKindName(kind)) + " " +
                            std::string(name) + " " + std::string(version);
  if (it == entries.end()) {
    throw Error(ErrorCode::kNotFound, label + " is not in the catalogue");
  }
  const fs::path path = EntryPath(kind, name, version);
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kCorruptEntry,
                label + ": entry file " + path.string() + " is missing");
  }
  std::string body = ReadFile(path);
  if (Sha256Hex(body) != it->sha256) {
    throw Error(ErrorCode::kCorruptEntry,
                label + ": stored digest does not match " + path.string());
  }
  return body;
}

ScalingTemplate Catalogue::LookupTemplate(std::string_view name,
                                          std::string_view version) const {
  return ParseTemplate(Lookup(EntryKind::kTemplate, name, version));
}

std::vector<CatalogueEntry> Catalogue::List() const {
  IndexLock lock(root_, /*exclusive=*/false);
  return ReadIndex();
}

VnfdLookup Catalogue::VnfdResolver() const {
  return [root = root_](const VnfdRef& ref) -> std::optional<VnfDescriptor> {
    try {
      return ParseVnfDescriptor(
          Catalogue(root).Lookup(EntryKind::kVnfd, ref.name, ref.version));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNotFound) return std::nullopt;
      throw;
    }
  };
}

}  // namespace svcsdk
