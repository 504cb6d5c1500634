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

#ifndef SVCSDK_PACKAGER_ARCHIVE_H_
#define SVCSDK_PACKAGER_ARCHIVE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace svcsdk {

struct ArchiveFile {
  std::string path;
  std::string contents;
  bool executable = false;

  bool operator==(const ArchiveFile&) const = default;
};

// Canonical ustar stream: regular files only, in the given order, mode
// 0644/0755, uid/gid 0, empty owner names, every mtime set to `mtime`.
// Names longer than the ustar name field are split into prefix/name.
std::string WriteTar(const std::vector<ArchiveFile>& files,
                     std::int64_t mtime);

struct TarContents {
  std::vector<ArchiveFile> files;
  // mtime of the first entry, 0 for an empty archive.
  std::int64_t mtime = 0;
};

// Parses a ustar stream. Entry names are returned verbatim; callers decide
// what is safe to extract. Throws Error(kMalformedArchive).
TarContents ReadTar(std::string_view tar);

// Deterministic gzip (best compression, zero header mtime).
std::string Gzip(std::string_view data);
// Throws Error(kMalformedArchive) on a corrupt or truncated stream.
std::string Gunzip(std::string_view data);

}  // namespace svcsdk

#endif  // SVCSDK_PACKAGER_ARCHIVE_H_
