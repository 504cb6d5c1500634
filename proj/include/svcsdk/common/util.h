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

#ifndef SVCSDK_COMMON_UTIL_H_
#define SVCSDK_COMMON_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace svcsdk {

// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(std::string_view data);
std::string Sha256Hex(std::span<const std::uint8_t> data);

std::string HexEncode(std::span<const std::uint8_t> data);
// Throws Error(kInvalidArgument) on odd length or non-hex characters.
std::string HexDecode(std::string_view hex);

// Shortest decimal text that parses back to exactly `value`.
std::string FormatNumber(double value);

// Whole-file I/O; failures raise Error(kIo).
std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

// RFC 3339 UTC timestamp with second resolution ("2026-01-02T03:04:05Z").
std::string FormatUtc(std::int64_t unix_seconds);
std::int64_t ParseUtc(std::string_view text);
std::int64_t NowUnixSeconds();

bool IsIdentifier(std::string_view text);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view prefix = "svcsdk");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace svcsdk

#endif  // SVCSDK_COMMON_UTIL_H_
