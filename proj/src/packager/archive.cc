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

#include "svcsdk/packager/archive.h"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <cstring>

#include "svcsdk/common/error.h"

namespace svcsdk {
namespace {

constexpr std::size_t kBlock = 512;

[[noreturn]] void Malformed(const std::string& message) {
  throw Error(ErrorCode::kMalformedArchive, message);
}

void PutOctal(char* field, std::size_t width, std::uint64_t value) {
  // width - 1 digits followed by NUL.
  std::string digits(width - 1, '0');
  for (std::size_t i = width - 1; i-- > 0 && value != 0;) {
    digits[i] = static_cast<char>('0' + (value & 7));
    value >>= 3;
  }
  if (value != 0) Malformed("value does not fit a tar header field");
  std::memcpy(field, digits.data(), width - 1);
  field[width - 1] = '\0';
}

std::uint64_t GetOctal(const char* field, std::size_t width) {
  std::uint64_t value = 0;
  std::size_t i = 0;
  while (i < width && field[i] == ' ') ++i;
  bool any = false;
  for (; i < width && field[i] >= '0' && field[i] <= '7'; ++i) {
    value = (value << 3) | static_cast<std::uint64_t>(field[i] - '0');
    any = true;
  }
  for (; i < width; ++i) {
    if (field[i] != '\0' && field[i] != ' ') {
      Malformed("non-octal digit in tar header");
    }
  }
  if (!any) Malformed("empty numeric field in tar header");
  return value;
}

std::string GetString(const char* field, std::size_t width) {
  return std::string(field, strnlen(field, width));
}

struct Header {
  char name[100];
  char mode[8];
  char uid[8];
  char gid[8];
  char size[12];
  char mtime[12];
  char chksum[8];
  char typeflag;
  char linkname[100];
  char magic[6];
  char version[2];
  char uname[32];
  char gname[32];
  char devmajor[8];
  char devminor[8];
  char prefix[155];
  char pad[12];
};
static_assert(sizeof(Header) == kBlock);

std::uint64_t Checksum(const Header& h) {
  Header copy = h;
  std::memset(copy.chksum, ' ', sizeof(copy.chksum));
  const auto* bytes = reinterpret_cast<const unsigned char*>(&copy);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < kBlock; ++i) sum += bytes[i];
  return sum;
}

void SplitName(const std::string& path, Header& h) {
  if (path.size() <= sizeof(h.name)) {
    std::memcpy(h.name, path.data(), path.size());
    return;
  }
  // Split at a '/' so that prefix <= 155 and name <= 100.
  for (std::size_t pos = path.rfind('/'); pos != std::string::npos && pos > 0;
       pos = path.rfind('/', pos - 1)) {
    if (pos <= sizeof(h.prefix) && path.size() - pos - 1 <= sizeof(h.name) &&
        path.size() - pos - 1 > 0) {
      std::memcpy(h.prefix, path.data(), pos);
      std::memcpy(h.name, path.data() + pos + 1, path.size() - pos - 1);
      return;
    }
  }
  Malformed("path too long for a tar header: " + path);
}

}  // namespace

std::string WriteTar(const std::vector<ArchiveFile>& files,
                     std::int64_t mtime) {
  std::string out;
  for (const auto& file : files) {
    if (file.path.empty()) Malformed("empty tar entry name");
    Header h;
    std::memset(&h, 0, sizeof(h));
    SplitName(file.path, h);
    PutOctal(h.mode, sizeof(h.mode), file.executable ? 0755 : 0644);
    PutOctal(h.uid, sizeof(h.uid), 0);
    PutOctal(h.gid, sizeof(h.gid), 0);
    PutOctal(h.size, sizeof(h.size), file.contents.size());
    PutOctal(h.mtime, sizeof(h.mtime),
             static_cast<std::uint64_t>(std::max<std::int64_t>(mtime, 0)));
    h.typeflag = '0';
    std::memcpy(h.magic, "ustar", 6);
    std::memcpy(h.version, "00", 2);
    PutOctal(h.chksum, 7, Checksum(h));
    h.chksum[7] = ' ';
    out.append(reinterpret_cast<const char*>(&h), kBlock);
    out.append(file.contents);
    out.append((kBlock - file.contents.size() % kBlock) % kBlock, '\0');
  }
  out.append(2 * kBlock, '\0');
  return out;
}

TarContents ReadTar(std::string_view tar) {
  if (tar.size() % kBlock != 0) Malformed("tar stream is not block aligned");
  TarContents result;
  std::size_t offset = 0;
  bool first = true;
  while (true) {
    if (offset + kBlock > tar.size()) Malformed("tar stream is truncated");
    Header h;
    std::memcpy(&h, tar.data() + offset, kBlock);
    const auto* raw = reinterpret_cast<const unsigned char*>(&h);
    if (std::all_of(raw, raw + kBlock, [](unsigned char c) { return c == 0; })) {
      break;
    }
    if (GetOctal(h.chksum, sizeof(h.chksum)) != Checksum(h)) {
      Malformed("tar header checksum mismatch at offset " +
                std::to_string(offset));
    }
    if (std::memcmp(h.magic, "ustar", 5) != 0) Malformed("not a ustar archive");
    if (h.typeflag != '0' && h.typeflag != '\0') {
      Malformed("unsupported tar entry type");
    }
    ArchiveFile file;
    std::string prefix = GetString(h.prefix, sizeof(h.prefix));
    std::string name = GetString(h.name, sizeof(h.name));
    file.path = prefix.empty() ? name : prefix + "/" + name;
    file.executable = (GetOctal(h.mode, sizeof(h.mode)) & 0111) != 0;
    const std::uint64_t size = GetOctal(h.size, sizeof(h.size));
    const std::int64_t mtime =
        static_cast<std::int64_t>(GetOctal(h.mtime, sizeof(h.mtime)));
    if (first) {
      result.mtime = mtime;
      first = false;
    }
    offset += kBlock;
    if (size > tar.size() - offset) Malformed("tar entry data is truncated");
    file.contents = std::string(tar.substr(offset, size));
    offset += (size + kBlock - 1) / kBlock * kBlock;
    result.files.push_back(std::move(file));
  }
  return result;
}

std::string Gzip(std::string_view data) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, 15 + 16, 9,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(ErrorCode::kIo, "cannot initialise gzip compressor");
  }
  std::string out(deflateBound(&zs, data.size()) + 32, '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = deflate(&zs, Z_FINISH);
  std::size_t written = zs.total_out;
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error(ErrorCode::kIo, "gzip compression failed");
  out.resize(written);
  return out;
}

std::string Gunzip(std::string_view data) {
  if (data.size() < 18 || static_cast<unsigned char>(data[0]) != 0x1f ||
      static_cast<unsigned char>(data[1]) != 0x8b) {
    Malformed("not a gzip stream");
  }
  z_stream zs{};
  if (inflateInit2(&zs, 15 + 16) != Z_OK) {
    throw Error(ErrorCode::kIo, "cannot initialise gzip decompressor");
  }
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  std::string out;
  char buffer[1 << 15];
  int rc = Z_OK;
  while (rc == Z_OK) {
    zs.next_out = reinterpret_cast<Bytef*>(buffer);
    zs.avail_out = sizeof(buffer);
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) break;
    out.append(buffer, sizeof(buffer) - zs.avail_out);
  }
  const uLong consumed = zs.total_in;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) Malformed("gzip stream is corrupt or truncated");
  if (consumed != data.size()) Malformed("trailing bytes after gzip stream");
  return out;
}

}  // namespace svcsdk
