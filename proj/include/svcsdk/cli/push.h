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

#ifndef SVCSDK_CLI_PUSH_H_
#define SVCSDK_CLI_PUSH_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "svcsdk/packager/package.h"

namespace svcsdk {

inline constexpr std::string_view kPushPath = "/api/v1/packages";

struct PushTarget {
  enum class Scheme { kSandbox, kHttp, kHttps };
  Scheme scheme = Scheme::kSandbox;
  // Workspace directory for sandbox targets, base URL otherwise.
  std::string location;
  std::string token;

  // "sandbox:<dir>", "http://host[:port][/prefix]" or "https://...".
  // Throws Error(kInvalidArgument) for other schemes or a missing token.
  static PushTarget Parse(std::string_view text, std::string token = {});
};

struct PushResult {
  bool accepted = false;
  int http_status = 0;
  std::string package_id;
  std::filesystem::path workspace;
  std::string message;
};

// Unpacks a verified package into a fresh run workspace under the target
// directory and re-validates it there.
PushResult PushToSandbox(std::string_view bytes,
                         const std::filesystem::path& root);

// Uploads the package; throws Error(kIo) when no HTTP response arrives.
PushResult PushToRemote(std::string_view bytes, const PushTarget& target);

PushResult Push(std::string_view bytes, const PushTarget& target);

}  // namespace svcsdk

#endif  // SVCSDK_CLI_PUSH_H_
