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

#include "svcsdk/cli/push.h"

#include <string>

#include "httplib.h"
#include "json.hpp"
#include "svcsdk/common/error.h"
#include "svcsdk/common/util.h"
#include "svcsdk/validator/validator.h"

namespace svcsdk {
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kSandboxPrefix = "sandbox:";

// Splits "http://host:port/prefix" into the origin and the path prefix.
std::pair<std::string, std::string> SplitUrl(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path_start), prefix};
}

}  // namespace

PushTarget PushTarget::Parse(std::string_view text, std::string token) {
  PushTarget target;
  if (text.starts_with(kSandboxPrefix)) {
    target.scheme = Scheme::kSandbox;
    target.location = std::string(text.substr(kSandboxPrefix.size()));
    if (target.location.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sandbox target needs a directory: sandbox:<dir>");
    }
    return target;
  }
  if (text.starts_with("http://")) {
    target.scheme = Scheme::kHttp;
  } else if (text.starts_with("https://")) {
    target.scheme = Scheme::kHttps;
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "push target must be sandbox:<dir>, http:// or https://, got '" +
                    std::string(text) + "'");
  }
  if (token.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "remote push target needs a bearer token");
  }
  target.location = std::string(text);
  target.token = std::move(token);
  return target;
}

PushResult PushToSandbox(std::string_view bytes, const fs::path& root) {
  const std::string digest = Sha256Hex(bytes);
  TempDir staging("svcsdk-push");
  const PackageManifest manifest = Unpack(bytes, staging.path());
  const fs::path workspace =
      root / (manifest.package_name + "-" + manifest.package_version + "-" +
              digest.substr(0, 12));
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + root.string() + ": " +
                                    ec.message());
  }
  fs::remove_all(workspace, ec);
  Unpack(bytes, workspace);
  PushResult result;
  const ValidationReport report = ValidateSources(LoadPackageTree(workspace));
  result.accepted = report.passed();
  result.workspace = workspace;
  result.package_id = manifest.package_name + "-" +
                      manifest.package_version + "-" + digest.substr(0, 12);
  result.message = result.accepted ? "ready" : "workspace failed validation";
  return result;
}

PushResult PushToRemote(std::string_view bytes, const PushTarget& target) {
  auto [origin, prefix] = SplitUrl(target.location);
  httplib::Client client(origin);
  client.set_connection_timeout(10);
  client.set_read_timeout(60);
  client.set_write_timeout(60);
  const httplib::Headers headers = {
      {"Authorization", "Bearer " + target.token}};
  auto response = client.Post(prefix + std::string(kPushPath), headers,
                              bytes.data(), bytes.size(), "application/gzip");
  if (!response) {
    throw Error(ErrorCode::kIo, "push to " + target.location + " failed: " +
                                    httplib::to_string(response.error()));
  }
  PushResult result;
  result.http_status = response->status;
  if (response->status == 201) {
    nlohmann::json body = nlohmann::json::parse(response->body, nullptr, false);
    if (body.is_discarded() || !body.contains("package_id") ||
        !body["package_id"].is_string()) {
      throw Error(ErrorCode::kParse,
                  "push accepted but the response carries no package_id");
    }
    result.accepted = true;
    result.package_id = body["package_id"].get<std::string>();
    result.message = "accepted";
    return result;
  }
  result.message = "rejected with HTTP " + std::to_string(response->status);
  if (!response->body.empty()) result.message += ": " + response->body;
  return result;
}

PushResult Push(std::string_view bytes, const PushTarget& target) {
  if (target.scheme == PushTarget::Scheme::kSandbox) {
    return PushToSandbox(bytes, target.location);
  }
  return PushToRemote(bytes, target);
}

}  // namespace svcsdk
