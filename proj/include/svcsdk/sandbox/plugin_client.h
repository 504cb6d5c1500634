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

#ifndef SVCSDK_SANDBOX_PLUGIN_CLIENT_H_
#define SVCSDK_SANDBOX_PLUGIN_CLIENT_H_

#include <sys/types.h>

#include <chrono>
#include <filesystem>
#include <string>

#include "json.hpp"

namespace svcsdk {

inline constexpr std::chrono::milliseconds kPluginTimeout{5000};

// A control-function plugin running as a child process. Requests and
// responses are single JSON lines on the child's stdin/stdout; the process is
// started once and reused for every request of a run.
class PluginProcess {
 public:
  // Starts `entry` with `directory` as working directory. Throws
  // Error(kPlugin) if the process cannot be started.
  PluginProcess(const std::filesystem::path& directory,
                const std::string& entry,
                std::chrono::milliseconds timeout = kPluginTimeout);
  ~PluginProcess();
  PluginProcess(const PluginProcess&) = delete;
  PluginProcess& operator=(const PluginProcess&) = delete;

  // Sends one request and waits for one response line. Throws Error(kPlugin)
  // on timeout, exit, malformed JSON or a response without a string "type".
  nlohmann::json Request(const nlohmann::json& request);

  const std::string& name() const { return name_; }

 private:
  std::string ReadLine();
  void Stop();

  std::string name_;
  std::chrono::milliseconds timeout_;
  pid_t pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
};

}  // namespace svcsdk

#endif  // SVCSDK_SANDBOX_PLUGIN_CLIENT_H_
