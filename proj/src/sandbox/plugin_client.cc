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

#include "svcsdk/sandbox/plugin_client.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "svcsdk/common/error.h"

namespace svcsdk {
namespace {

constexpr std::size_t kMaxLine = 16 << 20;

}  // namespace

PluginProcess::PluginProcess(const std::filesystem::path& directory,
                             const std::string& entry,
                             std::chrono::milliseconds timeout)
    : name_((directory / entry).string()), timeout_(timeout) {
  const std::filesystem::path program = directory / entry;
  if (!std::filesystem::is_regular_file(program)) {
    throw Error(ErrorCode::kPlugin, "plugin entry " + name_ + " not found");
  }
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
    throw Error(ErrorCode::kPlugin, "cannot create plugin channel");
  }
  const std::string dir = std::filesystem::absolute(directory).string();
  const std::string exe = std::filesystem::absolute(program).string();
  pid_ = ::fork();
  if (pid_ < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw Error(ErrorCode::kPlugin, "cannot start plugin " + name_);
  }
  if (pid_ == 0) {
    ::dup2(fds[1], STDIN_FILENO);
    ::dup2(fds[1], STDOUT_FILENO);
    if (::chdir(dir.c_str()) != 0) ::_exit(127);
    if (::access(exe.c_str(), X_OK) == 0) {
      ::execl(exe.c_str(), exe.c_str(), static_cast<char*>(nullptr));
    } else {
      ::execl("/bin/sh", "sh", exe.c_str(), static_cast<char*>(nullptr));
    }
    ::_exit(127);
  }
  ::close(fds[1]);
  fd_ = fds[0];
}

PluginProcess::~PluginProcess() { Stop(); }

void PluginProcess::Stop() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    fd_ = -1;
  }
  if (pid_ > 0) {
    // Give the child a moment to exit on EOF before killing it.
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, nullptr, WNOHANG) == pid_) {
        pid_ = -1;
        return;
      }
      ::usleep(2000);
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }
}

nlohmann::json PluginProcess::Request(const nlohmann::json& request) {
  if (fd_ < 0) throw Error(ErrorCode::kPlugin, "plugin " + name_ + " stopped");
  const std::string line = request.dump() + "\n";
  std::size_t sent = 0;
  while (sent < line.size()) {
    ssize_t n = ::send(fd_, line.data() + sent, line.size() - sent,
                       MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      Stop();
      throw Error(ErrorCode::kPlugin, "plugin " + name_ + " closed its input");
    }
    sent += static_cast<std::size_t>(n);
  }
  const std::string response = ReadLine();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(response);
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::kPlugin,
                "plugin " + name_ + " sent a malformed line: " +
                    response.substr(0, 200));
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    throw Error(ErrorCode::kPlugin,
                "plugin " + name_ + " response lacks a string \"type\"");
  }
  return doc;
}

std::string PluginProcess::ReadLine() {
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  while (true) {
    const std::size_t newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    if (buffer_.size() > kMaxLine) {
      Stop();
      throw Error(ErrorCode::kPlugin, "plugin " + name_ + " line too long");
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      Stop();
      throw Error(ErrorCode::kPlugin,
                  "plugin " + name_ + " timed out after " +
                      std::to_string(timeout_.count()) + " ms");
    }
    pollfd pfd{fd_, POLLIN, 0};
    int rc = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (rc < 0 && errno == EINTR) continue;
    if (rc == 0) continue;
    char chunk[4096];
    ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      Stop();
      throw Error(ErrorCode::kPlugin,
                  "plugin " + name_ + " exited without a response");
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

}  // namespace svcsdk
