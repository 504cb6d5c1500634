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

#ifndef SVCSDK_CLI_CLI_H_
#define SVCSDK_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "svcsdk/common/error.h"

namespace svcsdk {

enum ExitStatus : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitIo = 2,
  kExitSignature = 3,
  kExitAborted = 4,
  kExitPushRejected = 5,
};

// Exit status for an error escaping a command.
ExitStatus ExitStatusFor(ErrorCode code);

// Runs one invocation; args excludes the program name. Human output goes to
// `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace svcsdk

#endif  // SVCSDK_CLI_CLI_H_
