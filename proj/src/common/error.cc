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

#include "svcsdk/common/error.h"

namespace svcsdk {
namespace {

std::string Render(ErrorCode code, const std::string& message,
                   const std::vector<ErrorDetail>& details) {
  std::string out(ErrorCodeName(code));
  out += ": ";
  out += message;
  for (const auto& detail : details) {
    out += "\n  ";
    if (!detail.location.empty()) {
      out += detail.location;
      out += ": ";
    }
    out += detail.message;
  }
  return out;
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kUnresolvedReference: return "UnresolvedReference";
    case ErrorCode::kFlavorMismatch: return "FlavorMismatch";
    case ErrorCode::kRejectedUnvalidated: return "RejectedUnvalidated";
    case ErrorCode::kDuplicateEntry: return "DuplicateEntry";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kCorruptEntry: return "CorruptEntry";
    case ErrorCode::kUnknownTemplate: return "UnknownTemplate";
    case ErrorCode::kTargetNotFound: return "TargetNotFound";
    case ErrorCode::kValidationGate: return "ValidationGate";
    case ErrorCode::kSigning: return "SigningError";
    case ErrorCode::kMalformedArchive: return "MalformedArchive";
    case ErrorCode::kPathTraversal: return "PathTraversal";
    case ErrorCode::kNoFeasiblePlacement: return "NoFeasiblePlacement";
    case ErrorCode::kPlugin: return "PluginError";
    case ErrorCode::kRange: return "RangeError";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

Error::Error(ErrorCode code, std::string message,
             std::vector<ErrorDetail> details)
    : std::runtime_error(Render(code, message, details)),
      code_(code),
      details_(std::move(details)) {}

}  // namespace svcsdk
