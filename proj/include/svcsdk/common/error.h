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

#ifndef SVCSDK_COMMON_ERROR_H_
#define SVCSDK_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace svcsdk {

// Failure categories raised across the SDK. Each maps to one named error of
// the public contract (ParseError, SchemaError, ...).
enum class ErrorCode {
  kParse,
  kSchema,
  kUnresolvedReference,
  kFlavorMismatch,
  kRejectedUnvalidated,
  kDuplicateEntry,
  kNotFound,
  kCorruptEntry,
  kUnknownTemplate,
  kTargetNotFound,
  kValidationGate,
  kSigning,
  kMalformedArchive,
  kPathTraversal,
  kNoFeasiblePlacement,
  kPlugin,
  kRange,
  kInsufficientData,
  kInfeasible,
  kIo,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// One located problem attached to an error, e.g. a schema violation at a
// field path or a missing (name, version) pair.
struct ErrorDetail {
  std::string location;
  std::string message;

  bool operator==(const ErrorDetail&) const = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message,
        std::vector<ErrorDetail> details = {});

  ErrorCode code() const { return code_; }
  const std::vector<ErrorDetail>& details() const { return details_; }

 private:
  ErrorCode code_;
  std::vector<ErrorDetail> details_;
};

}  // namespace svcsdk

#endif  // SVCSDK_COMMON_ERROR_H_
