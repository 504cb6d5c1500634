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

#ifndef SVCSDK_VALIDATOR_ISSUE_H_
#define SVCSDK_VALIDATOR_ISSUE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace svcsdk {

enum class IssueCode {
  // Descriptor and service-graph analysis.
  kInvalidConnectionPoint,
  kUnresolvedReference,
  kCycle,
  kSteeredCycle,
  kRepeatedPath,
  kDisconnectedVnf,
  kLinkBottleneck,
  kVnfBottleneck,
  kPluginEntrypointMissing,
  kPluginProtocolMismatch,
  kPluginBoundsMissing,
  kSchema,
  // Package ingest.
  kBadSignature,
  kUnknownSigner,
  kDigestMismatch,
  kMalformedArchive,
  // Placement verification.
  kCapacityExceeded,
  kUnplacedVnf,
  kUnknownPop,
  kUnroutableLink,
  kLatencyViolation,
};

enum class Severity { kError, kWarning };

std::string_view IssueCodeName(IssueCode code);
std::optional<IssueCode> ParseIssueCode(std::string_view name);
std::string_view SeverityName(Severity severity);

struct Issue {
  IssueCode code;
  Severity severity;
  // Descriptor path ("/virtual_links[0].bandwidth_mbps") or graph element
  // ids ("vnf:router", "link:up-1", "cycle:a->b->c").
  std::string location;
  std::string message;
  // Graph elements involved, in order; for cycles the node sequence.
  std::vector<std::string> elements;

  bool operator==(const Issue&) const = default;
};

// Default severity of each code. CYCLE is always an error, STEERED_CYCLE and
// REPEATED_PATH always warnings.
Severity DefaultSeverity(IssueCode code);

Issue MakeIssue(IssueCode code, std::string location, std::string message,
                std::vector<std::string> elements = {});

class ValidationReport {
 public:
  ValidationReport() = default;
  explicit ValidationReport(std::vector<Issue> issues);

  void Add(Issue issue);
  void Merge(const ValidationReport& other);

  // True iff no issue has error severity.
  bool passed() const;
  const std::vector<Issue>& issues() const { return issues_; }
  std::size_t CountErrors() const;
  std::size_t CountWarnings() const;
  bool Has(IssueCode code) const;
  std::vector<IssueCode> Codes() const;

  // JSON array of {code, severity, location, message}.
  std::string ToJson() const;
  // Fixed-width table for terminals.
  std::string ToTable() const;

  bool operator==(const ValidationReport&) const = default;

 private:
  void Sort();

  std::vector<Issue> issues_;
};

}  // namespace svcsdk

#endif  // SVCSDK_VALIDATOR_ISSUE_H_
