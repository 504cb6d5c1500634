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

#include "svcsdk/validator/issue.h"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "json.hpp"

namespace svcsdk {
namespace {

constexpr std::array<std::pair<IssueCode, std::string_view>, 21> kNames = {{
    {IssueCode::kInvalidConnectionPoint, "INVALID_CONNECTION_POINT"},
    {IssueCode::kUnresolvedReference, "UNRESOLVED_REFERENCE"},
    {IssueCode::kCycle, "CYCLE"},
    {IssueCode::kSteeredCycle, "STEERED_CYCLE"},
    {IssueCode::kRepeatedPath, "REPEATED_PATH"},
    {IssueCode::kDisconnectedVnf, "DISCONNECTED_VNF"},
    {IssueCode::kLinkBottleneck, "LINK_BOTTLENECK"},
    {IssueCode::kVnfBottleneck, "VNF_BOTTLENECK"},
    {IssueCode::kPluginEntrypointMissing, "PLUGIN_ENTRYPOINT_MISSING"},
    {IssueCode::kPluginProtocolMismatch, "PLUGIN_PROTOCOL_MISMATCH"},
    {IssueCode::kPluginBoundsMissing, "PLUGIN_BOUNDS_MISSING"},
    {IssueCode::kSchema, "SCHEMA"},
    {IssueCode::kBadSignature, "BAD_SIGNATURE"},
    {IssueCode::kUnknownSigner, "UNKNOWN_SIGNER"},
    {IssueCode::kDigestMismatch, "DIGEST_MISMATCH"},
    {IssueCode::kMalformedArchive, "MALFORMED_ARCHIVE"},
    {IssueCode::kCapacityExceeded, "CAPACITY_EXCEEDED"},
    {IssueCode::kUnplacedVnf, "UNPLACED_VNF"},
    {IssueCode::kUnknownPop, "UNKNOWN_POP"},
    {IssueCode::kUnroutableLink, "UNROUTABLE_LINK"},
    {IssueCode::kLatencyViolation, "LATENCY_VIOLATION"},
}};

}  // namespace

std::string_view IssueCodeName(IssueCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "UNKNOWN";
}

std::optional<IssueCode> ParseIssueCode(std::string_view name) {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

std::string_view SeverityName(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

Severity DefaultSeverity(IssueCode code) {
  switch (code) {
    case IssueCode::kSteeredCycle:
    case IssueCode::kRepeatedPath:
    case IssueCode::kDisconnectedVnf:
    case IssueCode::kLinkBottleneck:
    case IssueCode::kVnfBottleneck:
      return Severity::kWarning;
    default:
      return Severity::kError;
  }
}

Issue MakeIssue(IssueCode code, std::string location, std::string message,
                std::vector<std::string> elements) {
  return Issue{code, DefaultSeverity(code), std::move(location),
               std::move(message), std::move(elements)};
}

ValidationReport::ValidationReport(std::vector<Issue> issues)
    : issues_(std::move(issues)) {
  Sort();
}

void ValidationReport::Add(Issue issue) {
  issues_.push_back(std::move(issue));
  Sort();
}

void ValidationReport::Merge(const ValidationReport& other) {
  issues_.insert(issues_.end(), other.issues_.begin(), other.issues_.end());
  Sort();
}

void ValidationReport::Sort() {
  std::stable_sort(issues_.begin(), issues_.end(),
                   [](const Issue& a, const Issue& b) {
                     return std::make_tuple(IssueCodeName(a.code),
                                            std::cref(a.location),
                                            std::cref(a.message)) <
                            std::make_tuple(IssueCodeName(b.code),
                                            std::cref(b.location),
                                            std::cref(b.message));
                   });
}

bool ValidationReport::passed() const { return CountErrors() == 0; }

std::size_t ValidationReport::CountErrors() const {
  return std::count_if(issues_.begin(), issues_.end(), [](const Issue& i) {
    return i.severity == Severity::kError;
  });
}

std::size_t ValidationReport::CountWarnings() const {
  return issues_.size() - CountErrors();
}

bool ValidationReport::Has(IssueCode code) const {
  return std::any_of(issues_.begin(), issues_.end(),
                     [code](const Issue& i) { return i.code == code; });
}

std::vector<IssueCode> ValidationReport::Codes() const {
  std::set<std::string_view> seen;
  std::vector<IssueCode> codes;
  for (const auto& issue : issues_) {
    if (seen.insert(IssueCodeName(issue.code)).second) {
      codes.push_back(issue.code);
    }
  }
  return codes;
}

std::string ValidationReport::ToJson() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& issue : issues_) {
    out.push_back({{"code", IssueCodeName(issue.code)},
                   {"severity", SeverityName(issue.severity)},
                   {"location", issue.location},
                   {"message", issue.message}});
  }
  return out.dump(2);
}

std::string ValidationReport::ToTable() const {
  std::ostringstream out;
  if (issues_.empty()) {
    out << "no issues\n";
  }
  for (const auto& issue : issues_) {
    std::string code(IssueCodeName(issue.code));
    std::string severity(SeverityName(issue.severity));
    out << severity << std::string(8 - severity.size(), ' ') << code
        << std::string(code.size() < 27 ? 27 - code.size() : 1, ' ')
        << issue.location << "  " << issue.message << "\n";
  }
  out << (passed() ? "PASSED" : "FAILED") << ": " << CountErrors()
      << " error(s), " << CountWarnings() << " warning(s)\n";
  return out.str();
}

}  // namespace svcsdk
