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

#ifndef SVCSDK_TESTS_SUPPORT_TEST_SUPPORT_H_
#define SVCSDK_TESTS_SUPPORT_TEST_SUPPORT_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "svcsdk/descriptor/model.h"
#include "svcsdk/packager/keys.h"
#include "svcsdk/sandbox/infrastructure.h"
#include "svcsdk/sandbox/trace.h"
#include "svcsdk/telemetry/metrics.h"
#include "svcsdk/validator/issue.h"
#include "svcsdk/validator/validator.h"

namespace svcsdk::testing {

std::filesystem::path FixturePath(const std::string& relative);
std::string ReadFixture(const std::string& relative);

// NSD plus every sibling vnfd-*.yaml of a fixture directory.
ServiceSources FixtureSources(const std::string& dir,
                              const std::string& nsd = "nsd.yaml");
ResolvedService LoadService(const std::string& dir,
                            const std::string& nsd = "nsd.yaml");
InfrastructureModel LoadInfra(const std::string& relative = "infra/4pop.yaml");
TrafficTrace LoadTrace(const std::string& relative);

// Deterministic key for tests that need a stable signer.
KeyPair TestKey(std::uint8_t seed_byte = 7);

// Package tree held in memory: archive path to (contents, executable).
struct FileTree {
  std::map<std::string, std::pair<std::string, bool>> files;

  // Replaces the first occurrence of `from`; throws if absent.
  void Replace(const std::string& path, const std::string& from,
               const std::string& to);
  void Put(const std::string& path, std::string contents,
           bool executable = false);
  // Signs the tree without the validation gate.
  std::string Seal(const KeyPair& key, std::int64_t created_at = 1700000000) const;
  // Writes the tree below `root`.
  void WriteTo(const std::filesystem::path& root) const;
};

// The CDN fixture laid out as a package tree.
FileTree CdnTree();

struct DefectCase {
  std::string name;
  std::set<IssueCode> seeded;
  std::function<ValidationReport()> check;
};

// Seeded-defect corpus: one case per issue code plus multi-defect cases.
std::vector<DefectCase> DefectCorpus();

std::set<IssueCode> CodesOf(const ValidationReport& report);
std::string CodeList(const std::set<IssueCode>& codes);

// Rotates a cycle so that its smallest node comes first.
std::vector<std::string> CanonicalCycle(std::vector<std::string> cycle);

// Every elementary cycle found by trying each ordering of each node subset.
std::set<std::vector<std::string>> BruteForceCycles(
    const std::set<GraphEdge>& edges);

// Service whose VNF adjacency equals `edges`; VNFs in `steering` carry the
// traffic-steering capability.
ResolvedService DigraphService(const std::vector<std::string>& nodes,
                               const std::set<GraphEdge>& edges,
                               const std::set<std::string>& steering);

// Benchmark metrics for one VNF: per config, offered load sweeps from half
// to one and a half times the true saturation; each sample's capacity is
// saturation x (1 + noise x N(0,1)).
MetricSeries BenchmarkSeries(const std::string& vnf,
                             const std::function<double(double)>& saturation,
                             const std::vector<double>& configs, int samples,
                             double noise, std::uint64_t seed);

}  // namespace svcsdk::testing

#endif  // SVCSDK_TESTS_SUPPORT_TEST_SUPPORT_H_
