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

#include "svcsdk/validator/cycles.h"

#include <map>

namespace svcsdk {
namespace {

class JohnsonSearch {
 public:
  JohnsonSearch(std::vector<std::vector<std::size_t>> adjacency,
                std::size_t limit)
      : adjacency_(std::move(adjacency)),
        limit_(limit),
        blocked_(adjacency_.size(), false),
        blocked_by_(adjacency_.size()) {}

  std::vector<std::vector<std::size_t>> Run() {
    for (start_ = 0; start_ < adjacency_.size() && !Full(); ++start_) {
      std::fill(blocked_.begin(), blocked_.end(), false);
      for (auto& set : blocked_by_) set.clear();
      Circuit(start_);
    }
    return std::move(cycles_);
  }

 private:
  bool Full() const { return cycles_.size() >= limit_; }

  void Unblock(std::size_t node) {
    blocked_[node] = false;
    auto pending = std::move(blocked_by_[node]);
    blocked_by_[node].clear();
    for (std::size_t w : pending) {
      if (blocked_[w]) Unblock(w);
    }
  }

  bool Circuit(std::size_t node) {
    bool found = false;
    stack_.push_back(node);
    blocked_[node] = true;
    for (std::size_t next : adjacency_[node]) {
      if (Full()) break;
      if (next < start_) continue;
      if (next == start_) {
        cycles_.push_back(stack_);
        found = true;
      } else if (!blocked_[next] && Circuit(next)) {
        found = true;
      }
    }
    if (found) {
      Unblock(node);
    } else {
      for (std::size_t next : adjacency_[node]) {
        if (next >= start_) blocked_by_[next].insert(node);
      }
    }
    stack_.pop_back();
    return found;
  }

  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t limit_;
  std::size_t start_ = 0;
  std::vector<bool> blocked_;
  std::vector<std::set<std::size_t>> blocked_by_;
  std::vector<std::size_t> stack_;
  std::vector<std::vector<std::size_t>> cycles_;
};

}  // namespace

std::vector<std::vector<std::string>> ElementaryCycles(
    const std::set<GraphEdge>& edges, std::size_t limit) {
  std::map<std::string, std::size_t> index;
  for (const auto& [from, to] : edges) {
    index.emplace(from, 0);
    index.emplace(to, 0);
  }
  std::vector<std::string> names;
  for (auto& [name, i] : index) {
    i = names.size();
    names.push_back(name);
  }
  std::vector<std::vector<std::size_t>> adjacency(names.size());
  for (const auto& [from, to] : edges) {
    adjacency[index[from]].push_back(index[to]);
  }

  std::vector<std::vector<std::string>> cycles;
  if (limit == 0) return cycles;
  for (const auto& cycle : JohnsonSearch(std::move(adjacency), limit).Run()) {
    std::vector<std::string> named;
    named.reserve(cycle.size());
    for (std::size_t i : cycle) named.push_back(names[i]);
    cycles.push_back(std::move(named));
  }
  return cycles;
}

}  // namespace svcsdk
