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

#include "svcsdk/sandbox/emulator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "svcsdk/catalogue/templates.h"
#include "svcsdk/common/error.h"
#include "svcsdk/common/util.h"
#include "svcsdk/telemetry/alarms.h"
#include "svcsdk/validator/validator.h"

namespace svcsdk {
namespace {

constexpr double kCeilSlack = 1e-9;

enum class VnfmKind { kNone, kThreshold, kPlugin };

struct Vnfm {
  VnfmKind kind = VnfmKind::kNone;
  ThresholdParameters params;
  PluginRef plugin;
  std::optional<PluginManifest> manifest;
  int consecutive = 0;
};

struct TickStats {
  std::int64_t tick = 0;
  double offered = 0;
  double achieved = 0;
  double loss = 0;
  double utilization = 0;
};

struct AlarmState {
  AlarmRule rule;
  std::optional<std::int64_t> start;
  std::int64_t last = 0;
  bool raised = false;
};

struct Abort {
  std::string reason;
  std::string message;
};

int CeilCount(double value) {
  return static_cast<int>(std::ceil(value - kCeilSlack));
}

std::string ReportText(const ValidationReport& report) {
  std::string text;
  for (const auto& issue : report.issues()) {
    if (issue.severity != Severity::kError) continue;
    if (!text.empty()) text += "; ";
    text += std::string(IssueCodeName(issue.code)) + " " + issue.location +
            ": " + issue.message;
  }
  return text;
}

nlohmann::json IssuesJson(const ValidationReport& report) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& issue : report.issues()) {
    list.push_back({{"code", std::string(IssueCodeName(issue.code))},
                    {"severity", std::string(SeverityName(issue.severity))},
                    {"location", issue.location},
                    {"message", issue.message}});
  }
  return list;
}

class Emulation {
 public:
  Emulation(const ResolvedService& service, const InfrastructureModel& infra,
            const TrafficTrace& trace, const EmulationConfig& config)
      : trace_(trace), config_(config), detector_(config.runaway) {
    result_.state.service = service;
    result_.state.infrastructure = infra;
  }

  EmulationResult Run() {
    try {
      Setup();
      if (Deploy()) {
        const std::int64_t last = trace_.LastTick();
        for (std::int64_t t = 0; t <= last && !abort_; ++t) {
          Tick(t);
          result_.ticks_run = t + 1;
        }
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPlugin) throw;
      SetAbort(current_tick_, std::string(kAbortPluginError), e.what());
    }
    plugins_.clear();
    std::stable_sort(result_.state.metrics.begin(),
                     result_.state.metrics.end(),
                     [](const MetricRecord& a, const MetricRecord& b) {
                       return std::tie(a.vnf_id, a.tick) <
                              std::tie(b.vnf_id, b.tick);
                     });
    if (abort_) {
      result_.abort_reason = abort_->reason;
      result_.abort_message = abort_->message;
    }
    return std::move(result_);
  }

 private:
  const ResolvedService& service() const { return result_.state.service; }
  const InfrastructureModel& infra() const {
    return result_.state.infrastructure;
  }

  void Setup() {
    if (config_.decision_interval < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "decision interval must be at least 1 tick");
    }
    if (config_.instantiation_delay < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "instantiation delay must be at least 1 tick");
    }
    if (config_.policy && *config_.policy != kNoPolicy &&
        *config_.policy != kThresholdPolicy) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown VNFM policy '" + *config_.policy + "'");
    }
    for (const auto& [cp, samples] : trace_.samples) {
      if (service().service.FindServiceCp(cp) == nullptr) {
        throw Error(ErrorCode::kInvalidArgument,
                    "trace names connection point '" + cp +
                        "' that the service does not declare");
      }
    }
    for (const auto& vnf : service().service.vnfs) {
      VnfState state;
      state.vnf_id = vnf.vnf_id;
      state.flavor = service().Flavor(vnf.vnf_id);
      state.instances.push_back(InstanceId(vnf.vnf_id, 1));
      state.next_index = 2;
      state.per_instance_capacity = CapacityFor(vnf.vnf_id, state.flavor);
      result_.state.vnfs.push_back(std::move(state));
      vnfms_[vnf.vnf_id] = VnfmFor(vnf.vnf_id);
    }
    for (const auto& rule : AlarmRulesOf(service().service)) {
      alarms_.push_back(AlarmState{rule, std::nullopt, 0, false});
    }
  }

  Vnfm VnfmFor(const std::string& vnf_id) const {
    Vnfm vnfm;
    const auto& entries = service().service.control_functions.vnfm;
    auto it = entries.find(vnf_id);
    const BuiltinPolicy* builtin =
        it == entries.end() ? nullptr : std::get_if<BuiltinPolicy>(&it->second);
    if (config_.policy) {
      if (*config_.policy == kThresholdPolicy) {
        vnfm.kind = VnfmKind::kThreshold;
        if (builtin != nullptr && builtin->name == kThresholdPolicy) {
          vnfm.params = ThresholdParameters::From(*builtin);
        }
      }
      return vnfm;
    }
    if (it == entries.end()) return vnfm;
    if (builtin != nullptr) {
      if (builtin->name == kThresholdPolicy) {
        vnfm.kind = VnfmKind::kThreshold;
        vnfm.params = ThresholdParameters::From(*builtin);
      }
      return vnfm;
    }
    vnfm.kind = VnfmKind::kPlugin;
    vnfm.plugin = std::get<PluginRef>(it->second);
    if (!config_.plugin_root) {
      throw Error(ErrorCode::kPlugin,
                  "VNFM plugin " + vnfm.plugin.path + " needs a plugin root");
    }
    try {
      vnfm.manifest =
          ReadPluginManifest(*config_.plugin_root / vnfm.plugin.path);
    } catch (const Error& e) {
      throw Error(ErrorCode::kPlugin, std::string("VNFM plugin ") +
                                          vnfm.plugin.path + ": " + e.what());
    }
    return vnfm;
  }

  std::optional<double> CapacityFor(const std::string& vnf_id,
                                    const ResourceFlavor& flavor) const {
    auto it = config_.profiles.find(vnf_id);
    if (it != config_.profiles.end()) {
      return std::max(0.0, it->second.Saturation(
                               static_cast<double>(flavor.cpu_cores)));
    }
    return service().Vnfd(vnf_id).ThroughputCap(flavor.name);
  }

  PluginProcess& PluginFor(const PluginRef& ref) {
    const std::string key = ref.path + "/" + ref.entry;
    auto it = plugins_.find(key);
    if (it == plugins_.end()) {
      if (!config_.plugin_root) {
        throw Error(ErrorCode::kPlugin,
                    "plugin " + ref.path + " needs a plugin root");
      }
      it = plugins_
               .emplace(key, std::make_unique<PluginProcess>(
                                 *config_.plugin_root / ref.path, ref.entry,
                                 config_.plugin_timeout))
               .first;
    }
    return *it->second;
  }

  VnfState& StateOf(const std::string& vnf_id) {
    for (auto& s : result_.state.vnfs) {
      if (s.vnf_id == vnf_id) return s;
    }
    throw std::logic_error("unknown VNF " + vnf_id);
  }

  void SetAbort(std::int64_t tick, std::string reason, std::string message,
                nlohmann::json extra = nlohmann::json::object()) {
    extra["reason"] = reason;
    extra["message"] = message;
    result_.log.Append(tick, "abort", std::move(extra));
    abort_ = Abort{std::move(reason), std::move(message)};
  }

  // Places instances with the service's NFVO; nullopt plus a message when
  // the result would not pass check_placement.
  std::optional<Placement> PlaceAll(const std::vector<VnfInstance>& instances,
                                    const Placement& current,
                                    ValidationReport* report,
                                    std::string* failure) {
    Placement next;
    const auto& nfvo = service().service.control_functions.nfvo;
    if (const auto* ref = std::get_if<PluginRef>(&nfvo)) {
      next = PlaceWithPlugin(PluginFor(*ref), service(), infra(), instances,
                             current);
    } else {
      try {
        next = PlaceFirstFit(service(), infra(), instances, current);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoFeasiblePlacement) throw;
        *failure = e.what();
        return std::nullopt;
      }
    }
    *report = CheckPlacement(next, service(), infra(), instances);
    if (!report->passed()) {
      *failure = ReportText(*report);
      return std::nullopt;
    }
    return next;
  }

  void AssertConservation() const {
    const auto usage =
        UsageByPop(result_.state.placement, result_.state.Instances());
    for (const auto& pop : infra().pops) {
      auto it = usage.find(pop.id);
      if (it == usage.end()) continue;
      if (it->second.cpu_cores > pop.cpu_cores ||
          it->second.memory_mb > pop.memory_mb ||
          it->second.storage_gb > pop.storage_gb) {
        throw std::logic_error("PoP " + pop.id + " allocated beyond capacity");
      }
    }
  }

  nlohmann::json PlacementRecord() const {
    return {{"instances", InstancesJson(result_.state.Instances())},
            {"assignments", result_.state.placement}};
  }

  bool Deploy() {
    current_tick_ = 0;
    const std::vector<VnfInstance> instances = result_.state.Instances();
    ValidationReport report;
    std::string failure;
    std::optional<Placement> placement;
    placement = PlaceAll(instances, {}, &report, &failure);
    if (!placement) {
      result_.placement_report = report;
      if (report.issues().empty()) {
        SetAbort(0, std::string(kAbortExhausted), failure);
      } else {
        SetAbort(0, std::string(kAbortPlacementRejected),
                 "initial placement rejected: " + failure,
                 {{"issues", IssuesJson(report)}});
      }
      return false;
    }
    result_.state.placement = *placement;
    AssertConservation();
    nlohmann::json record = PlacementRecord();
    record["service"] = ServiceGraphJson(service());
    record["infrastructure"] = infra().ToJson();
    record["seed"] = config_.seed;
    record["config"] = {
        {"decision_interval", config_.decision_interval},
        {"instantiation_delay", config_.instantiation_delay},
        {"strict", config_.strict},
        {"policy", config_.policy ? *config_.policy : std::string("nsd")}};
    result_.log.Append(0, "deploy", std::move(record));
    return true;
  }

  void Tick(std::int64_t t) {
    current_tick_ = t;
    Propagate(t);
    if (abort_) return;
    EvaluateAlarms(t);
    if (t % config_.decision_interval == config_.decision_interval - 1) {
      Decide(t);
      if (abort_) return;
    }
    ApplyDue(t);
  }

  void Propagate(std::int64_t t) {
    const auto& s = service().service;
    std::map<std::string, double> remaining;
    std::map<std::string, double> offered;
    std::map<std::string, double> achieved;
    for (const auto& v : result_.state.vnfs) {
      remaining[v.vnf_id] =
          v.per_instance_capacity
              ? *v.per_instance_capacity * static_cast<double>(v.instances.size())
              : std::numeric_limits<double>::infinity();
    }
    std::map<std::string, int> paths_from;
    for (const auto& graph : s.forwarding_graphs) {
      if (!graph.path.empty() && graph.path.front().IsService()) {
        ++paths_from[graph.path.front().cp];
      }
    }
    for (const auto& graph : s.forwarding_graphs) {
      if (graph.path.empty() || !graph.path.front().IsService()) continue;
      const std::string& cp = graph.path.front().cp;
      double load = trace_.OfferedAt(cp, t) / paths_from[cp];
      std::string previous;
      for (std::size_t i = 1; i < graph.path.size(); ++i) {
        const CpRef& step = graph.path[i];
        if (step.IsService()) {
          previous.clear();
          continue;
        }
        if (step.owner == previous) continue;
        previous = step.owner;
        offered[step.owner] += load;
        const double absorbed = std::min(load, remaining[step.owner]);
        remaining[step.owner] -= absorbed;
        achieved[step.owner] += absorbed;
        load = absorbed;
      }
    }

    nlohmann::json vnfs = nlohmann::json::array();
    for (const auto& v : result_.state.vnfs) {
      const double n = static_cast<double>(v.instances.size());
      const double in = offered[v.vnf_id];
      const double out = std::min(achieved[v.vnf_id], in);
      const double loss = in > 0 ? std::clamp((in - out) / in, 0.0, 1.0) : 0.0;
      double util = 0;
      if (v.per_instance_capacity && *v.per_instance_capacity > 0) {
        util = std::clamp(out / (n * *v.per_instance_capacity), 0.0, 1.0);
      } else if (v.per_instance_capacity && in > 0) {
        util = 1;
      }
      MetricRecord record;
      record.tick = t;
      record.vnf_id = v.vnf_id;
      record.cpu_cores = n * static_cast<double>(v.flavor.cpu_cores);
      record.offered_mbps = in;
      record.achieved_mbps = out;
      record.packet_loss_ratio = loss;
      record.cpu_utilization = util;
      result_.state.metrics.push_back(record);
      history_[v.vnf_id].push_back(TickStats{t, in, out, loss, util});
      result_.max_loss = std::max(result_.max_loss, loss);

      nlohmann::json per_instance = nlohmann::json::array();
      for (const auto& id : v.instances) {
        per_instance.push_back({{"instance_id", id},
                                {"pop", result_.state.placement.at(id)},
                                {"throughput_mbps", out / n},
                                {"packet_loss_ratio", loss},
                                {"cpu_utilization", util}});
      }
      nlohmann::json entry = {{"vnf_id", v.vnf_id},
                              {"flavor", v.flavor.name},
                              {"instances", v.instances.size()},
                              {"cpu_cores", record.cpu_cores},
                              {"offered_mbps", in},
                              {"achieved_mbps", out},
                              {"dropped_mbps", in - out},
                              {"packet_loss_ratio", loss},
                              {"cpu_utilization", util},
                              {"per_instance", per_instance}};
      if (v.per_instance_capacity) {
        entry["capacity_mbps"] = *v.per_instance_capacity;
      }
      vnfs.push_back(std::move(entry));
    }
    nlohmann::json pops = nlohmann::json::array();
    const auto usage =
        UsageByPop(result_.state.placement, result_.state.Instances());
    for (const auto& pop : infra().pops) {
      auto it = usage.find(pop.id);
      const PopUsage used = it == usage.end() ? PopUsage{} : it->second;
      pops.push_back({{"id", pop.id},
                      {"cpu_cores", used.cpu_cores},
                      {"memory_mb", used.memory_mb},
                      {"storage_gb", used.storage_gb}});
    }
    result_.log.Append(t, "metrics", {{"vnfs", vnfs}, {"pops", pops}});
  }

  void EvaluateAlarms(std::int64_t t) {
    for (auto& alarm : alarms_) {
      auto it = history_.find(alarm.rule.vnf_id);
      if (it == history_.end() || it->second.empty()) continue;
      const TickStats& stats = it->second.back();
      MetricRecord record;
      record.achieved_mbps = stats.achieved;
      record.packet_loss_ratio = stats.loss;
      record.cpu_utilization = stats.utilization;
      const double value = MetricValue(record, alarm.rule.metric);
      const bool violating = alarm.rule.comparator == Comparator::kGreater
                                 ? value > alarm.rule.threshold
                                 : value < alarm.rule.threshold;
      if (!violating) {
        alarm.start.reset();
        alarm.raised = false;
        continue;
      }
      if (!alarm.start) alarm.start = t;
      alarm.last = t;
      if (!alarm.raised && t - *alarm.start + 1 >= alarm.rule.duration_s) {
        alarm.raised = true;
        result_.log.Append(t, "alarm",
                           {{"rule", alarm.rule.ToString()},
                            {"vnf_id", alarm.rule.vnf_id},
                            {"metric",
                             std::string(MetricKindName(alarm.rule.metric))},
                            {"first_tick", *alarm.start},
                            {"value", value}});
      }
    }
  }

  std::vector<TickStats> Window(const std::string& vnf_id,
                                std::int64_t length) const {
    const auto& all = history_.at(vnf_id);
    const std::size_t count =
        std::min<std::size_t>(all.size(), static_cast<std::size_t>(
                                              std::max<std::int64_t>(length, 1)));
    return std::vector<TickStats>(all.end() - static_cast<long>(count),
                                  all.end());
  }

  // Threshold VNFM: returns the target instance count, or nullopt to hold.
  std::optional<int> DecideThreshold(Vnfm& vnfm, const VnfState& state) {
    const auto window = Window(state.vnf_id, vnfm.params.window_ticks);
    double util = 0;
    double offered = 0;
    for (const auto& s : window) {
      util += s.utilization;
      offered += s.offered;
    }
    util /= static_cast<double>(window.size());
    offered /= static_cast<double>(window.size());
    if (!state.per_instance_capacity || *state.per_instance_capacity <= 0) {
      vnfm.consecutive = 0;
      return std::nullopt;
    }
    const double cap = *state.per_instance_capacity;
    const int n = static_cast<int>(state.instances.size());
    if (util >= vnfm.params.scale_out_threshold) {
      if (++vnfm.consecutive < vnfm.params.consecutive_decisions) {
        return std::nullopt;
      }
      vnfm.consecutive = 0;
      const int target = CeilCount(offered / cap);
      if (target > n) return target;
      return std::nullopt;
    }
    vnfm.consecutive = 0;
    if (util <= vnfm.params.scale_in_threshold) {
      const int target = std::max(
          1, CeilCount(offered / (vnfm.params.scale_out_threshold * cap)));
      if (target < n) return target;
    }
    return std::nullopt;
  }

  // Plugin VNFM: fills `action` unless the plugin answers no_op.
  bool DecidePlugin(Vnfm& vnfm, const VnfState& state, ScalingAction* action) {
    nlohmann::json metrics = nlohmann::json::array();
    for (const auto& s : Window(state.vnf_id, config_.decision_interval)) {
      metrics.push_back({{"tick", s.tick},
                         {"throughput_mbps", s.achieved},
                         {"packet_loss_ratio", s.loss},
                         {"cpu_utilization", s.utilization}});
    }
    PluginProcess& plugin = PluginFor(vnfm.plugin);
    const nlohmann::json response =
        plugin.Request({{"type", "scale_request"},
                        {"protocol_version", std::string(kPluginProtocolVersion)},
                        {"vnf_id", state.vnf_id},
                        {"current_instances", state.instances.size()},
                        {"current_flavor", state.flavor.name},
                        {"metrics", metrics}});
    const std::string type = response["type"].get<std::string>();
    if (type == "no_op") return false;
    if (type != "scale_decision") {
      throw Error(ErrorCode::kPlugin, "plugin " + plugin.name() +
                                          " answered scale_request with type " +
                                          type);
    }
    if (response.contains("target_instances")) {
      const auto& value = response["target_instances"];
      if (!value.is_number_integer() || value.get<std::int64_t>() < 1) {
        throw Error(ErrorCode::kPlugin,
                    "plugin " + plugin.name() +
                        " sent target_instances that is not a positive integer");
      }
      action->target_instances =
          static_cast<int>(std::min<std::int64_t>(value.get<std::int64_t>(),
                                                  1 << 30));
      action->template_name = response.value("template", "load-balancer");
      try {
        TemplateKindFromName(action->template_name);
      } catch (const Error& e) {
        throw Error(ErrorCode::kPlugin,
                    "plugin " + plugin.name() + ": " + e.what());
      }
      return true;
    }
    if (response.contains("target_flavor") &&
        response["target_flavor"].is_string()) {
      const std::string flavor = response["target_flavor"].get<std::string>();
      if (service().Vnfd(state.vnf_id).FindFlavor(flavor) == nullptr) {
        throw Error(ErrorCode::kPlugin, "plugin " + plugin.name() +
                                            " requested undeclared flavor '" +
                                            flavor + "'");
      }
      action->target_flavor = flavor;
      return true;
    }
    throw Error(ErrorCode::kPlugin,
                "plugin " + plugin.name() +
                    " sent a scale_decision without a target");
  }

  double TotalCores(const std::string& vnf_id, int instances,
                    const ResourceFlavor& flavor) const {
    double total = 0;
    for (const auto& v : result_.state.vnfs) {
      if (v.vnf_id == vnf_id) {
        total += instances * static_cast<double>(flavor.cpu_cores);
      } else {
        total += static_cast<double>(v.instances.size()) *
                 static_cast<double>(v.flavor.cpu_cores);
      }
    }
    return total;
  }

  void Decide(std::int64_t t) {
    for (const auto& state : result_.state.vnfs) {
      Vnfm& vnfm = vnfms_.at(state.vnf_id);
      if (vnfm.kind == VnfmKind::kNone || pending_.count(state.vnf_id) != 0) {
        continue;
      }
      ScalingAction action;
      action.issued_tick = t;
      action.vnf_id = state.vnf_id;
      action.effective_tick = t + config_.instantiation_delay;
      bool act = false;
      std::string source;
      if (vnfm.kind == VnfmKind::kThreshold) {
        source = std::string(kThresholdPolicy);
        if (auto target = DecideThreshold(vnfm, state)) {
          action.target_instances = *target;
          action.template_name = "load-balancer";
          act = true;
        }
      } else {
        source = "plugin:" + vnfm.plugin.path;
        act = DecidePlugin(vnfm, state, &action);
      }

      const int current = static_cast<int>(state.instances.size());
      ScaleDecision decision;
      decision.vnf_id = state.vnf_id;
      decision.current_instances = current;
      decision.target_instances =
          act && action.target_instances ? *action.target_instances : current;
      const ResourceFlavor* flavor = &state.flavor;
      if (act && action.target_flavor) {
        flavor = service().Vnfd(state.vnf_id).FindFlavor(*action.target_flavor);
      }
      decision.total_cpu_cores =
          TotalCores(state.vnf_id, decision.target_instances, *flavor);
      if (vnfm.manifest) {
        decision.max_instances = vnfm.manifest->max_instances;
        decision.max_total_cpu_cores = vnfm.manifest->max_total_cpu_cores;
      }

      if (act) {
        nlohmann::json record = {{"vnf_id", state.vnf_id},
                                 {"source", source},
                                 {"current_instances", current},
                                 {"current_flavor", state.flavor.name},
                                 {"effective_tick", action.effective_tick}};
        if (action.target_instances) {
          record["kind"] = "horizontal";
          record["target_instances"] = *action.target_instances;
          record["template"] = action.template_name;
        } else {
          record["kind"] = "vertical";
          record["target_flavor"] = *action.target_flavor;
        }
        result_.log.Append(t, "scale_request", std::move(record));
        result_.requested.push_back(action);
      }
      if (auto reason = detector_.Observe(decision)) {
        SetAbort(t, std::string(kAbortRunaway), *reason,
                 {{"vnf_id", state.vnf_id}});
        return;
      }
      if (act) {
        pending_[state.vnf_id] = action;
      }
    }
  }

  void Failed(std::int64_t t, const ScalingAction& action,
              const std::string& why) {
    if (config_.strict) {
      SetAbort(t, std::string(kAbortExhausted),
               "cannot place scaling of " + action.vnf_id + ": " + why,
               {{"vnf_id", action.vnf_id}});
      return;
    }
    result_.log.Append(t, "scale_failed",
                       {{"vnf_id", action.vnf_id}, {"message", why}});
  }

  void ApplyDue(std::int64_t t) {
    std::vector<ScalingAction> due;
    for (auto it = pending_.begin(); it != pending_.end();) {
      if (it->second.effective_tick == t) {
        due.push_back(it->second);
        it = pending_.erase(it);
      } else {
        ++it;
      }
    }
    std::sort(due.begin(), due.end(),
              [&](const ScalingAction& a, const ScalingAction& b) {
                return VnfIndex(a.vnf_id) < VnfIndex(b.vnf_id);
              });
    for (const auto& action : due) {
      Apply(t, action);
      if (abort_) return;
    }
  }

  std::size_t VnfIndex(const std::string& vnf_id) const {
    for (std::size_t i = 0; i < result_.state.vnfs.size(); ++i) {
      if (result_.state.vnfs[i].vnf_id == vnf_id) return i;
    }
    return result_.state.vnfs.size();
  }

  void Apply(std::int64_t t, const ScalingAction& action) {
    VnfState& state = StateOf(action.vnf_id);
    const VnfState before = state;
    const Placement placement_before = result_.state.placement;
    Placement fixed = result_.state.placement;

    if (action.target_instances) {
      const int target = *action.target_instances;
      const int n = static_cast<int>(state.instances.size());
      if (target > n) {
        for (int i = n; i < target; ++i) {
          state.instances.push_back(InstanceId(state.vnf_id, state.next_index++));
        }
      } else if (target < n) {
        for (int i = target; i < n; ++i) {
          fixed.erase(state.instances.back());
          state.instances.pop_back();
        }
      }
    } else {
      const ResourceFlavor* flavor =
          service().Vnfd(state.vnf_id).FindFlavor(*action.target_flavor);
      state.flavor = *flavor;
      state.per_instance_capacity = CapacityFor(state.vnf_id, state.flavor);
    }

    const std::vector<VnfInstance> instances = result_.state.Instances();
    ValidationReport report = CheckPlacement(fixed, service(), infra(), instances);
    if (!report.passed()) {
      // New instances, a larger flavor or a new route: ask the NFVO.
      if (!action.target_instances) {
        for (const auto& id : state.instances) fixed.erase(id);
      }
      std::string failure;
      auto next = PlaceAll(instances, fixed, &report, &failure);
      if (!next) {
        state = before;
        result_.state.placement = placement_before;
        Failed(t, action, failure);
        return;
      }
      fixed = *next;
    }
    result_.state.placement = fixed;
    AssertConservation();
    result_.applied.push_back(action);
    nlohmann::json record = {{"vnf_id", state.vnf_id},
                             {"instances", state.instances.size()},
                             {"instance_ids", state.instances},
                             {"flavor", state.flavor.name},
                             {"issued_tick", action.issued_tick}};
    if (action.target_instances) {
      record["kind"] = "horizontal";
      record["template"] = action.template_name;
    } else {
      record["kind"] = "vertical";
    }
    result_.log.Append(t, "scale_applied", std::move(record));
    result_.log.Append(t, "placement_update", PlacementRecord());
  }

  const TrafficTrace& trace_;
  EmulationConfig config_;
  RunawayDetector detector_;
  EmulationResult result_;
  std::map<std::string, Vnfm> vnfms_;
  std::map<std::string, std::vector<TickStats>> history_;
  std::map<std::string, ScalingAction> pending_;
  std::vector<AlarmState> alarms_;
  std::map<std::string, std::unique_ptr<PluginProcess>> plugins_;
  std::optional<Abort> abort_;
  std::int64_t current_tick_ = 0;
};

}  // namespace

ThresholdParameters ThresholdParameters::From(const BuiltinPolicy& policy) {
  ThresholdParameters p;
  p.window_ticks = static_cast<std::int64_t>(
      policy.Parameter("window_ticks", static_cast<double>(p.window_ticks)));
  p.scale_out_threshold =
      policy.Parameter("scale_out_threshold", p.scale_out_threshold);
  p.scale_in_threshold =
      policy.Parameter("scale_in_threshold", p.scale_in_threshold);
  p.consecutive_decisions = static_cast<std::int64_t>(policy.Parameter(
      "consecutive_decisions", static_cast<double>(p.consecutive_decisions)));
  p.window_ticks = std::max<std::int64_t>(p.window_ticks, 1);
  p.consecutive_decisions = std::max<std::int64_t>(p.consecutive_decisions, 1);
  return p;
}

const VnfState* DeploymentState::FindVnf(std::string_view vnf_id) const {
  for (const auto& v : vnfs) {
    if (v.vnf_id == vnf_id) return &v;
  }
  return nullptr;
}

std::vector<VnfInstance> DeploymentState::Instances() const {
  std::vector<VnfInstance> instances;
  for (const auto& v : vnfs) {
    for (const auto& id : v.instances) {
      instances.push_back(VnfInstance{id, v.vnf_id, v.flavor});
    }
  }
  return instances;
}

EmulationResult RunEmulation(const ResolvedService& service,
                             const InfrastructureModel& infra,
                             const TrafficTrace& trace,
                             const EmulationConfig& config) {
  return Emulation(service, infra, trace, config).Run();
}

}  // namespace svcsdk
