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

#include <gtest/gtest.h>
#include <httplib.h>
#include <stdlib.h>

#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "svcsdk/cli/cli.h"
#include "svcsdk/cli/graph_export.h"
#include "svcsdk/cli/push.h"
#include "svcsdk/common/error.h"
#include "svcsdk/common/util.h"
#include "svcsdk/descriptor/parser.h"
#include "test_support.h"

namespace svcsdk {
namespace {

namespace fs = std::filesystem;
using testing::FixturePath;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun run;
  run.code = RunCli(args, out, err);
  run.out = out.str();
  run.err = err.str();
  return run;
}

std::string Fixture(const std::string& rel) {
  return FixturePath(rel).string();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ::setenv("SVCSDK_CATALOGUE", (dir_.path() / "catalogue").c_str(), 1);
    ::unsetenv("SVCSDK_TOKEN");
  }

  fs::path Path(const std::string& rel) const { return dir_.path() / rel; }

  // Builds and signs the CDN package; returns its path.
  std::string BuildCdnPackage() {
    fs::create_directories(Path("trust"));
    EXPECT_EQ(Cli({"package", "keygen", "--out", Path("trust/dev").string()})
                  .code,
              0);
    const CliRun build = Cli({"package", "build", Fixture("cdn/nsd.yaml"), "--key",
                           Path("trust/dev.key").string(), "-o",
                           Path("cdn.svcpkg").string()});
    EXPECT_EQ(build.code, 0) << build.err;
    return Path("cdn.svcpkg").string();
  }

  // Copies the CDN sources with a router to dpi1 back edge on a path.
  std::string CyclicCdn() {
    for (const auto& e : fs::directory_iterator(FixturePath("cdn"))) {
      fs::copy_file(e.path(), Path(e.path().filename().string()));
    }
    std::string nsd = ReadFile(FixturePath("cdn/nsd.yaml"));
    const std::string anchor = "virtual_links:\n";
    nsd.insert(nsd.find(anchor) + anchor.size(),
               "  - id: router-dpi1\n"
               "    endpoints: [\"router:out\", \"dpi1:in\"]\n"
               "    bandwidth_mbps: 100\n");
    const std::string graphs = "forwarding_graphs:\n";
    nsd.insert(nsd.find(graphs) + graphs.size(),
               "  - id: loop\n"
               "    path: [\"router:out\", \"dpi1:in\", \"dpi1:out\", "
               "\"router:in\"]\n");
    WriteFile(Path("nsd.yaml"), nsd);
    return Path("nsd.yaml").string();
  }

  TempDir dir_{"svcsdk-cli"};
};

TEST(ExitStatus, Mapping) {
  EXPECT_EQ(ExitStatusFor(ErrorCode::kValidationGate), kExitValidation);
  EXPECT_EQ(ExitStatusFor(ErrorCode::kUnresolvedReference), kExitValidation);
  EXPECT_EQ(ExitStatusFor(ErrorCode::kNoFeasiblePlacement), kExitValidation);
  EXPECT_EQ(ExitStatusFor(ErrorCode::kParse), kExitIo);
  EXPECT_EQ(ExitStatusFor(ErrorCode::kIo), kExitIo);
  EXPECT_EQ(ExitStatusFor(ErrorCode::kSigning), kExitSignature);
  EXPECT_EQ(ExitStatusFor(ErrorCode::kMalformedArchive), kExitSignature);
  EXPECT_EQ(ExitStatusFor(ErrorCode::kPlugin), kExitAborted);
}

TEST_F(CliTest, ValidateExitCodes) {
  EXPECT_EQ(Cli({"validate", Fixture("cdn/nsd.yaml")}).code, 0);
  EXPECT_EQ(Cli({"validate", Path("missing.yaml").string()}).code, 2);
  WriteFile(Path("broken.yaml"), "vnfs: [\n");
  EXPECT_EQ(Cli({"validate", Path("broken.yaml").string()}).code, 2);
  const CliRun cyclic = Cli({"validate", CyclicCdn()});
  EXPECT_EQ(cyclic.code, 1);
  EXPECT_NE(cyclic.out.find("CYCLE"), std::string::npos) << cyclic.out;
}

TEST_F(CliTest, ValidateJsonParses) {
  const CliRun run = Cli({"validate", CyclicCdn(), "--json"});
  const auto parsed = nlohmann::json::parse(run.out);
  ASSERT_TRUE(parsed.is_array());
  bool cycle = false;
  for (const auto& issue : parsed) cycle |= issue["code"] == "CYCLE";
  EXPECT_TRUE(cycle);
}

TEST_F(CliTest, UnknownSubcommandIsUsageError) {
  EXPECT_NE(Cli({"frobnicate"}).code, 0);
  EXPECT_NE(Cli({}).code, 0);
}

TEST_F(CliTest, VerifyWithWrongTrustIsSignatureFailure) {
  const std::string package = BuildCdnPackage();
  EXPECT_EQ(Cli({"package", "verify", package, "--trust",
                 Path("trust").string()})
                .code,
            0);
  fs::create_directories(Path("other"));
  Cli({"package", "keygen", "--out", Path("other/k").string()});
  EXPECT_EQ(Cli({"package", "verify", package, "--trust",
                 Path("other").string()})
                .code,
            3);
}

TEST_F(CliTest, SandboxPushWorkspace) {
  const std::string package = BuildCdnPackage();
  const CliRun run = Cli({"push", package, "sandbox:" + Path("sb").string(),
                       "--trust", Path("trust").string()});
  ASSERT_EQ(run.code, 0) << run.err;
  const std::string digest = Sha256Hex(ReadFile(package));
  const fs::path workspace =
      Path("sb") / ("secure-cdn-1.0-" + digest.substr(0, 12));
  EXPECT_TRUE(fs::exists(workspace / "descriptors/nsd.yaml"));
  EXPECT_NE(run.out.find(workspace.string()), std::string::npos) << run.out;
}

class StubServer {
 public:
  explicit StubServer(std::function<void(const httplib::Request&,
                                         httplib::Response&)> handler) {
    server_.Post(std::string(kPushPath), handler);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(CliTest, RemotePushOutcomes) {
  const std::string package = BuildCdnPackage();
  const std::string bytes = ReadFile(package);
  std::string seen_auth;
  std::size_t seen_size = 0;
  StubServer accept([&](const httplib::Request& req, httplib::Response& res) {
    seen_auth = req.get_header_value("Authorization");
    seen_size = req.body.size();
    res.status = 201;
    res.set_content(R"({"package_id":"pkg-77"})", "application/json");
  });
  const CliRun ok = Cli({"push", package, accept.url(), "--trust",
                      Path("trust").string(), "--token", "s3cret"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("pkg-77"), std::string::npos) << ok.out;
  EXPECT_EQ(seen_auth, "Bearer s3cret");
  EXPECT_EQ(seen_size, bytes.size());

  ::setenv("SVCSDK_TOKEN", "from-env", 1);
  EXPECT_EQ(Cli({"push", package, accept.url(), "--trust",
                 Path("trust").string()})
                .code,
            0);
  EXPECT_EQ(seen_auth, "Bearer from-env");
  ::unsetenv("SVCSDK_TOKEN");

  StubServer forbid([](const httplib::Request&, httplib::Response& res) {
    res.status = 403;
    res.set_content("bad token", "text/plain");
  });
  EXPECT_EQ(Cli({"push", package, forbid.url(), "--trust",
                 Path("trust").string(), "--token", "x"})
                .code,
            5);

  StubServer silent([](const httplib::Request&, httplib::Response& res) {
    res.status = 201;
    res.set_content("{}", "application/json");
  });
  EXPECT_EQ(Cli({"push", package, silent.url(), "--trust",
                 Path("trust").string(), "--token", "x"})
                .code,
            2);
}

TEST_F(CliTest, RemotePushFailuresBeforeUpload) {
  const std::string package = BuildCdnPackage();
  // Nothing listens on port 9 of the loopback interface.
  EXPECT_EQ(Cli({"push", package, "http://127.0.0.1:9", "--trust",
                 Path("trust").string(), "--token", "x"})
                .code,
            2);
  const CliRun no_token = Cli({"push", package, "http://127.0.0.1:9", "--trust",
                            Path("trust").string()});
  EXPECT_EQ(no_token.code, 2);
  EXPECT_NE(no_token.err.find("token"), std::string::npos) << no_token.err;
  EXPECT_EQ(Cli({"push", package, "ftp://host", "--trust",
                 Path("trust").string(), "--token", "x"})
                .code,
            2);
}

TEST(PushTarget, Parse) {
  const auto sandbox = PushTarget::Parse("sandbox:/tmp/ws");
  EXPECT_EQ(sandbox.scheme, PushTarget::Scheme::kSandbox);
  EXPECT_EQ(sandbox.location, "/tmp/ws");
  const auto https = PushTarget::Parse("https://nfvo.example:8443/x", "t");
  EXPECT_EQ(https.scheme, PushTarget::Scheme::kHttps);
  EXPECT_EQ(https.token, "t");
  EXPECT_THROW(PushTarget::Parse("http://h"), Error);
  EXPECT_THROW(PushTarget::Parse("gopher://h", "t"), Error);
}

TEST_F(CliTest, GraphOfDescriptorIsDeterministic) {
  const CliRun a = Cli({"graph", Fixture("cdn/nsd.yaml")});
  const CliRun b = Cli({"graph", Fixture("cdn/nsd.yaml")});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("digraph", 0), 0u);
  for (const char* vnf : {"dpi1", "dpi2", "cache1", "cache2", "router"}) {
    EXPECT_NE(a.out.find(std::string("\"") + vnf + "\""), std::string::npos)
        << vnf;
  }
}

TEST(GraphExport, EmptyService) {
  ServiceDescriptor empty;
  empty.name = "empty";
  const std::string dot = ExportDot(empty);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
  EXPECT_NE(dot.find('}'), std::string::npos);
  EXPECT_EQ(dot.find("->"), std::string::npos);
}

TEST_F(CliTest, GraphOfEventLogClustersByPop) {
  // 12 Gbit/s against a 5 Gbit/s router settles on three instances in core.
  WriteFile(Path("load.csv"), "tick,cp,offered_mbps\n0,in,12000\n60,in,12000\n");
  const CliRun emulate =
      Cli({"emulate", Fixture("elastic-router/nsd.yaml"), "--infra",
           Fixture("infra/4pop.yaml"), "--trace", Path("load.csv").string(),
           "--out", Path("events.jsonl").string()});
  ASSERT_EQ(emulate.code, 0) << emulate.err;
  const CliRun graph = Cli({"graph", Path("events.jsonl").string()});
  ASSERT_EQ(graph.code, 0) << graph.err;
  const std::string& dot = graph.out;
  const auto begin = dot.find("\"cluster_core\"");
  ASSERT_NE(begin, std::string::npos) << dot;
  const std::string core = dot.substr(begin, dot.find('}', begin) - begin);
  for (const char* id : {"router-1", "router-2", "router-3"}) {
    EXPECT_NE(core.find(id), std::string::npos) << id << "\n" << dot;
  }
  EXPECT_EQ(core.find("router-4"), std::string::npos);
}

TEST_F(CliTest, EmulateBadTraceHeader) {
  WriteFile(Path("bad.csv"), "time,port,load\n0,in,5\n");
  EXPECT_EQ(Cli({"emulate", Fixture("elastic-router/nsd.yaml"), "--infra",
                 Fixture("infra/4pop.yaml"), "--trace",
                 Path("bad.csv").string()})
                .code,
            2);
}

TEST_F(CliTest, EmulateRunawayExitsAborted) {
  const CliRun run =
      Cli({"emulate", Fixture("elastic-router/nsd-doubling.yaml"), "--infra",
           Fixture("infra/4pop.yaml"), "--trace", Fixture("traces/step.csv")});
  EXPECT_EQ(run.code, 4) << run.out << run.err;
}

TEST_F(CliTest, CapacityPerInstance) {
  const CliRun run =
      Cli({"profile", "capacity", "--per-instance", "5000", "--target", "12000"});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(run.out.rfind("3 instances", 0), 0u) << run.out;
  const CliRun json = Cli({"profile", "capacity", "--per-instance", "5000",
                        "--target", "12000", "--json"});
  ASSERT_EQ(json.code, 0) << json.err;
  EXPECT_EQ(nlohmann::json::parse(json.out)["instances"], 3);
}

TEST_F(CliTest, AlarmRuleFromCommandLine) {
  WriteFile(Path("step.csv"), ReadFile(FixturePath("traces/step.csv")));
  ASSERT_EQ(Cli({"emulate", Fixture("elastic-router/nsd.yaml"), "--infra",
                 Fixture("infra/4pop.yaml"), "--trace",
                 Path("step.csv").string(), "--metrics-out",
                 Path("m.csv").string()})
                .code,
            0);
  const CliRun run = Cli({"alarms", "eval", Path("m.csv").string(), "--rule",
                       "packet_loss_ratio(router) > 0.01 for 5s", "--json"});
  ASSERT_EQ(run.code, 0) << run.err;
  const auto parsed = nlohmann::json::parse(run.out);
  ASSERT_FALSE(parsed.empty()) << run.out;
}

}  // namespace
}  // namespace svcsdk
