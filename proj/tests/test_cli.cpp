#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "flexgraph/io.hpp"
#include "support.hpp"

namespace flexgraph {
namespace {

using testing::data_path;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name, const std::string& content) {
  const auto dir = std::filesystem::temp_directory_path() / "flexgraph_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << content;
  return path.string();
}

TEST(Cli, ValidateAndDecompose) {
  const auto v = invoke({"validate", data_path("fig4.json")});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_TRUE(Json::parse(v.out)["feasible"].get<bool>());
  const auto d = invoke({"decompose", data_path("fig4.json")});
  ASSERT_EQ(d.code, 0) << d.err;
  const auto doc = Json::parse(d.out);
  EXPECT_EQ(doc["erp_number"], 3);
  EXPECT_EQ(doc["schema_version"], kSchemaVersion);
  EXPECT_EQ(doc["command"], "decompose");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"validate", data_path("missing.json")}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"design", data_path("fig4.json")}).code, 2);  // --erp is required
  EXPECT_EQ(invoke({"validate", scratch("bad.json", "{\"demand\": [1")}).code, 2);
  const auto infeasible = invoke({"validate", data_path("unbalanced.json")});
  EXPECT_EQ(infeasible.code, 1);
  EXPECT_TRUE(Json::parse(infeasible.err).contains("error"));
  EXPECT_EQ(invoke({"augment", data_path("fig4.json"), "--edge", "1,2"}).code, 1);
  EXPECT_EQ(invoke({"design", data_path("fig4.json"), "--erp", "99"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, DomainErrorIsReportedOnStderr) {
  const auto r = invoke({"augment", data_path("fig4.json"), "--edge", "1,2"});
  const auto diag = Json::parse(r.err);
  EXPECT_EQ(diag["error"], "EdgeAlreadyPresent");
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, RoundTripThroughVerify) {
  const std::vector<std::vector<std::string>> commands{
      {"validate", data_path("fig4.json")},
      {"decompose", data_path("fig7.json")},
      {"design", data_path("fig4.json"), "--erp", "2"},
      {"gap", data_path("fig4.json"), "--perturb", data_path("fig4_perturb.json")},
      {"augment", data_path("fig4.json"), "--best"},
      {"augment", data_path("fig7.json"), "--edge", "2,3"},
      {"plan", "--eta", "9", "--budget", "11"},
      {"plan", "--budget", "2", "--objective", "final", "--compare", data_path("fig7.json")},
  };
  for (const auto& args : commands) {
    const auto r = invoke(args);
    ASSERT_EQ(r.code, 0) << args[0] << ": " << r.err;
    const std::string instance = args[0] == "plan" ? data_path("fig7.json") : args[1];
    const auto result = scratch("result.json", r.out);
    const auto v = invoke({"verify", instance, result});
    EXPECT_EQ(v.code, 0) << args[0] << ": " << v.out << v.err;
  }
}

TEST(Cli, VerifyRejectsTamperedResult) {
  auto doc = Json::parse(invoke({"decompose", data_path("fig4.json")}).out);
  doc["erp_number"] = 2;
  const auto v = invoke({"verify", data_path("fig4.json"), scratch("tampered.json", doc.dump())});
  EXPECT_EQ(v.code, 1);
  EXPECT_FALSE(Json::parse(v.out)["ok"].get<bool>());
}

TEST(Cli, InstanceRoundTrip) {
  const auto inst = read_instance(data_path("fig6_right.json"));
  const auto copy = instance_from_json(Json::parse(instance_to_json(inst).dump()));
  EXPECT_EQ(inst, copy);
}

TEST(Cli, SimulateIsDeterministic) {
  const std::vector<std::string> args{"simulate", data_path("fig7.json"), "--eps", "0.2,0.3",
                                      "--horizon", "3000", "--reps", "2", "--seed", "3"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("eps,q1,q2,q3,q4,q1_se", 0), 0u);
  int rows = 0;
  for (std::string line; std::getline(lines, line);) rows += !line.empty();
  EXPECT_EQ(rows, 2);
}

}  // namespace
}  // namespace flexgraph
