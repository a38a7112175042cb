#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "cli.hpp"
#include "iforge/fixtures.hpp"

using namespace iforge;
using namespace iforge::cli;

namespace {

std::vector<std::string> failing(const Json& report) {
  std::vector<std::string> out;
  auto scan = [&](const Json& list) {
    for (const auto& v : list) {
      if (!v["pass"].get<bool>()) out.push_back(v["name"].get<std::string>());
    }
  };
  if (report.contains("conditions")) scan(report["conditions"]);
  if (report.contains("certificate")) scan(report["certificate"]["verdicts"]);
  if (report.contains("ansatz")) scan(report["ansatz"]["verdicts"]);
  if (report.contains("expected")) scan(report["expected"]);
  return out;
}

std::string temp_file(const std::string& name, const std::string& text) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, ParseCommand) {
  EXPECT_EQ(parse_command("solve-ansatz"), Command::solve_ansatz);
  EXPECT_EQ(command_name(Command::report), "report");
  EXPECT_FALSE(parse_command("frobnicate"));
}

TEST(Cli, LagrangeReportFailsOnlyOnDisplayedF) {
  Outcome o = run(Command::report, std::string("lagrange_top"), {});
  EXPECT_EQ(o.status, failed);
  auto bad = failing(o.report);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0], "F(lambda) matches");
  for (const auto& v : o.report["certificate"]["verdicts"]) EXPECT_TRUE(v["pass"].get<bool>()) << v["name"];
}

TEST(Cli, TodaReportsPass) {
  for (const char* n : {"toda_first", "toda_second"}) {
    Outcome o = run(Command::report, std::string(n), {});
    EXPECT_EQ(o.status, ok) << n << "\n" << summarize(o.report);
  }
}

TEST(Cli, BracketOfCasimirPair) {
  Options opt;
  opt.pair = {"f1", "f2"};
  Outcome o = run(Command::bracket, std::string("lagrange_top"), opt);
  EXPECT_EQ(o.status, ok);
  ASSERT_EQ(o.report["brackets"].size(), 1u);
  EXPECT_EQ(o.report["brackets"][0]["value"], "0");
}

TEST(Cli, BracketNeedsPair) {
  Outcome o = run(Command::bracket, std::string("lagrange_top"), {});
  EXPECT_EQ(o.status, input_error);
  EXPECT_EQ(o.report["error"]["code"], "SchemaError");
}

TEST(Cli, EmptyPartitionIsSchemaError) {
  Outcome o = run(Command::check, std::string(IFORGE_TEST_DATA "/empty_partition.json"), {});
  EXPECT_EQ(o.status, input_error);
  EXPECT_EQ(o.report["error"]["code"], "SchemaError");
}

TEST(Cli, Deterministic) {
  Options opt;
  opt.seed = 11;
  Outcome a = run(Command::report, std::string("toda_first"), opt);
  Outcome b = run(Command::report, std::string("toda_first"), opt);
  EXPECT_EQ(a.output, b.output);
}

TEST(Cli, SolveAnsatzWithoutAnsatzBlock) {
  Outcome o = run(Command::solve_ansatz, std::string("toda_first"), {});
  EXPECT_EQ(o.status, input_error);
}

TEST(Cli, SolveAnsatzLagrange) {
  Outcome o = run(Command::solve_ansatz, std::string("lagrange_top"), {});
  EXPECT_EQ(o.status, ok) << summarize(o.report);
  EXPECT_EQ(o.report["ansatz"]["free_parameters"], Json::array({"k34"}));
}

TEST(Cli, MissingAndMalformedInput) {
  Outcome missing = run(Command::check, std::string("/nonexistent/spec.json"), {});
  EXPECT_EQ(missing.status, input_error);
  EXPECT_EQ(missing.report["error"]["code"], "UnknownFixture");

  Outcome malformed = run(Command::check, temp_file("malformed.json", "{\"name\": "), {});
  EXPECT_EQ(malformed.status, input_error);
  EXPECT_EQ(malformed.report["error"]["stage"], "parse");
}

TEST(Cli, SummaryFormat) {
  Options opt;
  opt.format = Format::summary;
  Outcome o = run(Command::check, std::string("toda_first"), opt);
  EXPECT_EQ(o.status, ok);
  EXPECT_NE(o.output.find("status: pass"), std::string::npos);
  EXPECT_EQ(o.output.find('{', o.output.find('\n')), std::string::npos);
}

TEST(Cli, FileAndFixtureAgree) {
  auto fx = load_fixture("toda_first");
  std::string path = temp_file("toda_first.json", fx.text);
  Outcome a = run(Command::check, path, {});
  Outcome b = run(Command::check, std::string("toda_first"), {});
  EXPECT_EQ(a.report["conditions"], b.report["conditions"]);
}
