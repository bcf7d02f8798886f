#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.h"

namespace cdt {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string WriteTemp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("cdt_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

int CountLines(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) n += line.rfind(prefix, 0) == 0;
  return n;
}

TEST(Cli, SolveExampleOne) {
  const CliRun r = Cli({"solve", "example1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(CountLines(r.out, "point"), 6);
  EXPECT_NE(r.out.find("certified: UNIQUE_GLOBAL_MIN at x=(3.46410161513775)"), std::string::npos);
}

TEST(Cli, SolveExampleOneWithEquality) {
  const CliRun r = Cli({"solve", "example1", "--J", "1", "--format", "structured"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("certified=\"UNIQUE_GLOBAL_MIN at x=(3.46410161513775)\""), std::string::npos)
      << r.out;
}

TEST(Cli, SolveEmptyConvexQuadraticFile) {
  const std::string path = WriteTemp("convex.json", R"({"n": 2, "m": 0, "terms": [
      {"A": [2, 0, 0, 1], "b": [1, 1], "quadratic": true}]})");
  const CliRun r = Cli({"solve", path, "--format", "structured"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(CountLines(r.out, "record=point"), 1);
  EXPECT_NE(r.out.find("UNIQUE_GLOBAL_MIN at x=(0.5,1)"), std::string::npos) << r.out;
}

TEST(Cli, ParseErrorExitsTwoWithLocation) {
  const std::string path = WriteTemp("bad.json", R"({"n": 1, "terms": [{"A": [1, 2]}]})");
  const CliRun r = Cli({"solve", path});
  EXPECT_EQ(r.code, kExitParse);
  EXPECT_NE(r.err.find("terms[0]"), std::string::npos) << r.err;
}

TEST(Cli, NoCriticalPointExitsThree) {
  const std::string path = WriteTemp("empty.json", R"({"n": 1, "m": 1, "terms": [
      {"b": [-1], "quadratic": true}, {"A": [1], "c": 1, "quadratic": true}]})");
  const CliRun r = Cli({"solve", path});
  EXPECT_EQ(r.code, kExitNoConvergence) << r.out;
}

TEST(Cli, GuardExitsFour) {
  std::string terms = R"({"A": [1], "quadratic": true})";
  for (int k = 0; k < 13; ++k) terms += R"(, {"A": [1], "c": -1, "quadratic": true})";
  const std::string path = WriteTemp("big.json", R"({"n": 1, "terms": [)" + terms + "]}");
  EXPECT_EQ(Cli({"solve", path}).code, kExitGuard);
}

TEST(Cli, OracleExampleOne) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"oracle", "example1", "--steps", "100000"},
        std::vector<std::string>{"oracle", "example1", "--J", "1"}}) {
    const CliRun r = Cli(args);
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("argmin          (3.4641016"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("-14.7846"), std::string::npos) << r.out;
  }
}

TEST(Cli, OracleRejectsThreeDimensions) {
  const std::string path = WriteTemp("n3.json", R"({"n": 3, "m": 0, "terms": [
      {"A": [1, 0, 0, 0, 1, 0, 0, 0, 1], "quadratic": true}]})");
  const CliRun r = Cli({"oracle", path});
  EXPECT_EQ(r.code, kExitGuard);
  EXPECT_NE(r.err.find("oracle limited to n<=2"), std::string::npos) << r.err;
}

TEST(Cli, AuditExampleOnePasses) {
  const CliRun r = Cli({"audit", "example1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(CountLines(r.out, "FAIL"), 0);
  EXPECT_GT(CountLines(r.out, "PASS"), 15);
}

TEST(Cli, AuditMsgaoBothScenarios) {
  const CliRun table = Cli({"audit", "msgao", "--gamma", "sqrt6/96"});
  EXPECT_EQ(table.code, kExitOk) << table.err;
  EXPECT_NE(table.out.find("PASS msgao.none_in_S_a_plus"), std::string::npos);
  const CliRun ray = Cli({"audit", "msgao", "--gamma", "9sqrt2/8"});
  EXPECT_EQ(ray.code, kExitOk) << ray.err;
  EXPECT_NE(ray.out.find("PASS msgao.diverges"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(Cli({"audit", "unknown"}).code, kExitUsage);
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"solve", "example1", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(Cli({"solve", "example1", "--J", "one"}).code, kExitUsage);
  EXPECT_EQ(Cli({"solve", "example1", "--tol-res", "0"}).code, kExitUsage);
  EXPECT_EQ(Cli({"solve", "example1", "--box", "3,1"}).code, kExitUsage);
  EXPECT_EQ(Cli({"audit", "msgao", "--gamma", "sqrtx"}).code, kExitParse);
}

TEST(Cli, StructuredAuditIsByteIdentical) {
  const std::vector<std::string> args = {"audit", "example1", "--seed", "7", "--format", "structured"};
  const CliRun a = Cli(args);
  const CliRun b = Cli(args);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_FALSE(a.out.empty());
  EXPECT_EQ(a.out, b.out);
}

}  // namespace
}  // namespace cdt
