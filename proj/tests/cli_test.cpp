#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = ANGLE_FORGE_CLI;
const std::string kConfigs = ANGLE_FORGE_CONFIGS;

int run(const std::string& args) {
  const int st = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) { return ::testing::TempDir() + "angle_forge_" + name; }

}  // namespace

TEST(Cli, VerifyAllPasses) {
  EXPECT_EQ(run("verify-all --config " + kConfigs + "/ngon12.json"), 0);
  EXPECT_EQ(run("verify-all --config " + kConfigs + "/parabola20.json --window 4"), 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("verify-all --bogus"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("count-angles"), 2);
  EXPECT_EQ(run("count-angles --engine arcs --config " + kConfigs + "/square.json"), 2);
  EXPECT_EQ(run("count-angles --engine polar --config " + kConfigs + "/square.json"), 2);
  EXPECT_EQ(run("count-angles --config /nonexistent.json"), 2);
  EXPECT_EQ(run("verify-all --format xml --config " + kConfigs + "/square.json"), 2);
  EXPECT_EQ(run("sweep --kind ngon --sizes 8"), 2);
  EXPECT_EQ(run("gen --kind nope"), 2);
  EXPECT_EQ(run("gen"), 2);
  EXPECT_EQ(run("--help"), 0);
}

TEST(Cli, VerificationFailureExitsOne) {
  EXPECT_EQ(run("check-order --config " + kConfigs + "/order_violation.json"), 1);
  EXPECT_EQ(run("verify-all --config " + kConfigs + "/order_violation.json"), 1);
}

TEST(Cli, EverySubcommandRuns) {
  const std::string c = " --config " + kConfigs + "/convex16.json";
  for (const char* sub : {"count-angles", "check-order", "graph", "curves", "incidence", "bisector-energy", "verify-all"}) {
    EXPECT_EQ(run(std::string(sub) + c), 0) << sub;
    EXPECT_EQ(run(std::string(sub) + c + " --format csv"), 0) << sub;
  }
  EXPECT_EQ(run("gen --kind hyperbola --n 9 --ratio 3/2"), 0);
  EXPECT_EQ(run("gen --config " + kConfigs + "/hyperbola12.gen.json --format csv"), 0);
  EXPECT_EQ(run("convexity --x 2 --sizes 8,16,32"), 0);
  EXPECT_EQ(run("sweep --kind parabola --sizes 8,10,12 --format csv"), 0);
}

TEST(Cli, ReportsAreByteDeterministic) {
  const std::string a = tmp("a.json"), b = tmp("b.json");
  ASSERT_EQ(run("verify-all --config " + kConfigs + "/ngon16.json --out " + a), 0);
  ASSERT_EQ(run("verify-all --config " + kConfigs + "/ngon16.json --out " + b), 0);
  const std::string ta = slurp(a);
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, slurp(b));
  EXPECT_NE(ta.find("\"schema\": \"angle-forge/1\""), std::string::npos);
}

TEST(Cli, GenRoundTripsThroughCensus) {
  const std::string g = tmp("gen.json");
  ASSERT_EQ(run("gen --kind ngon --n 8 --out " + g), 0);
  const std::string out = tmp("census.csv");
  ASSERT_EQ(run("count-angles --config " + g + " --format csv --out " + out), 0);
  // n-gon: inscribed angles k/(2n) turn for k = 1..n-2, header plus six rows
  const std::string csv = slurp(out);
  EXPECT_EQ(csv.rfind("index,turns\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
}
