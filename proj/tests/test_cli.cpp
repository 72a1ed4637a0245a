#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "wofreg/graph_io.hpp"
#include "wofreg/report_io.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& cmd) {
  Run r;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string cli() { return WOFREG_CLI; }
std::string graph(const std::string& name) { return std::string(WOFREG_DATA_DIR) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "wofreg-cli-test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(Cli, ValidateAcceptsAndRejects) {
  auto r = run(cli() + " validate " + graph("six_pairs.graph"));
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("status: accepted"), std::string::npos);

  r = run(cli() + " validate " + graph("sink_violation.graph"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("'y2' is not a sink"), std::string::npos);
  EXPECT_NE(r.out.find("'x2' has weight 7"), std::string::npos);
}

TEST(Cli, UsageAndInputErrorsExitTwo) {
  EXPECT_EQ(run(cli() + " validate /nonexistent/file.graph").status, 2);
  EXPECT_EQ(run(cli()).status, 2);
  EXPECT_EQ(run(cli() + " reg " + graph("five_pairs.graph") + " --k 1 --kmax 2").status, 2);
  EXPECT_EQ(run(cli() + " --field prime:4 reg " + graph("five_pairs.graph")).status, 2);
  const auto bad = scratch("bad.graph");
  std::ofstream(bad) << "x:1\nx->\n";
  const auto r = run(cli() + " validate " + bad.string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("line 2"), std::string::npos);
}

TEST(Cli, RegTableAndPiecewise) {
  auto r = run(cli() + " reg " + graph("six_pairs.graph") + " --k 1");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("25"), std::string::npos);

  r = run(cli() + " reg " + graph("five_pairs.graph") + " --kmax 6 --piecewise");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("lines (slope, intercept): (4, 10) (5, 7)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("breakpoints: 4"), std::string::npos);
}

TEST(Cli, RegCsvAndJson) {
  auto r = run(cli() + " --format csv reg " + graph("five_pairs.graph") + " --kmax 2 --oracle");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto rep = wofreg::report_from_csv(r.out);
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_EQ(rep.rows[1].theta, 14);
  EXPECT_EQ(rep.rows[1].oracle, 14);
  EXPECT_TRUE(rep.rows[1].match);

  r = run(cli() + " --format json reg " + graph("five_pairs.graph") + " --k 1 --piecewise");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"][0]["theta"], 10);
  EXPECT_EQ(j["piecewise"]["breakpoints"], nlohmann::json::array({4}));
}

TEST(Cli, RegOutsideHypothesis) {
  EXPECT_EQ(run(cli() + " reg " + graph("sink_violation.graph")).status, 1);
  const auto r = run(cli() + " --format csv reg " + graph("sink_violation.graph") + " --k 1 --oracle --outside-hypothesis");
  const auto rep = wofreg::report_from_csv(r.out.substr(r.out.find("instance,")));
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_EQ(rep.rows[0].oracle, 24);
}

TEST(Cli, IdealPowerPolarized) {
  const auto r = run(cli() + " ideal " + graph("edge_w4.graph") + " --power 2 --polarize");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("x1*x2*y1*y2*y3*y4*y5*y6*y7*y8"), std::string::npos) << r.out;
}

TEST(Cli, VerifySuitePasses) {
  const auto r = run(cli() + " verify --suite exhaustive --rmax 2 --kmax 2 --bounds --monotonicity");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("result:           pass"), std::string::npos);
  EXPECT_EQ(run(cli() + " verify --suite random --seed 3 --rmax 3 --kmax 1 --count 10").status, 0);
}

#ifdef WOFREG_FAULT_CLI
TEST(Cli, InjectedFaultIsDetected) {
  const auto ce = scratch("counterexample.graph");
  std::filesystem::remove(ce);
  const std::string args = " verify --suite exhaustive --rmax 2 --kmax 1 --counterexample " + ce.string();
  EXPECT_EQ(run(std::string(WOFREG_FAULT_CLI) + args).status, 0);
  ASSERT_FALSE(std::filesystem::exists(ce));

  const auto r = run("WOFREG_INJECT_FAULT=theta-off-by-one " + std::string(WOFREG_FAULT_CLI) + args);
  EXPECT_EQ(r.status, 1) << r.out;
  ASSERT_TRUE(std::filesystem::exists(ce));
  const auto d = wofreg::read_digraph_file(ce);
  EXPECT_TRUE(wofreg::check_cm_hypothesis(d).accepted());
  EXPECT_EQ(run(cli() + " reg " + ce.string() + " --k 1 --oracle").status, 0);
}
#endif

}  // namespace
