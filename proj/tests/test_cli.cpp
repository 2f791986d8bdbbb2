#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

#include "json.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell; stderr is discarded.
Result run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "\"" TXBASIS_CLI "\" " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fx(const std::string& name) { return "\"" + std::string(TXBASIS_FIXTURES) + "/" + name + "\""; }

nlohmann::json parse(const Result& r) { return nlohmann::json::parse(r.out); }

std::string scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "txbasis_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST(Cli, BasisOfTransfer) {
  Result r = run("basis " + fx("fishtoken.msol") + " --entry transfer");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["header"]["command"], "basis");
  ASSERT_TRUE(j.contains("basis"));
  auto sets = j["basis"];
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_EQ(sets[0]["paths"].size(), 5u);
  EXPECT_EQ(sets[0]["complete"], true);
}

TEST(Cli, RequirementsCount) {
  Result r = run("requirements " + fx("dao.msol") + " --accounts alice=10,bob=10 -k 2");
  ASSERT_EQ(r.code, 0);
  auto j = parse(r);
  EXPECT_EQ(j["closed_form_count"], 144);
  EXPECT_EQ(j["requirements"]["requirements"].size(), 144u);
}

TEST(Cli, EnvironmentOverridesDefaults) {
  Result r = run("requirements " + fx("dao.msol") + " --accounts alice=10,bob=10", "TXBASIS_K=1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse(r)["closed_form_count"], 12);
}

TEST(Cli, RunThenCoverage) {
  std::string traces = scratch("counter.traces.json");
  Result r = run("run " + fx("counter.msol") + " --accounts alice=10 --tests " + fx("counter.tests.json") + " -o \"" +
                 traces + "\"");
  ASSERT_EQ(r.code, 0);
  Result c = run("coverage " + fx("counter.msol") + " --accounts alice=10 --traces \"" + traces + "\" --infeasible " +
                 fx("counter.infeasible.json"));
  ASSERT_EQ(c.code, 0);
  auto cov = parse(c)["coverage"];
  EXPECT_EQ(cov["covered"], 7);
  EXPECT_EQ(cov["infeasible"], 2);
  EXPECT_EQ(cov["adjusted_percent"], "100.0");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("basis").code, 1);
  EXPECT_EQ(run("basis /no/such/file.msol").code, 2);
  EXPECT_EQ(run("basis " + fx("dao.msol") + " --entry nothing").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("--version").code, 0);
}

TEST(Cli, ByteIdenticalReruns) {
  for (const std::string& args :
       {"parse " + fx("pool.msol"), "tcfg " + fx("dao.msol"), "basis " + fx("pool.msol"),
        "requirements " + fx("counter.msol") + " -k 3", "mutate " + fx("fishtoken.msol"),
        "run " + fx("counter.msol") + " --accounts alice=10 --tests " + fx("counter.tests.json"),
        "experiment " + fx("counter.msol") + " --accounts alice=10 --seed 3"}) {
    Result a = run(args);
    Result b = run(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_FALSE(a.out.empty()) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}
