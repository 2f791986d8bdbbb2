#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "txbasis/coverage.hpp"
#include "txbasis/executor.hpp"
#include "txbasis/io.hpp"
#include "txbasis/parser.hpp"
#include "txbasis/suites.hpp"

using namespace txbasis;

namespace {

struct Env {
  DappModel model;
  Tcfg g;
  BasisLibrary lib;
  RequirementSet rs;
};

Env env(const std::string& fixture, const std::string& accounts, int k) {
  DappModel m = build_dapp_model(parse_source(oracle::fixture(fixture)), parse_accounts(accounts));
  Tcfg g = build_tcfg(m);
  BasisLibrary lib = build_basis_library(g);
  RequirementSet rs = enumerate_requirements(enumerate_tuples(m, lib), k);
  return {std::move(m), std::move(g), std::move(lib), std::move(rs)};
}

std::vector<ExecutedTest> execute(const Env& e, const std::vector<TestCase>& tests) {
  std::vector<ExecutedTest> out;
  for (const auto& t : tests) out.push_back({t.name, execute_test_case(e.model, e.g, t)});
  return out;
}

std::vector<ExecutedTest> counter_suite(const Env& e) {
  return execute(e, read_testcases(oracle::fixture("counter.tests.json")));
}

// Covered ids by direct construction: each window of k records is turned
// into the id string it would satisfy, if every record's trace is a basis
// path of its function.
std::set<std::string> covered_ids_oracle(const Env& e, const std::vector<ExecutedTest>& suite) {
  std::set<std::string> out;
  for (const auto& t : suite) {
    std::vector<std::string> slot;
    for (const auto& r : t.records) {
      std::string s;
      if (const BasisPathSet* b = e.lib.find(r.contract + "." + r.function))
        for (size_t p = 0; p < b->paths.size(); ++p)
          if (b->paths[p].nodes == r.trace)
            s = r.account + "." + r.contract + "." + r.function + "." + to_string(r.outcome) + "#" + std::to_string(p);
      slot.push_back(s);
    }
    for (size_t i = 0; i + e.rs.k <= slot.size(); ++i) {
      std::string id;
      bool ok = true;
      for (int j = 0; j < e.rs.k; ++j) {
        ok = ok && !slot[i + j].empty();
        id += (j ? " > " : "") + slot[i + j];
      }
      if (ok) out.insert(id);
    }
  }
  return out;
}

std::set<std::string> covered_ids(const CoverageReport& rep) {
  std::set<std::string> out;
  for (const auto& s : rep.statuses)
    if (s.state == ReqState::Covered) out.insert(s.id);
  return out;
}

}  // namespace

TEST(Coverage, CounterSuiteIsCompleteAndMinimal) {
  Env e = env("counter.msol", "alice=10", 2);
  auto infeasible = read_infeasible(oracle::fixture("counter.infeasible.json"));
  auto suite = counter_suite(e);
  CoverageReport rep = measure_coverage(e.g, e.rs, suite, e.lib, infeasible);
  EXPECT_EQ(rep.total(), 9u);
  EXPECT_EQ(rep.infeasible(), 2u);
  EXPECT_EQ(rep.covered(), 7u);
  EXPECT_DOUBLE_EQ(rep.adjusted_percent(), 100.0);
  EXPECT_TRUE(rep.contradicted.empty());
  for (size_t drop = 0; drop < suite.size(); ++drop) {
    auto smaller = suite;
    smaller.erase(smaller.begin() + static_cast<long>(drop));
    EXPECT_LT(measure_coverage(e.g, e.rs, smaller, e.lib, infeasible).covered(), rep.covered()) << suite[drop].name;
  }
}

TEST(Coverage, WindowsStartAfterTheConstructor) {
  Env e = env("counter.msol", "alice=10", 2);
  auto suite = counter_suite(e);
  CoverageReport rep = measure_coverage(e.g, e.rs, suite, e.lib);
  for (const auto& s : rep.statuses)
    if (s.id == "alice.Counter.dec.revert#1 > alice.Counter.dec.revert#1") {
      EXPECT_EQ(s.test, 0);
      EXPECT_EQ(s.offset, 1u);
    }
  // a single window covers nothing at k=2
  ExecutedTest one{"one", {suite[0].records.begin(), suite[0].records.begin() + 2}};
  EXPECT_EQ(measure_coverage(e.g, e.rs, {one}, e.lib).covered(), 0u);
}

TEST(Coverage, AgreesWithWindowOracle) {
  Env e = env("dao.msol", "alice=20,bob=20", 2);
  RandomTestConfig cfg;
  cfg.seed = 4;
  cfg.max_steps = 5;
  auto suite = execute(e, random_pool(e.model, e.g, cfg, 150));
  EXPECT_EQ(covered_ids(measure_coverage(e.g, e.rs, suite, e.lib)), covered_ids_oracle(e, suite));
}

TEST(Coverage, MonotoneInTheSuite) {
  Env e = env("dao.msol", "alice=20,bob=20", 2);
  RandomTestConfig cfg;
  cfg.seed = 9;
  auto suite = execute(e, random_pool(e.model, e.g, cfg, 60));
  size_t last = 0;
  std::set<std::string> before;
  for (size_t n = 0; n <= suite.size(); n += 10) {
    std::vector<ExecutedTest> prefix(suite.begin(), suite.begin() + static_cast<long>(n));
    CoverageReport rep = measure_coverage(e.g, e.rs, prefix, e.lib);
    auto now = covered_ids(rep);
    EXPECT_GE(rep.covered(), last);
    for (const auto& id : before) EXPECT_TRUE(now.count(id)) << id;
    last = rep.covered();
    before = now;
    EXPECT_GE(measure_coverage(e.g, e.rs, prefix, e.lib, {}, MatchMode::EdgeVector).covered(), rep.covered());
  }
}

TEST(Coverage, EmptyAndTrivialSuites) {
  Env e = env("trivial.msol", "alice", 1);
  EXPECT_EQ(e.rs.requirements.size(), 1u);
  CoverageReport empty = measure_coverage(e.g, e.rs, {}, e.lib);
  EXPECT_EQ(empty.covered(), 0u);
  EXPECT_EQ(empty.total(), 1u);
  TestCase t{"f", std::nullopt, {{"alice", "T", "constructor", 0, {}}, {"alice", "T", "f", 0, {}}}, {}};
  CoverageReport full = measure_coverage(e.g, e.rs, execute(e, {t}), e.lib);
  EXPECT_EQ(full.covered(), 1u);
  EXPECT_DOUBLE_EQ(full.raw_percent(), 100.0);
}

TEST(Coverage, AnnotationErrors) {
  Env e = env("counter.msol", "alice=10", 2);
  auto suite = counter_suite(e);
  InfeasibleAnnotations wrong;
  wrong.reasons["alice.Counter.inc.success#0 > alice.Counter.inc.success#0"] = "claimed impossible";
  CoverageReport rep = measure_coverage(e.g, e.rs, suite, e.lib, wrong);
  ASSERT_EQ(rep.contradicted.size(), 1u);
  EXPECT_EQ(rep.infeasible(), 0u);
  EXPECT_EQ(rep.covered(), 7u);
  InfeasibleAnnotations unknown;
  unknown.reasons["alice.Counter.nope.success#0 > alice.Counter.inc.success#0"] = "x";
  EXPECT_THROW(measure_coverage(e.g, e.rs, suite, e.lib, unknown), std::invalid_argument);
}

TEST(StatementCoverage, WithdrawOnlyLeavesDepositUnvisited) {
  Env e = env("dao.msol", "alice=20", 1);
  TestCase t{"w", std::nullopt,
             {{"alice", "Vault", "constructor", 0, {}}, {"alice", "Vault", "withdrawFunds", 0, {ArgSpec::num(0)}}}, {}};
  StatementCoverage sc = measure_statement_coverage(e.g, execute(e, {t}));
  EXPECT_EQ(sc.visited + sc.unvisited.size(), sc.total);
  EXPECT_EQ(sc.total, statement_nodes(e.g).size());
  int deposit = e.g.function_index("Vault.depositFunds");
  size_t deposit_nodes = 0;
  for (NodeId n : statement_nodes(e.g)) deposit_nodes += e.g.node(n).function == deposit;
  size_t deposit_unvisited = 0;
  for (NodeId n : sc.unvisited) deposit_unvisited += e.g.node(n).function == deposit;
  EXPECT_GT(deposit_nodes, 0u);
  EXPECT_EQ(deposit_unvisited, deposit_nodes);
  EXPECT_LT(sc.percent(), 100.0);
  EXPECT_EQ(measure_statement_coverage(e.g, {}).visited, 0u);
}
