#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "txbasis/basis.hpp"
#include "txbasis/parser.hpp"

using namespace txbasis;

namespace {

Tcfg fixture_graph(const std::string& name, LowLevelRevert mode = LowLevelRevert::Cascade) {
  GraphOptions o;
  o.lowlevel = mode;
  return build_tcfg(build_dapp_model(parse_source(oracle::fixture(name)), parse_accounts("alice=10,bob=10")), o);
}

const char* kFixtures[] = {"fishtoken.msol", "dao.msol", "pool.msol", "counter.msol", "trivial.msol"};

size_t pred_visits(const Tcfg& g, const std::vector<NodeId>& p) {
  return static_cast<size_t>(std::count_if(p.begin(), p.end(), [&](NodeId n) { return g.node(n).kind == NodeKind::Pred; }));
}

}  // namespace

TEST(Basis, FishTokenTransferHasFivePaths) {
  Tcfg g = fixture_graph("fishtoken.msol");
  BasisPathSet b = generate_wtpbs(g, g.function(g.function_index("FishToken.transfer")).entry);
  EXPECT_EQ(b.paths.size(), 5u);
  EXPECT_TRUE(b.complete);
  EXPECT_EQ(b.function, "FishToken.transfer");
}

TEST(Basis, RankEqualsPathCountAndCyclomatic) {
  for (const char* f : kFixtures)
    for (auto mode : {LowLevelRevert::Cascade, LowLevelRevert::ReturnFalse}) {
      Tcfg g = fixture_graph(f, mode);
      for (const BasisPathSet& b : generate_all_wtpbs(g)) {
        std::vector<std::vector<std::int64_t>> rows;
        for (const auto& p : b.paths) rows.push_back(oracle::count_vector(g, p.nodes, b.metrics.edges));
        EXPECT_EQ(oracle::int_rank(rows), b.paths.size()) << f << " " << b.function;
        EXPECT_EQ(static_cast<long>(b.paths.size()), b.cyclomatic) << f << " " << b.function;
        EXPECT_TRUE(b.complete) << f << " " << b.function;
      }
    }
}

TEST(Basis, EveryPathIsWellFormed) {
  for (const char* f : kFixtures) {
    Tcfg g = fixture_graph(f);
    for (const BasisPathSet& b : generate_all_wtpbs(g))
      for (const auto& p : b.paths) {
        WtpCheck c = validate_wtp(g, p.nodes);
        ASSERT_TRUE(c) << f << ": " << c.reason;
        EXPECT_EQ(c.terminal, p.terminal);
        EXPECT_EQ(p.nodes.front(), b.entry);
        EXPECT_EQ(p.vector, oracle::count_vector(g, p.nodes, b.metrics.edges));
      }
  }
}

TEST(Basis, SpansEveryEnumeratedPath) {
  for (const char* f : kFixtures)
    for (auto mode : {LowLevelRevert::Cascade, LowLevelRevert::ReturnFalse}) {
      Tcfg g = fixture_graph(f, mode);
      for (const BasisPathSet& b : generate_all_wtpbs(g)) {
        std::vector<std::vector<std::int64_t>> base;
        for (const auto& p : b.paths) base.push_back(p.vector);
        for (const auto& p : oracle::enumerate_wtps(g, b.entry)) {
          auto rows = base;
          rows.push_back(oracle::count_vector(g, p, b.metrics.edges));
          EXPECT_EQ(oracle::int_rank(rows), base.size()) << f << " " << b.function;
        }
      }
    }
}

TEST(Basis, BaselineHasFewestPredVisits) {
  for (const char* f : kFixtures) {
    Tcfg g = fixture_graph(f);
    for (NodeId n : g.tx_entries()) {
      auto all = oracle::enumerate_wtps(g, n);
      ASSERT_FALSE(all.empty());
      auto best = *std::min_element(all.begin(), all.end(), [&](const auto& a, const auto& b) {
        size_t pa = pred_visits(g, a), pb = pred_visits(g, b);
        return pa != pb ? pa < pb : a < b;
      });
      EXPECT_EQ(baseline_path(g, n), best) << f;
    }
  }
}

TEST(Basis, TighterBudgetsStillValid) {
  Tcfg g = fixture_graph("pool.msol");
  SearchBudget tight{1, 1};
  for (const BasisPathSet& b : generate_all_wtpbs(g, tight)) {
    EXPECT_LE(static_cast<long>(b.paths.size()), b.cyclomatic);
    EXPECT_EQ(vector_rank(b.paths), b.paths.size());
    for (const auto& p : b.paths) EXPECT_TRUE(validate_wtp(g, p.nodes));
  }
}

TEST(Basis, Deterministic) {
  Tcfg g = fixture_graph("dao.msol");
  auto a = generate_all_wtpbs(g);
  auto b = generate_all_wtpbs(g);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].paths, b[i].paths);
}

TEST(RowSpace, HandMatrices) {
  EXPECT_EQ(vector_rank(std::vector<CountVector>{}), 0u);
  EXPECT_EQ(vector_rank({{1, 2, 3}, {2, 4, 6}}), 1u);
  EXPECT_EQ(vector_rank({{1, 0, 1}, {0, 1, 1}, {1, 1, 2}}), 2u);
  EXPECT_EQ(vector_rank({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}), 3u);
  EXPECT_EQ(vector_rank({{0, 0}, {0, 0}}), 0u);
  EXPECT_TRUE(span_contains({{2, 0}, {0, 3}}, {1, 1}));
  EXPECT_FALSE(span_contains({{1, 1, 0}}, {1, 0, 0}));
  RowSpace s(2);
  EXPECT_TRUE(s.add({3, 1}));
  EXPECT_FALSE(s.add({6, 2}));
  EXPECT_EQ(s.rank(), 1u);
  EXPECT_THROW(s.add({1, 2, 3}), std::invalid_argument);
}

TEST(RowSpace, AgreesWithIntegerOracle) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    std::vector<CountVector> m(rows, CountVector(cols));
    for (auto& r : m)
      for (auto& x : r) x = static_cast<std::int64_t>(rng() % 4);
    EXPECT_EQ(vector_rank(m), oracle::int_rank(m));
  }
}
