#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "oracles.hpp"
#include "txbasis/interactions.hpp"
#include "txbasis/parser.hpp"

using namespace txbasis;

namespace {

struct Loaded {
  DappModel model;
  Tcfg g;
  BasisLibrary lib;
};

Loaded setup(const std::string& name, const std::string& accounts) {
  DappModel m = build_dapp_model(parse_source(oracle::fixture(name)), parse_accounts(accounts));
  Tcfg g = build_tcfg(m);
  BasisLibrary lib = build_basis_library(g);
  return {std::move(m), std::move(g), std::move(lib)};
}

std::vector<TupleEntry> random_u(std::mt19937_64& rng) {
  std::vector<TupleEntry> u;
  size_t n = 1 + rng() % 5;
  for (size_t i = 0; i < n; ++i) {
    TupleEntry e{{"a", "C", "f" + std::to_string(i), Outcome::Success}, {}};
    size_t paths = 1 + rng() % 4;
    for (size_t p = 0; p < paths; ++p) e.paths.push_back(static_cast<int>(p));
    u.push_back(e);
  }
  return u;
}

// Counts slot sequences by explicit recursion over every choice.
std::uint64_t brute_count(const std::vector<TupleEntry>& u, int k) {
  if (k == 0) return 1;
  std::uint64_t total = 0;
  for (const auto& e : u)
    for (size_t p = 0; p < e.paths.size(); ++p) total += brute_count(u, k - 1);
  return total;
}

}  // namespace

TEST(Interactions, DaoTuplesDropImpossibleOutcomes) {
  Loaded s = setup("dao.msol", "alice=10,bob=10");
  auto u = enumerate_tuples(s.model, s.lib);
  std::vector<std::string> ids;
  for (const auto& e : u) ids.push_back(e.tuple.to_string());
  EXPECT_EQ(ids, (std::vector<std::string>{
                     "alice.Vault.depositFunds.success", "alice.Vault.withdrawFunds.success",
                     "alice.Vault.withdrawFunds.revert", "bob.Vault.depositFunds.success",
                     "bob.Vault.withdrawFunds.success", "bob.Vault.withdrawFunds.revert"}));
  for (const auto& e : u) {
    const BasisPathSet& b = s.lib.at(e.tuple.qualified());
    for (int p : e.paths) EXPECT_EQ(b.paths[p].terminal, terminal_for(e.tuple.outcome));
  }
  EXPECT_EQ(count_requirements(u, 2), brute_count(u, 2));
  EXPECT_EQ(enumerate_requirements(u, 2).requirements.size(), count_requirements(u, 2));
}

TEST(Interactions, CounterHasNineRequirementsAtTwo) {
  Loaded s = setup("counter.msol", "alice=10");
  auto u = enumerate_tuples(s.model, s.lib);
  ASSERT_EQ(u.size(), 3u);
  EXPECT_EQ(count_requirements(u, 2), 9u);
  EXPECT_EQ(count_requirements(u, 1), 3u);
}

TEST(Interactions, ClosedFormMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    auto u = random_u(rng);
    int k = 1 + static_cast<int>(rng() % 4);
    std::uint64_t expected = brute_count(u, k);
    EXPECT_EQ(count_requirements(u, k), expected);
    EXPECT_EQ(enumerate_requirements(u, k).requirements.size(), expected);
  }
}

TEST(Interactions, LexicographicAndUnique) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto u = random_u(rng);
    RequirementSet rs = enumerate_requirements(u, 3);
    std::set<std::string> ids;
    for (size_t i = 0; i < rs.requirements.size(); ++i) {
      const auto& r = rs.requirements[i];
      ASSERT_EQ(r.tuples.size(), 3u);
      EXPECT_TRUE(ids.insert(rs.id(r)).second);
      if (i == 0) continue;
      const auto& prev = rs.requirements[i - 1];
      EXPECT_TRUE(std::tie(prev.tuples, prev.paths) < std::tie(r.tuples, r.paths));
    }
  }
}

TEST(Interactions, InvalidKAndOverflow) {
  std::vector<TupleEntry> u{{{"a", "C", "f", Outcome::Success}, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}}};
  EXPECT_THROW(count_requirements(u, 0), std::invalid_argument);
  EXPECT_THROW(enumerate_requirements(u, -1), std::invalid_argument);
  EXPECT_EQ(count_requirements(u, 19), 10000000000000000000ull);
  EXPECT_THROW(count_requirements(u, 20), std::overflow_error);
  EXPECT_THROW(enumerate_requirements(u, 9), std::length_error);
}

TEST(Interactions, EmptyUniverse) {
  EXPECT_EQ(count_requirements({}, 2), 0u);
  EXPECT_TRUE(enumerate_requirements({}, 2).requirements.empty());
}

TEST(Interactions, IdsNameAccountFunctionOutcomeAndPath) {
  Loaded s = setup("counter.msol", "alice=10");
  RequirementSet rs = enumerate_requirements(enumerate_tuples(s.model, s.lib), 2);
  EXPECT_EQ(rs.id(rs.requirements.front()), "alice.Counter.inc.success#0 > alice.Counter.inc.success#0");
}
