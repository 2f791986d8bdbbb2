#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "txbasis/experiment.hpp"
#include "txbasis/lexer.hpp"
#include "txbasis/mutation.hpp"
#include "txbasis/parser.hpp"
#include "txbasis/printer.hpp"

using namespace txbasis;

namespace {

const Mutant* find_mutant(const std::vector<Mutant>& ms, const std::string& id) {
  for (const auto& m : ms)
    if (m.desc.id == id) return &m;
  return nullptr;
}

std::vector<std::string> token_texts(const std::string& src) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(src))
    if (t.kind != TokKind::End) out.push_back(t.text);
  return out;
}

struct Diff {
  size_t prefix = 0;
  size_t removed = 0;  // tokens of the original not matched
  size_t added = 0;    // tokens of the mutant not matched
};

Diff token_diff(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  Diff d;
  while (d.prefix < a.size() && d.prefix < b.size() && a[d.prefix] == b[d.prefix]) ++d.prefix;
  size_t suffix = 0;
  while (suffix < a.size() - d.prefix && suffix < b.size() - d.prefix &&
         a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix])
    ++suffix;
  d.removed = a.size() - d.prefix - suffix;
  d.added = b.size() - d.prefix - suffix;
  return d;
}

TestCase dao_probe() {
  return {"probe",
          std::nullopt,
          {{"alice", "Vault", "constructor", 0, {}},
           {"alice", "Vault", "depositFunds", 5, {}},
           {"alice", "Vault", "withdrawFunds", 0, {ArgSpec::num(2)}}},
          {}};
}

}  // namespace

TEST(Mutation, FishTokenHasRelationalMutant) {
  auto ms = generate_mutants(parse_source(oracle::fixture("fishtoken.msol")));
  auto it = std::find_if(ms.begin(), ms.end(), [](const Mutant& m) {
    return m.desc.function == "FishToken.determineNewShark" && m.desc.original == "<" && m.desc.replacement == "<=";
  });
  ASSERT_NE(it, ms.end());
  EXPECT_EQ(it->desc.op, MutationOp::OperatorReplacement);
  EXPECT_EQ(it->desc.id.rfind("op-", 0), 0u);
}

TEST(Mutation, DaoOmitsBalanceUpdate) {
  auto ms = generate_mutants(parse_source(oracle::fixture("dao.msol")));
  const Mutant* m = find_mutant(ms, "del-18-5");
  ASSERT_NE(m, nullptr);
  EXPECT_EQ(m->desc.op, MutationOp::StatementOmission);
  EXPECT_EQ(m->desc.original, "balances[msg.sender] -= withdraw;");
  EXPECT_EQ(m->source.find("balances[msg.sender] -= withdraw;"), std::string::npos);
}

TEST(Mutation, EachMutantChangesOneSite) {
  for (const char* f : {"fishtoken.msol", "dao.msol", "pool.msol", "counter.msol"}) {
    SourceUnit u = parse_source(oracle::fixture(f));
    auto original = token_texts(print_unit(u));
    for (const auto& m : generate_mutants(u)) {
      Diff d = token_diff(original, token_texts(m.source));
      if (m.desc.op == MutationOp::StatementOmission) {
        EXPECT_GT(d.removed, 0u) << m.desc.id;
        EXPECT_EQ(d.added, 0u) << m.desc.id;
      } else {
        EXPECT_EQ(d.removed, 1u) << m.desc.id;
        EXPECT_EQ(d.added, 1u) << m.desc.id;
        EXPECT_EQ(original[d.prefix], m.desc.original) << m.desc.id;
      }
      EXPECT_NO_THROW(parse_source(m.source)) << m.desc.id;
    }
  }
}

TEST(Mutation, IdsAreUniqueAndDeterministic) {
  SourceUnit u = parse_source(oracle::fixture("pool.msol"));
  auto a = generate_mutants(u);
  auto b = generate_mutants(u);
  ASSERT_EQ(a.size(), b.size());
  std::set<std::string> ids;
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].desc.id, b[i].desc.id);
    EXPECT_EQ(a[i].source, b[i].source);
    EXPECT_TRUE(ids.insert(a[i].desc.id).second) << a[i].desc.id;
  }
}

TEST(Mutation, OperatorFilter) {
  SourceUnit u = parse_source(oracle::fixture("pool.msol"));
  for (MutationOp op : {MutationOp::OperatorReplacement, MutationOp::VariableReplacement, MutationOp::StatementOmission}) {
    auto ms = generate_mutants(u, {op});
    EXPECT_FALSE(ms.empty());
    for (const auto& m : ms) EXPECT_EQ(m.desc.op, op);
    EXPECT_EQ(parse_mutation_op(to_string(op)), op);
  }
  EXPECT_THROW(parse_mutation_op("bogus"), std::invalid_argument);
}

TEST(Experiment, OriginalIsNeverKilled) {
  std::string src = oracle::fixture("dao.msol");
  DappModel model = build_dapp_model(parse_source(src), parse_accounts("alice=100,bob=100"));
  Tcfg g = build_tcfg(model);
  Mutant same;
  same.desc.id = "same";
  same.source = print_unit(parse_source(src));
  auto rep = run_experiment(model, g, {{"probe", {dao_probe()}}}, {same});
  ASSERT_EQ(rep.mutants.size(), 1u);
  EXPECT_TRUE(rep.mutants[0].kills.empty());
  EXPECT_EQ(rep.rows[0].detected, 0u);
  EXPECT_EQ(rep.rows[0].denominator, 1u);
}

TEST(Experiment, KillEvidenceAndEquivalents) {
  std::string src = oracle::fixture("dao.msol");
  DappModel model = build_dapp_model(parse_source(src), parse_accounts("alice=100,bob=100"));
  Tcfg g = build_tcfg(model);
  auto ms = generate_mutants(model.unit);
  std::vector<NamedSuite> suites{{"probe", {dao_probe()}}};
  auto rep = run_experiment(model, g, suites, ms, {"del-18-5"});
  ASSERT_EQ(rep.mutants.size(), ms.size());
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_EQ(rep.rows[0].denominator, ms.size() - 1);
  EXPECT_EQ(rep.equivalent, std::vector<std::string>{"del-18-5"});
  auto want = observe(model, g, dao_probe());
  size_t killed = 0;
  for (const auto& r : rep.mutants) {
    auto it = r.kills.find("probe");
    if (it == r.kills.end()) continue;
    ++killed;
    const KillEvidence& ev = it->second;
    EXPECT_NE(ev.expected, ev.actual) << r.desc.id;
    ASSERT_LT(ev.line, want.size() + 1) << r.desc.id;
    if (ev.line < want.size()) {
      EXPECT_EQ(ev.expected, want[ev.line]) << r.desc.id;
    }
    const Mutant* m = find_mutant(ms, r.desc.id);
    DappModel mm = build_dapp_model(parse_source(m->source), model.accounts);
    Tcfg mg = build_tcfg(mm, g.options());
    auto got = observe(mm, mg, dao_probe());
    ASSERT_LT(ev.line, std::max(want.size(), got.size()));
    for (size_t i = 0; i < ev.line; ++i) EXPECT_EQ(want[i], got[i]) << r.desc.id;
  }
  size_t equivalent_killed = 0;
  for (const auto& r : rep.mutants) equivalent_killed += r.desc.equivalent && r.kills.count("probe");
  EXPECT_EQ(killed, rep.rows[0].detected + equivalent_killed);
  // marked equivalent only to exercise the exclusion; the probe still tells it apart
  const auto& omitted = *std::find_if(rep.mutants.begin(), rep.mutants.end(),
                                      [](const MutantResult& r) { return r.desc.id == "del-18-5"; });
  EXPECT_TRUE(omitted.kills.count("probe"));
  EXPECT_THROW(run_experiment(model, g, suites, ms, {"no-such-mutant"}), std::invalid_argument);
}
