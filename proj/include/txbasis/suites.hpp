#pragma once

// Test-suite construction: seeded random test cases, greedy selection for
// k-bounded requirement coverage and for statement coverage, and a random
// suite shaped like a given one.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "txbasis/coverage.hpp"
#include "txbasis/executor.hpp"
#include "txbasis/testcase.hpp"

namespace txbasis {

struct RandomTestConfig {
  std::uint64_t seed = 1;
  int min_steps = 1;
  int max_steps = 4;
  std::vector<U256> numbers{0, 1, 2, 3, 5};
  bool agents = true;       // scripted agents when the dapp has low-level calls
  bool full_range = false;  // uint arguments uniform over all 256-bit values
};

/// Deterministic generator. Draws use the raw 64-bit engine output so the
/// sequence does not depend on the standard library's distributions.
class RandomTestGenerator {
 public:
  RandomTestGenerator(const DappModel& model, const Tcfg& g, RandomTestConfig cfg)
      : model_(model), g_(g), cfg_(std::move(cfg)), rng_(cfg_.seed) {
    for (size_t c = 0; c < model.contracts.size(); ++c)
      for (const auto& f : model.contracts[c].state_changing) entries_.push_back({static_cast<int>(c), &f});
    for (const auto& a : model.accounts) addresses_.push_back(a.name);
    for (const auto& c : model.contracts) addresses_.push_back(c.name);
    has_lowlevel_ = uses_lowlevel();
  }

  std::uint64_t below(std::uint64_t n) { return n ? rng_() % n : 0; }

  /// A test case with `steps` calls (chosen at random when negative),
  /// preceded by deployments of every contract with a constructor step.
  TestCase make(const std::string& name, int steps = -1) {
    if (steps < 0) steps = cfg_.min_steps + static_cast<int>(below(static_cast<std::uint64_t>(cfg_.max_steps - cfg_.min_steps + 1)));
    return make_window(name, steps, {});
  }

  /// Deployments, `prefix` random calls, then one call per window tuple
  /// with random arguments.
  TestCase make_window(const std::string& name, int prefix, const std::vector<TxTuple>& window) {
    TestCase t;
    t.name = name;
    for (const auto& c : model_.contracts) t.steps.push_back({model_.accounts.at(0).name, c.name, "constructor", 0, {}});
    for (int i = 0; i < prefix && !entries_.empty(); ++i) {
      const auto& [ci, sig] = entries_[below(entries_.size())];
      t.steps.push_back(random_step(model_.accounts[below(model_.accounts.size())].name, ci, *sig));
    }
    for (const auto& w : window) {
      int ci = model_.contract_index(w.contract);
      const FunctionSig* sig = ci < 0 ? nullptr : model_.contracts[ci].find_entry(w.function);
      if (!sig) throw ExecutionError("'" + w.qualified() + "' is not a transaction entry");
      t.steps.push_back(random_step(w.account, ci, *sig));
    }
    if (cfg_.agents && has_lowlevel_) {
      for (const auto& a : model_.accounts) {
        if (below(2) == 0) continue;
        AgentScript sc;
        sc.account = a.name;
        int n = static_cast<int>(below(3));
        for (int i = 0; i < n && !entries_.empty(); ++i) {
          const auto& [ci, sig] = entries_[below(entries_.size())];
          sc.actions.push_back({model_.contracts[ci].name, sig->name, 0, random_args(sig->params)});
        }
        sc.depth = 1 + static_cast<int>(below(2));
        if (g_.options().lowlevel == LowLevelRevert::ReturnFalse && below(4) == 0) sc.final = AgentFinal::Revert;
        t.agents.push_back(std::move(sc));
      }
    }
    return t;
  }

  /// Number of leading deployment steps in every generated test.
  size_t prologue() const { return model_.contracts.size(); }

 private:
  const DappModel& model_;
  const Tcfg& g_;
  RandomTestConfig cfg_;
  std::mt19937_64 rng_;
  std::vector<std::pair<int, const FunctionSig*>> entries_;
  std::vector<std::string> addresses_;
  bool has_lowlevel_ = false;

  bool uses_lowlevel() const {
    for (const auto& n : g_.nodes())
      if (n.kind == NodeKind::CallSite && g_.pair_of(n.id).low_level) return true;
    return false;
  }

  TestStep random_step(const std::string& account, int ci, const FunctionSig& sig) {
    TestStep s;
    s.account = account;
    s.contract = model_.contracts[ci].name;
    s.function = sig.name;
    if (sig.payable()) s.value = pick_number();
    s.args = random_args(sig.params);
    return s;
  }

  U256 pick_number() {
    if (cfg_.full_range) {
      U256 v = 0;
      for (int i = 0; i < 4; ++i) v = (v << 64) | U256(rng_());
      return v;
    }
    return cfg_.numbers.empty() ? U256(0) : cfg_.numbers[below(cfg_.numbers.size())];
  }

  std::vector<ArgSpec> random_args(const std::vector<Param>& params) {
    std::vector<ArgSpec> out;
    for (const auto& p : params) {
      switch (p.type) {
        case BaseType::Uint: out.push_back(ArgSpec::num(pick_number())); break;
        case BaseType::Bool: out.push_back(ArgSpec::flag(below(2) == 1)); break;
        case BaseType::Address: out.push_back(ArgSpec::addr(addresses_[below(addresses_.size())])); break;
      }
    }
    return out;
  }
};

/// Generates `count` tests that run without test-case errors on the given
/// program. Tests whose execution errors are skipped and redrawn.
inline std::vector<TestCase> random_pool(const DappModel& model, const Tcfg& g, const RandomTestConfig& cfg,
                                         size_t count, const std::string& prefix = "random") {
  RandomTestGenerator gen(model, g, cfg);
  std::vector<TestCase> out;
  for (size_t attempts = 0; out.size() < count && attempts < count * 20; ++attempts) {
    TestCase t = gen.make(prefix + "-" + std::to_string(out.size()));
    try {
      execute_test_case(model, g, t);
    } catch (const ExecutionError&) {
      continue;
    }
    out.push_back(std::move(t));
  }
  return out;
}

/// Random suite with the same number of tests and the same per-test step
/// counts as `shape`.
inline std::vector<TestCase> random_like(const DappModel& model, const Tcfg& g, const RandomTestConfig& cfg,
                                         const std::vector<TestCase>& shape, const std::string& prefix = "random") {
  RandomTestGenerator gen(model, g, cfg);
  std::vector<TestCase> out;
  for (const auto& s : shape) {
    int steps = static_cast<int>(s.steps.size() - std::min(s.steps.size(), gen.prologue()));
    for (int attempt = 0;; ++attempt) {
      TestCase t = gen.make(prefix + "-" + std::to_string(out.size()), steps);
      try {
        execute_test_case(model, g, t);
      } catch (const ExecutionError&) {
        if (attempt < 1000) continue;
        throw;
      }
      out.push_back(std::move(t));
      break;
    }
  }
  return out;
}

namespace detail {

// Greedy set cover: repeatedly takes the candidate adding the most new
// items, lowest index first on ties, until nothing new can be added.
inline std::vector<size_t> greedy_cover(const std::vector<std::set<size_t>>& covers) {
  std::set<size_t> have;
  std::vector<size_t> chosen;
  std::vector<bool> used(covers.size(), false);
  for (;;) {
    size_t best = covers.size(), gain = 0;
    for (size_t i = 0; i < covers.size(); ++i) {
      if (used[i]) continue;
      size_t n = 0;
      for (size_t x : covers[i]) n += !have.count(x);
      if (n > gain) gain = n, best = i;
    }
    if (best == covers.size()) break;
    used[best] = true;
    chosen.push_back(best);
    have.insert(covers[best].begin(), covers[best].end());
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace detail

/// Indices of pool tests chosen greedily to cover the most requirements.
inline std::vector<size_t> select_for_requirements(const Tcfg& g, const RequirementSet& rs,
                                                   const std::vector<ExecutedTest>& pool, const BasisLibrary& bases,
                                                   MatchMode mode = MatchMode::Exact) {
  std::vector<std::set<size_t>> covers(pool.size());
  for (size_t t = 0; t < pool.size(); ++t)
    for (size_t r = 0; r < rs.requirements.size(); ++r)
      if (requirement_covered(g, rs, rs.requirements[r], pool[t].records, bases, mode)) covers[t].insert(r);
  return detail::greedy_cover(covers);
}

/// Indices of pool tests chosen greedily to visit the most statements.
inline std::vector<size_t> select_for_statements(const Tcfg& g, const std::vector<ExecutedTest>& pool) {
  std::vector<NodeId> stmts = statement_nodes(g);
  std::set<NodeId> wanted(stmts.begin(), stmts.end());
  std::vector<std::set<size_t>> covers(pool.size());
  for (size_t t = 0; t < pool.size(); ++t)
    for (const auto& r : pool[t].records)
      for (NodeId n : r.trace)
        if (wanted.count(n)) covers[t].insert(static_cast<size_t>(n));
  return detail::greedy_cover(covers);
}

struct TargetedConfig {
  RandomTestConfig random;
  int attempts = 100;   // random tests tried per target
  int max_prefix = 3;   // random calls before the targeted window
};

namespace detail {

inline std::optional<std::vector<TxRecord>> try_run(const DappModel& model, const Tcfg& g, const TestCase& t) {
  try {
    return execute_test_case(model, g, t);
  } catch (const ExecutionError&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Suite built target by target: for each requirement no chosen test covers
/// yet, random tests made of a short random prefix followed by the
/// requirement's tuples are tried until one covers it. Requirements with no
/// covering test within the attempt budget stay uncovered.
inline std::vector<TestCase> targeted_requirement_suite(const DappModel& model, const Tcfg& g, const RequirementSet& rs,
                                                        const BasisLibrary& bases, const TargetedConfig& cfg,
                                                        MatchMode mode = MatchMode::Exact,
                                                        const std::string& prefix = "kbounded") {
  RandomTestGenerator gen(model, g, cfg.random);
  std::vector<TestCase> suite;
  std::vector<bool> covered(rs.requirements.size(), false);
  for (size_t r = 0; r < rs.requirements.size(); ++r) {
    if (covered[r]) continue;
    std::vector<TxTuple> window;
    for (int u : rs.requirements[r].tuples) window.push_back(rs.u.at(u).tuple);
    for (int a = 0; a < cfg.attempts; ++a) {
      int pre = static_cast<int>(gen.below(static_cast<std::uint64_t>(cfg.max_prefix + 1)));
      TestCase t = gen.make_window(prefix + "-" + std::to_string(suite.size()), pre, window);
      auto recs = detail::try_run(model, g, t);
      if (!recs || !requirement_covered(g, rs, rs.requirements[r], *recs, bases, mode)) continue;
      for (size_t q = r; q < rs.requirements.size(); ++q)
        if (!covered[q] && requirement_covered(g, rs, rs.requirements[q], *recs, bases, mode)) covered[q] = true;
      suite.push_back(std::move(t));
      break;
    }
  }
  return suite;
}

/// Same construction with statements as targets: random tests are tried
/// until one visits the next unvisited statement.
inline std::vector<TestCase> targeted_statement_suite(const DappModel& model, const Tcfg& g, const TargetedConfig& cfg,
                                                      const std::string& prefix = "statement") {
  RandomTestGenerator gen(model, g, cfg.random);
  std::vector<TestCase> suite;
  std::set<NodeId> seen;
  for (NodeId n : statement_nodes(g)) {
    if (seen.count(n)) continue;
    for (int a = 0; a < cfg.attempts; ++a) {
      TestCase t = gen.make(prefix + "-" + std::to_string(suite.size()));
      auto recs = detail::try_run(model, g, t);
      if (!recs) continue;
      std::set<NodeId> visited;
      for (const auto& r : *recs) visited.insert(r.trace.begin(), r.trace.end());
      if (!visited.count(n)) continue;
      seen.insert(visited.begin(), visited.end());
      suite.push_back(std::move(t));
      break;
    }
  }
  return suite;
}

}  // namespace txbasis
