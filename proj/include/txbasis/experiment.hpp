#pragma once

// Mutation experiment: observes each suite on the original program as the
// oracle, replays the suites on every mutant and reports kills per suite.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "txbasis/mutation.hpp"
#include "txbasis/suites.hpp"

namespace txbasis {

namespace detail {

inline std::string format_value(const DappModel& model, const TypedValue& v) {
  switch (v.type) {
    case BaseType::Bool: return v.value ? "true" : "false";
    case BaseType::Address: return address_name(model, v.value);
    case BaseType::Uint: return v.value.str();
  }
  return "?";
}

inline std::string join_values(const DappModel& model, const std::vector<TypedValue>& vs) {
  std::string out;
  for (size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + format_value(model, vs[i]);
  return out;
}

// Every argument tuple for a view probe: addresses range over roles and
// contracts, numbers over 0..2, bools over both values.
inline std::vector<std::vector<TypedValue>> probe_arguments(const DappModel& model, const std::vector<Param>& params) {
  std::vector<std::vector<TypedValue>> out{{}};
  for (const auto& p : params) {
    std::vector<TypedValue> dom;
    switch (p.type) {
      case BaseType::Uint:
        for (unsigned n = 0; n < 3; ++n) dom.push_back({BaseType::Uint, n});
        break;
      case BaseType::Bool:
        dom.push_back({BaseType::Bool, 0});
        dom.push_back({BaseType::Bool, 1});
        break;
      case BaseType::Address:
        for (size_t i = 0; i < model.accounts.size(); ++i)
          dom.push_back({BaseType::Address, AddressBook::account(static_cast<int>(i))});
        for (size_t i = 0; i < model.contracts.size(); ++i)
          dom.push_back({BaseType::Address, AddressBook::contract(static_cast<int>(i))});
        break;
    }
    std::vector<std::vector<TypedValue>> next;
    for (const auto& prefix : out)
      for (const auto& v : dom) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace detail

/// Externally visible behaviour of one test: per step the outcome, returns
/// and logs, then every view function over the probe domain. Traces are
/// left out since a mutant's graph differs from the original's.
inline std::vector<std::string> observe(const DappModel& model, const Tcfg& g, const TestCase& t,
                                        size_t statement_limit = 100000) {
  std::vector<std::string> out;
  try {
    Executor ex(model, g, t, statement_limit);
    while (!ex.done()) {
      const size_t i = ex.next_step();
      const TxRecord& r = ex.step();
      std::string line = "step " + std::to_string(i) + ": " + r.account + " " + r.contract + "." + r.function + "(" +
                         detail::join_values(model, r.inputs) + ") value " + r.value.str() + " -> " +
                         to_string(r.outcome);
      if (!r.returns.empty()) line += " returns (" + detail::join_values(model, r.returns) + ")";
      for (const auto& l : r.logs) line += " log \"" + l + "\"";
      out.push_back(std::move(line));
      for (size_t c = 0; c < model.contracts.size(); ++c) {
        if (!ex.world().contracts[c].deployed) continue;
        for (const auto& v : model.contracts[c].views) {
          for (const auto& args : detail::probe_arguments(model, v.params)) {
            auto res = ex.view_call(model.contracts[c].name, v.name, args);
            out.push_back("step " + std::to_string(i) + " view " + model.contracts[c].name + "." + v.name + "(" +
                          detail::join_values(model, args) + ") = " +
                          (res ? detail::format_value(model, *res) : std::string("revert")));
          }
        }
      }
    }
  } catch (const std::exception& e) {
    out.push_back(std::string("error: ") + e.what());
  }
  return out;
}

struct NamedSuite {
  std::string name;
  std::vector<TestCase> tests;
};

struct KillEvidence {
  std::string test;
  size_t line = 0;
  std::string expected;
  std::string actual;
};

struct MutantResult {
  MutantDescriptor desc;
  std::map<std::string, KillEvidence> kills;  // by suite name
};

struct ExperimentRow {
  std::string method;
  size_t tests = 0;
  size_t detected = 0;
  size_t denominator = 0;

  double percent() const {
    return denominator ? 100.0 * static_cast<double>(detected) / static_cast<double>(denominator) : 0.0;
  }
};

struct ExperimentReport {
  std::uint64_t seed = 0;
  std::vector<NamedSuite> suites;
  std::vector<MutantResult> mutants;
  std::vector<ExperimentRow> rows;
  std::vector<std::string> equivalent;  // excluded from the denominators
  std::vector<std::string> unbuildable;
};

namespace detail {

inline std::optional<KillEvidence> compare_observations(const std::string& test, const std::vector<std::string>& want,
                                                        const std::vector<std::string>& got) {
  const size_t n = std::max(want.size(), got.size());
  for (size_t i = 0; i < n; ++i) {
    std::string a = i < want.size() ? want[i] : "<nothing>";
    std::string b = i < got.size() ? got[i] : "<nothing>";
    if (a != b) return KillEvidence{test, i, a, b};
  }
  return std::nullopt;
}

}  // namespace detail

/// Replays every suite on every mutant against the original's observations.
/// A mutant is killed by a suite when some test observes differently; the
/// first differing line is kept as evidence.
inline ExperimentReport run_experiment(const DappModel& model, const Tcfg& g, const std::vector<NamedSuite>& suites,
                                       const std::vector<Mutant>& mutants, const std::set<std::string>& equivalent = {},
                                       std::uint64_t seed = 0) {
  ExperimentReport rep;
  rep.seed = seed;
  rep.suites = suites;
  std::vector<std::vector<std::vector<std::string>>> oracle;
  for (const auto& s : suites) {
    oracle.emplace_back();
    for (const auto& t : s.tests) oracle.back().push_back(observe(model, g, t));
  }
  std::set<std::string> known;
  for (const auto& m : mutants) {
    known.insert(m.desc.id);
    MutantResult res;
    res.desc = m.desc;
    res.desc.equivalent = res.desc.equivalent || equivalent.count(m.desc.id) > 0;
    std::optional<DappModel> mm;
    std::optional<Tcfg> mg;
    try {
      mm = build_dapp_model(parse_source(m.source), model.accounts);
      mg = build_tcfg(*mm, g.options());
    } catch (const std::exception&) {
      rep.unbuildable.push_back(m.desc.id);
      continue;
    }
    for (size_t s = 0; s < suites.size(); ++s) {
      for (size_t t = 0; t < suites[s].tests.size(); ++t) {
        auto got = observe(*mm, *mg, suites[s].tests[t]);
        if (auto ev = detail::compare_observations(suites[s].tests[t].name, oracle[s][t], got)) {
          res.kills[suites[s].name] = *ev;
          break;
        }
      }
    }
    if (res.desc.equivalent) rep.equivalent.push_back(res.desc.id);
    rep.mutants.push_back(std::move(res));
  }
  for (const auto& id : equivalent)
    if (!known.count(id)) throw std::invalid_argument("equivalence annotation names unknown mutant '" + id + "'");
  for (const auto& s : suites) {
    ExperimentRow row;
    row.method = s.name;
    row.tests = s.tests.size();
    for (const auto& m : rep.mutants) {
      if (m.desc.equivalent) continue;
      ++row.denominator;
      row.detected += m.kills.count(s.name);
    }
    rep.rows.push_back(row);
  }
  return rep;
}

struct ExperimentConfig {
  std::uint64_t seed = 7;
  int k = 2;
  SearchBudget budget;
  MatchMode match = MatchMode::Exact;
  int attempts = 100;
  int max_prefix = 3;
  int min_steps = 1;
  int max_steps = 4;
  bool random_full_range = true;  // random suite draws uint calldata over all 256-bit values
};

/// The three compared suites: one targeted at the k-bounded requirements,
/// one targeted at statements, and a random suite with the k-bounded
/// suite's test count and per-test step counts. Each draws from its own
/// stream derived from the seed.
inline std::vector<NamedSuite> build_experiment_suites(const DappModel& model, const Tcfg& g,
                                                       const ExperimentConfig& cfg) {
  BasisLibrary bases = build_basis_library(g, cfg.budget);
  RequirementSet rs = enumerate_requirements(enumerate_tuples(model, bases), cfg.k);
  TargetedConfig tc;
  tc.attempts = cfg.attempts;
  tc.max_prefix = cfg.max_prefix;
  tc.random.min_steps = cfg.min_steps;
  tc.random.max_steps = cfg.max_steps;
  NamedSuite kb{"k-bounded", {}}, st{"statement", {}}, rnd{"random", {}};
  tc.random.seed = cfg.seed;
  kb.tests = targeted_requirement_suite(model, g, rs, bases, tc, cfg.match, "kbounded");
  tc.random.seed = cfg.seed + 1;
  st.tests = targeted_statement_suite(model, g, tc, "statement");
  tc.random.seed = cfg.seed + 2;
  tc.random.full_range = cfg.random_full_range;
  rnd.tests = random_like(model, g, tc.random, kb.tests, "random");
  return {kb, st, rnd};
}

}  // namespace txbasis
