// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "txbasis/basis.hpp"
#include "txbasis/coverage.hpp"
#include "txbasis/executor.hpp"
#include "txbasis/io.hpp"
#include "txbasis/parser.hpp"
#include "txbasis/suites.hpp"

using namespace txbasis;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;
};

using Check = std::function<Verdict()>;

struct Dapp {
  DappModel model;
  Tcfg g;
};

Dapp load(const std::string& fixture, const std::string& accounts, GraphOptions o = {}) {
  DappModel m = build_dapp_model(parse_source(oracle::fixture(fixture)), parse_accounts(accounts));
  Tcfg g = build_tcfg(m, o);
  return {std::move(m), std::move(g)};
}

const char* kFixtures[] = {"fishtoken.msol", "dao.msol", "pool.msol", "counter.msol", "trivial.msol"};

// Accumulates failures; the first few are kept for the report line.
struct Failures {
  size_t count = 0;
  std::string first;
  void add(const std::string& why) {
    if (count++ == 0) first = why;
  }
  Verdict result(const std::string& summary) const {
    if (count == 0) return {true, summary};
    return {false, std::to_string(count) + " failure(s), first: " + first};
  }
};

std::string run_cli(const std::string& args, int& code) {
  std::string cmd = "\"" TXBASIS_CLI "\" " + args + " 2>&1";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    code = -1;
    return out;
  }
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int status = pclose(p);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string fx(const std::string& name) { return "\"" + std::string(TXBASIS_FIXTURES) + "/" + name + "\""; }

// ---- criteria ---------------------------------------------------------------

Verdict fishtoken_fidelity() {
  Failures f;
  Dapp d = load("fishtoken.msol", "alice=10");
  for (const char* fn : {"FishToken.transfer", "FishToken.issueTokens"}) {
    NodeId entry = d.g.function(d.g.function_index(fn)).entry;
    auto m = reachable_metrics(d.g, entry);
    BasisPathSet b = generate_wtpbs(d.g, entry);
    if (m.cyclomatic != 5) f.add(std::string(fn) + " cyclomatic " + std::to_string(m.cyclomatic));
    if (b.paths.size() != 5 || !b.complete) f.add(std::string(fn) + " basis size " + std::to_string(b.paths.size()));
  }
  return f.result("transfer and issueTokens: cyclomatic 5, 5 paths, complete");
}

Verdict dao_fidelity() {
  Failures f;
  Dapp d = load("dao.msol", "alice=10");
  const auto& wf = d.g.function(d.g.function_index("Vault.withdrawFunds"));
  const auto& inner = d.g.function(d.g.function_index("Vault._withdrawFunds"));
  const auto& dep = d.g.function(d.g.function_index("Vault.depositFunds"));
  const auto& ext = d.g.function(*d.g.ext_function());
  BasisPathSet b = generate_wtpbs(d.g, wf.entry);
  if (b.cyclomatic != 5) f.add("cyclomatic " + std::to_string(b.cyclomatic));
  if (b.paths.size() != 5 || !b.complete) f.add("basis size " + std::to_string(b.paths.size()));
  bool via_deposit = false, reentrant = false, reverting = false, chain = false;
  for (const auto& p : b.paths) {
    const auto& n = p.nodes;
    via_deposit |= std::count(n.begin(), n.end(), dep.entry) > 0;
    reentrant |= std::count(n.begin(), n.end(), wf.entry) >= 2;
    reverting |= p.terminal == Terminal::Revert;
    for (size_t i = 0; i + 2 < n.size(); ++i)
      chain |= n[i] == *ext.revert && n[i + 1] == *inner.revert && n[i + 2] == *wf.revert;
  }
  if (!via_deposit) f.add("no path through depositFunds");
  if (!reentrant) f.add("no reentrant withdrawFunds path");
  if (!reverting) f.add("no revert-terminal path");
  if (!chain) f.add("no Revert_ext -> Revert_inner -> Revert_withdraw chain");
  return f.result("withdrawFunds: cyclomatic 5, basis has deposit, reentrant, revert and cascade paths");
}

Verdict independence_and_spanning() {
  Failures f;
  size_t entries = 0, checked = 0;
  for (const char* fx_name : kFixtures)
    for (auto mode : {LowLevelRevert::Cascade, LowLevelRevert::ReturnFalse}) {
      GraphOptions o;
      o.lowlevel = mode;
      Dapp d = load(fx_name, "alice=10,bob=10", o);
      for (const BasisPathSet& b : generate_all_wtpbs(d.g)) {
        ++entries;
        std::string where = std::string(fx_name) + " " + b.function;
        if (vector_rank(b.paths) != b.paths.size()) f.add(where + ": dependent paths");
        if (!b.complete) continue;
        std::vector<std::vector<std::int64_t>> base;
        for (const auto& p : b.paths) base.push_back(p.vector);
        for (const auto& p : oracle::enumerate_wtps(d.g, b.entry)) {
          ++checked;
          auto v = oracle::count_vector(d.g, p, b.metrics.edges);
          if (!span_contains(b.vectors(), v)) f.add(where + ": enumerated path outside the span");
          auto rows = base;
          rows.push_back(v);
          if (oracle::int_rank(rows) != base.size()) f.add(where + ": integer oracle disagrees on span");
        }
      }
    }
  return f.result(std::to_string(entries) + " entries independent; " + std::to_string(checked) +
                  " enumerated paths spanned");
}

Verdict grammar_validity() {
  Failures f;
  size_t paths = 0, traces = 0, tests = 0;
  struct Config {
    const char* fixture;
    LowLevelRevert mode;
  };
  const Config configs[] = {{"fishtoken.msol", LowLevelRevert::Cascade},
                            {"dao.msol", LowLevelRevert::Cascade},
                            {"dao.msol", LowLevelRevert::ReturnFalse},
                            {"pool.msol", LowLevelRevert::Cascade},
                            {"counter.msol", LowLevelRevert::Cascade}};
  for (const auto& c : configs) {
    GraphOptions o;
    o.lowlevel = c.mode;
    Dapp d = load(c.fixture, "alice=30,bob=30", o);
    for (const BasisPathSet& b : generate_all_wtpbs(d.g))
      for (const auto& p : b.paths) {
        ++paths;
        WtpCheck chk = validate_wtp(d.g, p.nodes);
        if (!chk || chk.terminal != p.terminal) f.add(std::string(c.fixture) + " basis path of " + b.function);
      }
    RandomTestConfig rc;
    rc.seed = 1000 + paths;
    rc.max_steps = 5;
    for (const TestCase& t : random_pool(d.model, d.g, rc, 200)) {
      ++tests;
      for (const TxRecord& r : execute_test_case(d.model, d.g, t)) {
        if (r.trace.empty() && r.function == "constructor") continue;
        ++traces;
        WtpCheck chk = validate_wtp(d.g, r.trace);
        if (!chk) f.add(std::string(c.fixture) + " " + t.name + ": " + chk.reason);
        else if (chk.terminal != terminal_for(r.outcome)) f.add(std::string(c.fixture) + " " + t.name + ": terminal");
      }
    }
  }
  if (tests != 1000) f.add("only " + std::to_string(tests) + " random tests generated");
  return f.result(std::to_string(paths) + " basis paths and " + std::to_string(traces) + " traces from " +
                  std::to_string(tests) + " random tests are valid");
}

void brute_requirements(const std::vector<TupleEntry>& u, int k, std::vector<std::string>& prefix,
                        std::set<std::string>& out) {
  if (static_cast<int>(prefix.size()) == k) {
    std::string id;
    for (size_t i = 0; i < prefix.size(); ++i) id += (i ? " > " : "") + prefix[i];
    out.insert(id);
    return;
  }
  for (const auto& e : u)
    for (int p : e.paths) {
      prefix.push_back(e.tuple.to_string() + "#" + std::to_string(p));
      brute_requirements(u, k, prefix, out);
      prefix.pop_back();
    }
}

Verdict requirement_counting() {
  Failures f;
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    std::vector<TupleEntry> u;
    size_t n = 1 + rng() % 5;
    for (size_t i = 0; i < n; ++i) {
      TupleEntry e{{"a" + std::to_string(rng() % 2), "C", "f" + std::to_string(i), rng() % 2 ? Outcome::Success : Outcome::Revert}, {}};
      size_t paths = 1 + rng() % 4;
      for (size_t p = 0; p < paths; ++p) e.paths.push_back(static_cast<int>(p + rng() % 2));
      std::sort(e.paths.begin(), e.paths.end());
      e.paths.erase(std::unique(e.paths.begin(), e.paths.end()), e.paths.end());
      u.push_back(e);
    }
    int k = 1 + static_cast<int>(rng() % 3);
    std::set<std::string> brute;
    std::vector<std::string> prefix;
    brute_requirements(u, k, prefix, brute);
    RequirementSet rs = enumerate_requirements(u, k);
    std::set<std::string> ids;
    for (const auto& r : rs.requirements) ids.insert(rs.id(r));
    if (rs.requirements.size() != brute.size() || count_requirements(u, k) != brute.size() || ids != brute)
      f.add("instance " + std::to_string(t) + " k=" + std::to_string(k));
  }
  return f.result("100 random instances agree with brute force");
}

Verdict rollback_and_conservation() {
  Failures f;
  size_t reverts = 0, steps = 0, tests = 0;
  for (auto mode : {LowLevelRevert::Cascade, LowLevelRevert::ReturnFalse}) {
    GraphOptions o;
    o.lowlevel = mode;
    o.arith = ArithMode::Checked;
    Dapp d = load("dao.msol", "alice=50,bob=50", o);
    RandomTestConfig rc;
    rc.seed = mode == LowLevelRevert::Cascade ? 61 : 62;
    rc.max_steps = 6;
    for (const TestCase& t : random_pool(d.model, d.g, rc, 500)) {
      ++tests;
      Executor ex(d.model, d.g, t);
      const U256 total = ex.world().total_ether();
      while (!ex.done()) {
        WorldState before = ex.world();
        const TxRecord& r = ex.step();
        ++steps;
        if (r.outcome == Outcome::Revert) {
          ++reverts;
          if (!(ex.world() == before)) f.add(t.name + ": revert changed the world");
        }
        if (ex.world().total_ether() != total) f.add(t.name + ": ether not conserved");
      }
    }
  }
  if (tests != 1000) f.add("only " + std::to_string(tests) + " random tests generated");
  return f.result(std::to_string(tests) + " tests, " + std::to_string(steps) + " steps, " + std::to_string(reverts) +
                  " reverts restored; ether conserved");
}

Verdict coverage_semantics() {
  Failures f;
  Dapp d = load("counter.msol", "alice=10");
  BasisLibrary lib = build_basis_library(d.g);
  RequirementSet rs = enumerate_requirements(enumerate_tuples(d.model, lib), 2);
  auto infeasible = read_infeasible(oracle::fixture("counter.infeasible.json"));
  std::vector<ExecutedTest> suite;
  for (const auto& t : read_testcases(oracle::fixture("counter.tests.json")))
    suite.push_back({t.name, execute_test_case(d.model, d.g, t)});
  CoverageReport rep = measure_coverage(d.g, rs, suite, lib, infeasible);
  if (rep.adjusted_percent() != 100.0) f.add("adjusted " + percent_text(rep.adjusted_percent()));
  if (!rep.contradicted.empty()) f.add("contradicted annotation " + rep.contradicted[0]);
  for (size_t drop = 0; drop < suite.size(); ++drop) {
    auto smaller = suite;
    smaller.erase(smaller.begin() + static_cast<long>(drop));
    if (measure_coverage(d.g, rs, smaller, lib, infeasible).covered() >= rep.covered())
      f.add("dropping " + suite[drop].name + " keeps coverage");
  }
  return f.result(std::to_string(rep.covered()) + "/" + std::to_string(rep.total() - rep.infeasible()) +
                  " feasible requirements, every test needed");
}

Verdict experiment_direction() {
  Failures f;
  Json golden = Json::parse(oracle::fixture("pool.golden.json"));
  int code = 0;
  std::string out = run_cli("experiment " + fx("pool.msol") + " --accounts " + golden["accounts"].get<std::string>() +
                                " --seed " + std::to_string(golden["seed"].get<int>()) + " --mutants-dir " +
                                fx("pool_mutants") + " --equivalent " + fx("pool.equivalent.json"),
                            code);
  if (code != 0) return {false, "experiment exited " + std::to_string(code) + ": " + out.substr(0, 200)};
  Json exp = Json::parse(out)["experiment"];
  std::map<std::string, size_t> detected;
  size_t denominator = 0;
  for (const auto& row : exp["table"]) {
    detected[row["method"].get<std::string>()] = row["detected"].get<size_t>();
    denominator = row["denominator"].get<size_t>();
  }
  if (exp["mutants"].size() != golden["mutants"].get<size_t>()) f.add("mutant count differs from golden");
  for (const auto& row : golden["rows"]) {
    Json got;
    for (const auto& r : exp["table"])
      if (r["method"] == row["method"]) got = r;
    for (const char* key : {"tests", "detected", "denominator"})
      if (got.is_null() || got[key] != row[key]) f.add(row["method"].get<std::string>() + " " + key + " differs from golden");
  }
  const size_t kb = detected["k-bounded"], st = detected["statement"], rnd = detected["random"];
  std::string counts = "k-bounded " + std::to_string(kb) + ", statement " + std::to_string(st) + ", random " +
                       std::to_string(rnd) + " of " + std::to_string(denominator);
  if (kb < rnd) f.add("k-bounded below random (" + counts + ")");
  if (kb <= st) f.add("k-bounded not above statement (" + counts + ")");
  return f.result(counts + "; matches golden");
}

Verdict determinism() {
  Failures f;
  const std::string commands[] = {
      "parse " + fx("pool.msol"),
      "tcfg " + fx("dao.msol"),
      "basis " + fx("dao.msol") + " --lowlevel return-false",
      "requirements " + fx("dao.msol") + " --accounts alice=10,bob=10 -k 2",
      "run " + fx("counter.msol") + " --accounts alice=10 --tests " + fx("counter.tests.json"),
      "mutate " + fx("pool.msol"),
      "experiment " + fx("dao.msol") + " --accounts alice=20,bob=20 --seed 5",
  };
  for (const auto& c : commands) {
    int a_code = 0, b_code = 0;
    std::string a = run_cli(c, a_code), b = run_cli(c, b_code);
    if (a_code != 0) f.add(c + " exited " + std::to_string(a_code));
    else if (a != b || a_code != b_code) f.add(c + " differs between runs");
  }
  return f.result(std::to_string(std::size(commands)) + " commands byte-identical on rerun");
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    Check check;
  };
  const Criterion criteria[] = {
      {1, "fishtoken fidelity", fishtoken_fidelity},
      {2, "dao fidelity", dao_fidelity},
      {3, "independence and spanning", independence_and_spanning},
      {4, "grammar validity", grammar_validity},
      {5, "requirement counting", requirement_counting},
      {6, "rollback and conservation", rollback_and_conservation},
      {7, "coverage semantics", coverage_semantics},
      {8, "experiment direction", experiment_direction},
      {9, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict r;
    try {
      r = c.check();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << (r.ok ? "PASS" : "FAIL") << " criterion " << c.number << " (" << c.name << "): " << r.detail << " ["
              << t << "]" << std::endl;
    failed += !r.ok;
  }
  std::cout << (9 - failed) << "/9 criteria passed" << std::endl;
  return failed ? 1 : 0;
}
