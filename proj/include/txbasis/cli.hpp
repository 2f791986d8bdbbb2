#pragma once

// Command-line front end: one subcommand per pipeline stage, JSON output
// with a reproducibility header. Exit status: 0 success, 1 usage error,
// 2 input error, 3 internal invariant violation.

#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "txbasis/dot.hpp"
#include "txbasis/io.hpp"

namespace txbasis {

struct RunConfig {
  std::string command;
  std::string source;
  std::string accounts = "alice=1000000";
  std::string lowlevel = "cascade";
  std::string arith = "wrap";
  std::string match = "exact";
  int call_budget = 2;
  int loop_budget = 2;
  int k = 2;
  std::uint64_t seed = 7;
  int attempts = 100;
  std::string entry;
  std::string tests;
  std::string traces;
  std::string infeasible;
  std::string requirements;
  std::string ops = "operator-replacement,variable-replacement,statement-omission";
  std::string out_dir;
  std::string mutants_dir;
  std::string equivalent;
  std::string output;
  std::string dot;
  std::string table;
  bool statements = false;

  GraphOptions graph_options() const {
    GraphOptions o;
    o.lowlevel = parse_lowlevel_revert(lowlevel);
    o.arith = parse_arith_mode(arith);
    return o;
  }
  SearchBudget budget() const {
    SearchBudget b;
    b.call_edge = call_budget;
    b.back_edge = loop_budget;
    return b;
  }
  Json graph_json() const {
    return {{"accounts", accounts}, {"lowlevel", lowlevel}, {"arith", arith}};
  }
  Json search_json() const { return {{"call_budget", call_budget}, {"loop_budget", loop_budget}}; }
};

namespace detail {

struct Loaded {
  InputFile source;
  DappModel model;
  Tcfg graph;
};

inline Loaded load(const RunConfig& c) {
  InputFile src{c.source, read_file(c.source)};
  DappModel m = build_dapp_model(parse_source(src.content), parse_accounts(c.accounts));
  Tcfg g = build_tcfg(m, c.graph_options());
  return {std::move(src), std::move(m), std::move(g)};
}

inline void emit(const RunConfig& c, const Json& doc, std::ostream& out) {
  std::string text = doc.dump(2) + "\n";
  if (c.output.empty()) out << text;
  else write_file(c.output, text);
}

inline std::vector<NodeId> select_entries(const Tcfg& g, const std::string& entry) {
  std::vector<NodeId> out;
  for (NodeId n : g.tx_entries()) {
    const std::string& name = g.function(g.node(n).function).name;
    if (entry.empty() || name == entry || name.substr(name.find('.') + 1) == entry) out.push_back(n);
  }
  if (!entry.empty() && out.size() != 1)
    throw GraphError(out.empty() ? "no transaction entry named '" + entry + "'"
                                 : "entry name '" + entry + "' is ambiguous; use Contract.function");
  return out;
}

inline std::set<MutationOp> parse_ops(const std::string& list) {
  std::set<MutationOp> ops;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) ops.insert(parse_mutation_op(item));
  return ops;
}

inline RequirementSet requirements_for(const RunConfig& c, const Loaded& l, BasisLibrary& bases) {
  bases = build_basis_library(l.graph, c.budget());
  return enumerate_requirements(enumerate_tuples(l.model, bases), c.k);
}

// ---- subcommands -----------------------------------------------------------

inline int cmd_parse(const RunConfig& c, std::ostream& out) {
  Loaded l = load(c);
  Json doc;
  doc["header"] = make_header("parse", c.graph_json(), {l.source});
  doc["model"] = model_json(l.model);
  emit(c, doc, out);
  return 0;
}

inline int cmd_tcfg(const RunConfig& c, std::ostream& out) {
  Loaded l = load(c);
  std::string dot = export_dot(l.graph);
  Json doc;
  doc["header"] = make_header("tcfg", c.graph_json(), {l.source});
  doc["graph"] = tcfg_json(l.graph);
  Json metrics = Json::array();
  for (NodeId n : l.graph.tx_entries()) {
    auto m = reachable_metrics(l.graph, n);
    metrics.push_back({{"function", l.graph.function(l.graph.node(n).function).name},
                       {"entry", n},
                       {"reachable_nodes", m.nodes.size()},
                       {"reachable_edges", m.edges.size()},
                       {"sinks", m.sinks},
                       {"cyclomatic", m.cyclomatic}});
  }
  doc["entries"] = metrics;
  doc["dot"] = dot;
  if (!c.dot.empty()) write_file(c.dot, dot);
  emit(c, doc, out);
  return 0;
}

inline int cmd_basis(const RunConfig& c, std::ostream& out) {
  Loaded l = load(c);
  Json cfg = c.graph_json();
  cfg["search"] = c.search_json();
  cfg["entry"] = c.entry;
  Json doc;
  doc["header"] = make_header("basis", cfg, {l.source});
  Json sets = Json::array();
  for (NodeId n : select_entries(l.graph, c.entry)) sets.push_back(basis_json(l.graph, generate_wtpbs(l.graph, n, c.budget())));
  doc["basis"] = sets;
  emit(c, doc, out);
  return 0;
}

inline int cmd_requirements(const RunConfig& c, std::ostream& out) {
  Loaded l = load(c);
  auto u = enumerate_tuples(l.model, build_basis_library(l.graph, c.budget()));
  Json cfg = c.graph_json();
  cfg["search"] = c.search_json();
  cfg["k"] = c.k;
  Json doc;
  doc["header"] = make_header("requirements", cfg, {l.source});
  doc["closed_form_count"] = count_requirements(u, c.k);
  doc["requirements"] = requirements_json(enumerate_requirements(u, c.k));
  emit(c, doc, out);
  return 0;
}

inline int cmd_run(const RunConfig& c, std::ostream& out) {
  Loaded l = load(c);
  InputFile tf{c.tests, read_file(c.tests)};
  Json doc;
  doc["header"] = make_header("run", c.graph_json(), {l.source, tf});
  Json tests = Json::array();
  for (const auto& t : read_testcases(tf.content)) {
    Json recs = Json::array();
    for (const auto& r : execute_test_case(l.model, l.graph, t)) {
      // an undeclared constructor runs no code and leaves no trace
      if (r.trace.empty()) {
        if (r.function != "constructor") throw InvariantViolation("empty trace for " + r.contract + "." + r.function);
      } else {
        project_trace(l.graph, r, reachable_metrics(l.graph, r.trace.front()));
      }
      recs.push_back(record_json(&l.graph, r));
    }
    tests.push_back({{"name", t.name}, {"records", recs}});
  }
  doc["tests"] = tests;
  emit(c, doc, out);
  return 0;
}

inline int cmd_coverage(const RunConfig& c, std::ostream& out) {
  Loaded l = load(c);
  InputFile tr{c.traces, read_file(c.traces)};
  std::vector<InputFile> inputs{l.source, tr};
  BasisLibrary bases;
  RequirementSet rs = requirements_for(c, l, bases);
  if (!c.requirements.empty()) {
    InputFile rf{c.requirements, read_file(c.requirements)};
    inputs.push_back(rf);
    Json given = Json::parse(rf.content);
    const Json& reqs = given.contains("requirements") ? given.at("requirements") : given;
    if (reqs.at("requirements") != requirements_json(rs).at("requirements"))
      throw std::invalid_argument("requirements file does not match the source and configuration");
  }
  InfeasibleAnnotations infeasible;
  if (!c.infeasible.empty()) {
    InputFile inf{c.infeasible, read_file(c.infeasible)};
    inputs.push_back(inf);
    infeasible = read_infeasible(inf.content);
  }
  auto suite = read_traces(tr.content);
  MatchMode mode = parse_match_mode(c.match);
  CoverageReport rep = measure_coverage(l.graph, rs, suite, bases, infeasible, mode);
  if (c.statements) rep.statements = measure_statement_coverage(l.graph, suite);
  Json cfg = c.graph_json();
  cfg["search"] = c.search_json();
  cfg["k"] = c.k;
  cfg["match"] = c.match;
  Json doc;
  doc["header"] = make_header("coverage", cfg, inputs);
  doc["coverage"] = coverage_json(l.graph, rep, suite);
  emit(c, doc, out);
  return 0;
}

inline int cmd_stmt_coverage(const RunConfig& c, std::ostream& out) {
  Loaded l = load(c);
  InputFile tr{c.traces, read_file(c.traces)};
  auto suite = read_traces(tr.content);
  Json doc;
  doc["header"] = make_header("stmt-coverage", c.graph_json(), {l.source, tr});
  doc["statements"] = statement_json(l.graph, measure_statement_coverage(l.graph, suite));
  emit(c, doc, out);
  return 0;
}

inline int cmd_mutate(const RunConfig& c, std::ostream& out) {
  InputFile src{c.source, read_file(c.source)};
  SourceUnit unit = parse_source(src.content);
  auto mutants = generate_mutants(unit, parse_ops(c.ops));
  Json doc;
  doc["header"] = make_header("mutate", {{"ops", c.ops}}, {src});
  Json index = Json::array();
  for (const auto& m : mutants) {
    Json d = descriptor_json(m.desc);
    d["file"] = m.desc.id + ".msol";
    index.push_back(d);
  }
  doc["mutants"] = index;
  if (!c.out_dir.empty()) {
    std::filesystem::create_directories(c.out_dir);
    for (const auto& m : mutants) write_file((std::filesystem::path(c.out_dir) / (m.desc.id + ".msol")).string(), m.source);
    write_file((std::filesystem::path(c.out_dir) / "index.json").string(), doc.dump(2) + "\n");
  }
  emit(c, doc, out);
  return 0;
}

/// Hand-written mutants: every .msol file of a directory, id = file stem.
inline std::vector<Mutant> read_mutant_dir(const std::string& dir, std::vector<InputFile>& inputs) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".msol") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Mutant> out;
  for (const auto& f : files) {
    Mutant m;
    m.desc.id = f.stem().string();
    m.desc.op = MutationOp::HandWritten;
    m.source = read_file(f.string());
    inputs.push_back({f.generic_string(), m.source});
    out.push_back(std::move(m));
  }
  return out;
}

inline int cmd_experiment(const RunConfig& c, std::ostream& out) {
  Loaded l = load(c);
  std::vector<InputFile> inputs{l.source};
  std::vector<Mutant> mutants = generate_mutants(l.model.unit, parse_ops(c.ops));
  if (!c.mutants_dir.empty())
    for (auto& m : read_mutant_dir(c.mutants_dir, inputs)) mutants.push_back(std::move(m));
  std::set<std::string> equivalent;
  if (!c.equivalent.empty()) {
    InputFile ef{c.equivalent, read_file(c.equivalent)};
    inputs.push_back(ef);
    for (const auto& [id, why] : read_equivalent(ef.content)) equivalent.insert(id);
  }
  ExperimentConfig ec;
  ec.seed = c.seed;
  ec.k = c.k;
  ec.budget = c.budget();
  ec.match = parse_match_mode(c.match);
  ec.attempts = c.attempts;
  auto suites = build_experiment_suites(l.model, l.graph, ec);
  ExperimentReport rep = run_experiment(l.model, l.graph, suites, mutants, equivalent, c.seed);
  Json cfg = c.graph_json();
  cfg["search"] = c.search_json();
  cfg["k"] = c.k;
  cfg["match"] = c.match;
  cfg["seed"] = c.seed;
  cfg["attempts"] = c.attempts;
  cfg["ops"] = c.ops;
  Json doc;
  doc["header"] = make_header("experiment", cfg, inputs);
  doc["experiment"] = experiment_json(rep);
  if (!c.table.empty()) write_file(c.table, experiment_table(rep));
  emit(c, doc, out);
  return 0;
}

}  // namespace detail

/// Runs one command line. Output goes to `out` unless -o names a file;
/// diagnostics go to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Whole-transaction basis path testing toolkit", "txbasis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  RunConfig c;

  auto env = [](const std::string& flag) {
    std::string name = "TXBASIS_";
    for (char ch : flag) name += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return name;
  };
  auto source = [&](CLI::App* s) {
    s->add_option("source", c.source, "MiniSol source file")->required()->check(CLI::ExistingFile);
    s->add_option("-o,--output", c.output, "output file (default: stdout)")->envname(env("output"));
  };
  auto graph = [&](CLI::App* s) {
    s->add_option("--accounts", c.accounts, "account roles, e.g. alice=100,bob=50")->envname(env("accounts"));
    s->add_option("--lowlevel", c.lowlevel, "low-level call failure: cascade or return-false")
        ->check(CLI::IsMember({"cascade", "return-false"}))
        ->envname(env("lowlevel"));
    s->add_option("--arith", c.arith, "arithmetic: wrap or checked")
        ->check(CLI::IsMember({"wrap", "checked"}))
        ->envname(env("arith"));
  };
  auto search = [&](CLI::App* s) {
    s->add_option("-B,--call-budget", c.call_budget, "traversals per call edge")
        ->check(CLI::NonNegativeNumber)
        ->envname(env("call-budget"));
    s->add_option("-L,--loop-budget", c.loop_budget, "traversals per back edge")
        ->check(CLI::NonNegativeNumber)
        ->envname(env("loop-budget"));
  };
  auto kopt = [&](CLI::App* s) {
    s->add_option("-k", c.k, "interaction length")->check(CLI::PositiveNumber)->envname(env("k"));
  };
  auto match = [&](CLI::App* s) {
    s->add_option("--match", c.match, "trace matching: exact or edge-vector")
        ->check(CLI::IsMember({"exact", "edge-vector"}))
        ->envname(env("match"));
  };

  auto* parse = app.add_subcommand("parse", "emit the application model");
  source(parse);
  graph(parse);

  auto* tcfg = app.add_subcommand("tcfg", "emit the transaction control flow graph and DOT");
  source(tcfg);
  graph(tcfg);
  tcfg->add_option("--dot", c.dot, "also write the DOT text to this file")->envname(env("dot"));

  auto* basis = app.add_subcommand("basis", "emit basis path sets");
  source(basis);
  graph(basis);
  search(basis);
  basis->add_option("--entry", c.entry, "function or Contract.function (default: all entries)")->envname(env("entry"));

  auto* reqs = app.add_subcommand("requirements", "emit k-bounded coverage requirements");
  source(reqs);
  graph(reqs);
  search(reqs);
  kopt(reqs);

  auto* run = app.add_subcommand("run", "execute test cases and emit records with traces");
  source(run);
  graph(run);
  run->add_option("--tests", c.tests, "test case file")->required()->check(CLI::ExistingFile)->envname(env("tests"));

  auto* cov = app.add_subcommand("coverage", "join requirements and traces into a coverage report");
  source(cov);
  graph(cov);
  search(cov);
  kopt(cov);
  match(cov);
  cov->add_option("--traces", c.traces, "output of `run`")->required()->check(CLI::ExistingFile)->envname(env("traces"));
  cov->add_option("--infeasible", c.infeasible, "infeasibility annotations")
      ->check(CLI::ExistingFile)
      ->envname(env("infeasible"));
  cov->add_option("--requirements", c.requirements, "output of `requirements`, checked against the source")
      ->check(CLI::ExistingFile)
      ->envname(env("requirements"));
  cov->add_flag("--statements", c.statements, "also report statement coverage");

  auto* stmt = app.add_subcommand("stmt-coverage", "statement coverage of traces");
  source(stmt);
  graph(stmt);
  stmt->add_option("--traces", c.traces, "output of `run`")->required()->check(CLI::ExistingFile)->envname(env("traces"));

  auto* mutate = app.add_subcommand("mutate", "generate single-fault mutants");
  source(mutate);
  mutate->add_option("--ops", c.ops, "comma-separated mutation operators")->envname(env("ops"));
  mutate->add_option("--out-dir", c.out_dir, "write one source per mutant plus index.json")->envname(env("out-dir"));

  auto* exp = app.add_subcommand("experiment", "compare k-bounded, statement and random suites by mutant kills");
  source(exp);
  graph(exp);
  search(exp);
  kopt(exp);
  match(exp);
  exp->add_option("--seed", c.seed, "random seed")->envname(env("seed"));
  exp->add_option("--attempts", c.attempts, "random tests tried per coverage target")
      ->check(CLI::PositiveNumber)
      ->envname(env("attempts"));
  exp->add_option("--ops", c.ops, "comma-separated mutation operators")->envname(env("ops"));
  exp->add_option("--mutants-dir", c.mutants_dir, "extra hand-written mutant sources")
      ->check(CLI::ExistingDirectory)
      ->envname(env("mutants-dir"));
  exp->add_option("--equivalent", c.equivalent, "equivalent-mutant annotations")
      ->check(CLI::ExistingFile)
      ->envname(env("equivalent"));
  exp->add_option("--table", c.table, "also write the comparison table to this file")->envname(env("table"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    // A missing source file is an input error, not a usage error.
    if (dynamic_cast<const CLI::ValidationError*>(&e) && std::string(e.what()).find("does not exist") != std::string::npos) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    app.exit(e, out, err);
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  c.command = sub->get_name();
  try {
    if (c.command == "parse") return detail::cmd_parse(c, out);
    if (c.command == "tcfg") return detail::cmd_tcfg(c, out);
    if (c.command == "basis") return detail::cmd_basis(c, out);
    if (c.command == "requirements") return detail::cmd_requirements(c, out);
    if (c.command == "run") return detail::cmd_run(c, out);
    if (c.command == "coverage") return detail::cmd_coverage(c, out);
    if (c.command == "stmt-coverage") return detail::cmd_stmt_coverage(c, out);
    if (c.command == "mutate") return detail::cmd_mutate(c, out);
    if (c.command == "experiment") return detail::cmd_experiment(c, out);
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace txbasis
