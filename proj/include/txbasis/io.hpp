#pragma once

// JSON artifacts. Every document starts with a header naming the tool,
// version, configuration and input digests; key order is fixed so equal
// inputs give equal bytes.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "txbasis/basis.hpp"
#include "txbasis/coverage.hpp"
#include "txbasis/experiment.hpp"
#include "txbasis/interactions.hpp"
#include "txbasis/testcase.hpp"

namespace txbasis {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "txbasis";
inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit digest as 16 hex digits.
inline std::string fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << data;
}

struct InputFile {
  std::string path;
  std::string content;
};

inline Json make_header(const std::string& command, const Json& config, const std::vector<InputFile>& inputs) {
  Json h;
  h["tool"] = kToolName;
  h["version"] = kToolVersion;
  h["command"] = command;
  h["config"] = config;
  Json ins = Json::array();
  for (const auto& f : inputs) ins.push_back({{"path", f.path}, {"fnv1a64", fnv1a64(f.content)}});
  h["inputs"] = ins;
  return h;
}

inline std::string percent_text(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", p);
  return buf;
}

// ---- writers -------------------------------------------------------------

inline Json loc_json(const SourceLoc& l) { return {{"line", l.line}, {"column", l.column}}; }

inline Json sig_json(const FunctionSig& f) {
  Json params = Json::array();
  for (const auto& p : f.params) params.push_back({{"name", p.name}, {"type", to_string(p.type)}});
  Json rets = Json::array();
  for (auto r : f.returns) rets.push_back(to_string(r));
  return {{"name", f.name},
          {"visibility", to_string(f.visibility)},
          {"mutability", to_string(f.mutability)},
          {"params", params},
          {"returns", rets}};
}

inline Json model_json(const DappModel& m) {
  Json j;
  Json accounts = Json::array();
  for (const auto& a : m.accounts) accounts.push_back({{"name", a.name}, {"balance", a.balance.str()}});
  j["accounts"] = accounts;
  Json contracts = Json::array();
  for (size_t c = 0; c < m.contracts.size(); ++c) {
    const ContractModel& cm = m.contracts[c];
    Json cj;
    cj["name"] = cm.name;
    Json vars = Json::array();
    for (const auto& v : m.unit.contracts[c].state_vars) vars.push_back({{"name", v.name}, {"type", type_to_string(v.type)}});
    cj["state_vars"] = vars;
    auto list = [](const std::vector<FunctionSig>& fs) {
      Json a = Json::array();
      for (const auto& f : fs) a.push_back(sig_json(f));
      return a;
    };
    cj["state_changing"] = list(cm.state_changing);
    cj["views"] = list(cm.views);
    cj["internal"] = list(cm.internal);
    cj["constructor"] = cm.constructor ? sig_json(*cm.constructor) : Json(nullptr);
    cj["fallback"] = cm.fallback ? sig_json(*cm.fallback) : Json(nullptr);
    contracts.push_back(cj);
  }
  j["contracts"] = contracts;
  return j;
}

inline Json tcfg_json(const Tcfg& g) {
  Json j;
  j["options"] = {{"lowlevel", to_string(g.options().lowlevel)}, {"arith", to_string(g.options().arith)}};
  Json fns = Json::array();
  for (const auto& f : g.functions()) {
    fns.push_back({{"name", f.name},
                   {"entry", f.entry},
                   {"exit", f.exit},
                   {"revert", f.revert ? Json(*f.revert) : Json(nullptr)},
                   {"tx_entry", f.tx_entry},
                   {"ext", f.is_ext}});
  }
  j["functions"] = fns;
  Json nodes = Json::array();
  for (const auto& n : g.nodes()) {
    nodes.push_back({{"id", n.id},
                     {"kind", to_string(n.kind)},
                     {"function", g.function(n.function).name},
                     {"tx_entry", n.tx_entry},
                     {"line", n.loc.line},
                     {"label", n.label}});
  }
  j["nodes"] = nodes;
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"id", e.id},
                     {"from", e.from},
                     {"to", e.to},
                     {"kind", to_string(e.kind)},
                     {"branch", e.branch},
                     {"back_edge", e.back_edge}});
  }
  j["edges"] = edges;
  return j;
}

inline Json vector_json(const CountVector& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

inline Json basis_json(const Tcfg& g, const BasisPathSet& b) {
  Json j;
  j["function"] = b.function;
  j["entry"] = b.entry;
  j["reachable_nodes"] = b.metrics.nodes.size();
  j["reachable_edges"] = b.metrics.edges.size();
  j["sinks"] = b.metrics.sinks;
  j["cyclomatic"] = b.cyclomatic;
  j["complete"] = b.complete;
  Json paths = Json::array();
  for (size_t i = 0; i < b.paths.size(); ++i) {
    const auto& p = b.paths[i];
    paths.push_back({{"index", i},
                     {"terminal", to_string(p.terminal)},
                     {"path", format_path(g, p.nodes)},
                     {"nodes", p.nodes},
                     {"vector", vector_json(p.vector)}});
  }
  j["paths"] = paths;
  return j;
}

inline Json requirements_json(const RequirementSet& rs) {
  Json j;
  j["k"] = rs.k;
  Json u = Json::array();
  for (const auto& t : rs.u) u.push_back({{"tuple", t.tuple.to_string()}, {"paths", t.paths}});
  j["u"] = u;
  j["count"] = rs.requirements.size();
  Json reqs = Json::array();
  for (const auto& r : rs.requirements) reqs.push_back(rs.id(r));
  j["requirements"] = reqs;
  return j;
}

inline Json typed_json(const TypedValue& v) { return {{"type", to_string(v.type)}, {"value", v.value.str()}}; }

inline Json record_json(const Tcfg* g, const TxRecord& r) {
  Json ins = Json::array(), rets = Json::array();
  for (const auto& v : r.inputs) ins.push_back(typed_json(v));
  for (const auto& v : r.returns) rets.push_back(typed_json(v));
  Json j{{"account", r.account},   {"contract", r.contract}, {"function", r.function},
         {"value", r.value.str()}, {"outcome", to_string(r.outcome)}, {"inputs", ins},
         {"returns", rets},        {"logs", r.logs},         {"trace", r.trace}};
  if (g && !r.trace.empty()) j["path"] = format_path(*g, r.trace);
  return j;
}

inline Json arg_json(const ArgSpec& a) {
  switch (a.kind) {
    case ArgSpec::Kind::Number: return a.number.str();
    case ArgSpec::Kind::Bool: return a.boolean;
    case ArgSpec::Kind::Name: return a.name;
    case ArgSpec::Kind::ReturnOf: return {{"return_of", a.step}};
    case ArgSpec::Kind::LogOf: return {{"log_of", a.step}, {"index", a.index}};
    case ArgSpec::Kind::View: {
      Json args = Json::array();
      for (const auto& x : a.args) args.push_back(arg_json(x));
      return {{"view", a.contract + "." + a.function}, {"args", args}};
    }
  }
  return nullptr;
}

inline Json args_json(const std::vector<ArgSpec>& args) {
  Json a = Json::array();
  for (const auto& x : args) a.push_back(arg_json(x));
  return a;
}

inline Json testcase_json(const TestCase& t) {
  Json j;
  j["name"] = t.name;
  if (t.balances) {
    Json b = Json::object();
    for (const auto& r : *t.balances) b[r.name] = r.balance.str();
    j["balances"] = b;
  }
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json sj{{"account", s.account}, {"contract", s.contract}, {"function", s.function}};
    if (s.value > 0) sj["value"] = s.value.str();
    sj["args"] = args_json(s.args);
    steps.push_back(sj);
  }
  j["steps"] = steps;
  if (!t.agents.empty()) {
    Json agents = Json::array();
    for (const auto& a : t.agents) {
      Json acts = Json::array();
      for (const auto& x : a.actions) {
        Json aj{{"contract", x.contract}, {"function", x.function}};
        if (x.value > 0) aj["value"] = x.value.str();
        aj["args"] = args_json(x.args);
        acts.push_back(aj);
      }
      agents.push_back({{"account", a.account}, {"depth", a.depth}, {"final", to_string(a.final)}, {"actions", acts}});
    }
    j["agents"] = agents;
  }
  return j;
}

inline Json statement_json(const Tcfg& g, const StatementCoverage& sc) {
  Json un = Json::array();
  for (NodeId n : sc.unvisited)
    un.push_back({{"node", n}, {"function", g.function(g.node(n).function).name}, {"label", g.node(n).label}});
  return {{"visited", sc.visited}, {"total", sc.total}, {"percent", percent_text(sc.percent())}, {"unvisited", un}};
}

inline Json coverage_json(const Tcfg& g, const CoverageReport& rep, const std::vector<ExecutedTest>& suite) {
  Json j;
  j["k"] = rep.k;
  j["total"] = rep.total();
  j["covered"] = rep.covered();
  j["infeasible"] = rep.infeasible();
  j["uncovered"] = rep.count(ReqState::Uncovered);
  j["raw_percent"] = percent_text(rep.raw_percent());
  j["adjusted_percent"] = percent_text(rep.adjusted_percent());
  j["contradicted"] = rep.contradicted;
  Json st = Json::array();
  for (const auto& s : rep.statuses) {
    Json sj{{"id", s.id}, {"state", to_string(s.state)}};
    if (s.state == ReqState::Covered) {
      sj["test"] = suite.at(static_cast<size_t>(s.test)).name;
      sj["offset"] = s.offset;
    }
    st.push_back(sj);
  }
  j["requirements"] = st;
  if (rep.statements) j["statements"] = statement_json(g, *rep.statements);
  return j;
}

inline Json descriptor_json(const MutantDescriptor& d) {
  return {{"id", d.id},
          {"operator", to_string(d.op)},
          {"function", d.function},
          {"line", d.loc.line},
          {"column", d.loc.column},
          {"original", d.original},
          {"replacement", d.replacement},
          {"equivalent", d.equivalent}};
}

/// Table in the layout: method, detected count, detected percent.
inline std::string experiment_table(const ExperimentReport& rep) {
  std::ostringstream os;
  os << "Testing method\t#. of faults detected\t%. of detected faults\n";
  for (const auto& r : rep.rows)
    os << r.method << "\t" << r.detected << "\t" << percent_text(r.percent()) << "%\n";
  os << "(" << (rep.rows.empty() ? 0 : rep.rows.front().denominator) << " non-equivalent mutants; "
     << rep.equivalent.size() << " equivalent; seed " << rep.seed << ")\n";
  return os.str();
}

inline Json experiment_json(const ExperimentReport& rep) {
  Json j;
  j["seed"] = rep.seed;
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"method", r.method},
                    {"tests", r.tests},
                    {"detected", r.detected},
                    {"denominator", r.denominator},
                    {"percent", percent_text(r.percent())}});
  j["table"] = rows;
  j["equivalent"] = rep.equivalent;
  j["unbuildable"] = rep.unbuildable;
  Json ms = Json::array();
  for (const auto& m : rep.mutants) {
    Json mj = descriptor_json(m.desc);
    Json kills = Json::object();
    for (const auto& [suite, ev] : m.kills)
      kills[suite] = {{"test", ev.test}, {"line", ev.line}, {"expected", ev.expected}, {"actual", ev.actual}};
    mj["kills"] = kills;
    ms.push_back(mj);
  }
  j["mutants"] = ms;
  Json suites = Json::array();
  for (const auto& s : rep.suites) {
    Json tests = Json::array();
    for (const auto& t : s.tests) tests.push_back(testcase_json(t));
    suites.push_back({{"name", s.name}, {"tests", tests}});
  }
  j["suites"] = suites;
  return j;
}

// ---- readers -------------------------------------------------------------

namespace detail {

inline U256 json_u256(const Json& v, const std::string& what) {
  if (v.is_number_unsigned()) return U256(v.get<std::uint64_t>());
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return U256(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) return U256(s);
  }
  throw std::invalid_argument(what + ": expected a non-negative integer");
}

inline bool all_digits(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

inline ArgSpec read_arg(const Json& v) {
  if (v.is_boolean()) return ArgSpec::flag(v.get<bool>());
  if (v.is_number()) return ArgSpec::num(json_u256(v, "argument"));
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    return all_digits(s) ? ArgSpec::num(U256(s)) : ArgSpec::addr(s);
  }
  if (v.is_object()) {
    ArgSpec a;
    if (v.contains("return_of")) {
      a.kind = ArgSpec::Kind::ReturnOf;
      a.step = v.at("return_of").get<int>();
      return a;
    }
    if (v.contains("log_of")) {
      a.kind = ArgSpec::Kind::LogOf;
      a.step = v.at("log_of").get<int>();
      a.index = v.value("index", 0);
      return a;
    }
    if (v.contains("view")) {
      a.kind = ArgSpec::Kind::View;
      std::string q = v.at("view").get<std::string>();
      auto dot = q.find('.');
      if (dot == std::string::npos) throw std::invalid_argument("view argument needs Contract.function");
      a.contract = q.substr(0, dot);
      a.function = q.substr(dot + 1);
      if (v.contains("args"))
        for (const auto& x : v.at("args")) a.args.push_back(read_arg(x));
      return a;
    }
  }
  throw std::invalid_argument("unrecognised argument " + v.dump());
}

inline std::vector<ArgSpec> read_args(const Json& j) {
  std::vector<ArgSpec> out;
  if (j.contains("args"))
    for (const auto& x : j.at("args")) out.push_back(read_arg(x));
  return out;
}

inline TypedValue read_typed(const Json& j) {
  std::string t = j.at("type").get<std::string>();
  TypedValue v;
  v.type = t == "bool" ? BaseType::Bool : t == "address" ? BaseType::Address : BaseType::Uint;
  v.value = json_u256(j.at("value"), "value");
  return v;
}

}  // namespace detail

inline TestCase read_testcase(const Json& j) {
  TestCase t;
  t.name = j.value("name", "");
  if (j.contains("balances")) {
    std::vector<AccountRole> roles;
    for (const auto& [name, v] : j.at("balances").items()) roles.push_back({name, detail::json_u256(v, "balance")});
    t.balances = roles;
  }
  for (const auto& s : j.at("steps")) {
    TestStep st;
    st.account = s.at("account").get<std::string>();
    st.contract = s.at("contract").get<std::string>();
    st.function = s.at("function").get<std::string>();
    if (s.contains("value")) st.value = detail::json_u256(s.at("value"), "value");
    st.args = detail::read_args(s);
    t.steps.push_back(std::move(st));
  }
  if (j.contains("agents")) {
    for (const auto& a : j.at("agents")) {
      AgentScript sc;
      sc.account = a.at("account").get<std::string>();
      sc.depth = a.value("depth", 1);
      std::string fin = a.value("final", "return-success");
      if (fin == "revert") sc.final = AgentFinal::Revert;
      else if (fin != "return-success") throw std::invalid_argument("unknown agent final '" + fin + "'");
      if (a.contains("actions")) {
        for (const auto& x : a.at("actions")) {
          AgentAction act;
          act.contract = x.at("contract").get<std::string>();
          act.function = x.at("function").get<std::string>();
          if (x.contains("value")) act.value = detail::json_u256(x.at("value"), "value");
          act.args = detail::read_args(x);
          sc.actions.push_back(std::move(act));
        }
      }
      t.agents.push_back(std::move(sc));
    }
  }
  return t;
}

/// A test file holds {"tests": [...]} or a single test object.
inline std::vector<TestCase> read_testcases(const std::string& text) {
  Json j = Json::parse(text);
  std::vector<TestCase> out;
  if (j.contains("tests")) {
    for (const auto& t : j.at("tests")) out.push_back(read_testcase(t));
  } else {
    out.push_back(read_testcase(j));
  }
  for (size_t i = 0; i < out.size(); ++i)
    if (out[i].name.empty()) out[i].name = "test-" + std::to_string(i);
  return out;
}

inline TxRecord read_record(const Json& j) {
  TxRecord r;
  r.account = j.at("account").get<std::string>();
  r.contract = j.at("contract").get<std::string>();
  r.function = j.at("function").get<std::string>();
  r.value = detail::json_u256(j.at("value"), "value");
  r.outcome = parse_outcome(j.at("outcome").get<std::string>());
  for (const auto& v : j.at("inputs")) r.inputs.push_back(detail::read_typed(v));
  for (const auto& v : j.at("returns")) r.returns.push_back(detail::read_typed(v));
  r.logs = j.at("logs").get<std::vector<std::string>>();
  r.trace = j.at("trace").get<std::vector<NodeId>>();
  return r;
}

/// Reads the "tests" array of a `run` output document.
inline std::vector<ExecutedTest> read_traces(const std::string& text) {
  Json j = Json::parse(text);
  std::vector<ExecutedTest> out;
  for (const auto& t : j.at("tests")) {
    ExecutedTest e;
    e.name = t.at("name").get<std::string>();
    for (const auto& r : t.at("records")) e.records.push_back(read_record(r));
    out.push_back(std::move(e));
  }
  return out;
}

/// {"infeasible": {"<requirement id>": "<reason>", ...}}
inline InfeasibleAnnotations read_infeasible(const std::string& text) {
  Json j = Json::parse(text);
  InfeasibleAnnotations a;
  for (const auto& [id, why] : j.at("infeasible").items()) a.reasons[id] = why.get<std::string>();
  return a;
}

/// {"equivalent": {"<mutant id>": "<reason>", ...}}
inline std::map<std::string, std::string> read_equivalent(const std::string& text) {
  Json j = Json::parse(text);
  std::map<std::string, std::string> out;
  for (const auto& [id, why] : j.at("equivalent").items()) out[id] = why.get<std::string>();
  return out;
}

}  // namespace txbasis
