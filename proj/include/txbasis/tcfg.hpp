#pragma once

// Transaction control flow graph: one dapp-wide inter-procedural graph with
// call/return pairs, per-function revert nodes, cascading-revert edges and a
// virtual `ext` function standing in for unknown code reached through
// low-level calls.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "txbasis/ast.hpp"
#include "txbasis/model.hpp"
#include "txbasis/options.hpp"
#include "txbasis/printer.hpp"

namespace txbasis {

using NodeId = int;
using EdgeId = int;

enum class NodeKind { Entry, Exit, Expr, Pred, Revert, CallSite, ReturnSite };
enum class EdgeKind { Flow, Call, Return, Revert, CascadingRevert };

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Entry: return "entry";
    case NodeKind::Exit: return "exit";
    case NodeKind::Expr: return "expr";
    case NodeKind::Pred: return "pred";
    case NodeKind::Revert: return "revert";
    case NodeKind::CallSite: return "call-site";
    case NodeKind::ReturnSite: return "return-site";
  }
  return "?";
}

inline const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Flow: return "flow";
    case EdgeKind::Call: return "call";
    case EdgeKind::Return: return "return";
    case EdgeKind::Revert: return "revert";
    case EdgeKind::CascadingRevert: return "cascading-revert";
  }
  return "?";
}

struct Node {
  NodeId id = -1;
  NodeKind kind = NodeKind::Expr;
  bool tx_entry = false;
  int function = -1;  // index into Tcfg::functions()
  SourceLoc loc;
  std::string label;
};

struct Edge {
  EdgeId id = -1;
  NodeId from = -1;
  NodeId to = -1;
  EdgeKind kind = EdgeKind::Flow;
  std::string branch;      // pred out-edges: "true"/"false"/"ok"/... or dispatch target
  bool back_edge = false;  // loop back edge (budgeted during path search)
};

struct FunctionGraph {
  std::string name;   // "Contract.function" or "ext"
  int contract = -1;  // -1 for ext
  int decl = -1;      // index into ContractDecl::functions
  NodeId entry = -1;
  NodeId exit = -1;
  std::optional<NodeId> revert;
  bool tx_entry = false;
  bool is_ext = false;
};

struct CallPair {
  NodeId call = -1;
  NodeId ret = -1;
  int callee = -1;  // function index
  bool low_level = false;
};

/// may-revert flags: per contract, per declared function; plus the virtual
/// external function.
struct MayRevert {
  std::vector<std::vector<bool>> functions;
  bool ext = false;

  bool at(int contract, int decl) const { return functions.at(contract).at(decl); }
};

class Tcfg {
 public:
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<FunctionGraph>& functions() const { return functions_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }
  const FunctionGraph& function(int idx) const { return functions_.at(idx); }
  const std::vector<EdgeId>& out_edges(NodeId n) const { return out_.at(n); }
  const std::vector<EdgeId>& in_edges(NodeId n) const { return in_.at(n); }
  const GraphOptions& options() const { return options_; }

  std::optional<EdgeId> edge_between(NodeId from, NodeId to) const {
    auto it = edge_index_.find({from, to});
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<int> ext_function() const { return ext_; }

  int function_index(const std::string& contract, const std::string& fn) const {
    auto it = function_by_name_.find(contract + "." + fn);
    return it == function_by_name_.end() ? -1 : it->second;
  }
  int function_index(const std::string& qualified) const {
    auto it = function_by_name_.find(qualified);
    return it == function_by_name_.end() ? -1 : it->second;
  }
  int function_index(int contract, int decl) const { return decl_function_.at(contract).at(decl); }

  std::vector<NodeId> tx_entries() const {
    std::vector<NodeId> out;
    for (const auto& f : functions_)
      if (f.tx_entry) out.push_back(f.entry);
    return out;
  }

  /// Statement node (expr or pred) of a statement id, if the statement got one.
  std::optional<NodeId> stmt_node(int stmt_id) const {
    auto it = stmt_nodes_.find(stmt_id);
    if (it == stmt_nodes_.end()) return std::nullopt;
    return it->second;
  }
  const CallPair& call_pair(int expr_id) const { return call_pairs_.at(expr_id); }
  /// The call-site/return-site pair inside `ext` dispatching to function `fn`.
  const CallPair& dispatch_pair(int fn) const { return dispatch_.at(fn); }
  const std::map<int, CallPair>& dispatch_pairs() const { return dispatch_; }
  NodeId dispatcher() const { return dispatcher_; }

  /// Pair information for a call-site or return-site node.
  const CallPair& pair_of(NodeId n) const { return pair_by_node_.at(n); }

  const MayRevert& may_revert() const { return may_revert_; }

 private:
  friend class TcfgBuilder;

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<FunctionGraph> functions_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::map<std::pair<NodeId, NodeId>, EdgeId> edge_index_;
  std::map<std::string, int> function_by_name_;
  std::vector<std::vector<int>> decl_function_;
  std::unordered_map<int, NodeId> stmt_nodes_;
  std::unordered_map<int, CallPair> call_pairs_;
  std::map<int, CallPair> dispatch_;
  std::unordered_map<NodeId, CallPair> pair_by_node_;
  std::optional<int> ext_;
  NodeId dispatcher_ = -1;
  MayRevert may_revert_;
  GraphOptions options_;
};

namespace detail {

template <typename F>
void for_each_call(const Expr& e, F&& f) {
  for (const auto& k : e.kids) for_each_call(k, f);
  if (e.kind == ExprKind::Call || e.kind == ExprKind::ExternalCall || e.kind == ExprKind::LowLevelCall) f(e);
}

inline bool has_arith(const Expr& e) {
  if (e.kind == ExprKind::Binary) {
    switch (e.op) {
      case BinOp::Add: case BinOp::Sub: case BinOp::Mul: case BinOp::Div: case BinOp::Mod: return true;
      default: break;
    }
  }
  for (const auto& k : e.kids)
    if (has_arith(k)) return true;
  return false;
}

}  // namespace detail

/// True when, in checked mode, evaluating the statement's own expressions can
/// fail on overflow or division by zero.
inline bool statement_is_checked(const Stmt& s) {
  if (s.kind == StmtKind::IncDec) return true;
  if (s.kind == StmtKind::Assign && s.assign != AssignOp::Set) return true;
  switch (s.kind) {
    case StmtKind::Block: case StmtKind::For: return false;  // sub-statements are checked individually
    default: break;
  }
  for (const auto& e : s.exprs)
    if (detail::has_arith(e)) return true;
  return false;
}

/// Least fixpoint: a function may revert if it can revert by itself or calls
/// (through a normal call) something that may revert. In cascade mode a
/// low-level call counts as a call to `ext`, which may revert iff some
/// state-changing entry may.
inline MayRevert compute_may_revert(const DappModel& model, const GraphOptions& opts = {}) {
  const SourceUnit& unit = model.unit;
  MayRevert mr;
  struct Info {
    bool direct = false;
    bool calls_ext = false;
    std::vector<std::pair<int, int>> callees;
  };
  std::vector<std::vector<Info>> info(unit.contracts.size());
  for (size_t ci = 0; ci < unit.contracts.size(); ++ci) {
    const auto& c = unit.contracts[ci];
    info[ci].resize(c.functions.size());
    mr.functions.emplace_back(c.functions.size(), false);
    for (size_t fi = 0; fi < c.functions.size(); ++fi) {
      Info& in = info[ci][fi];
      auto visit_expr = [&](const Expr& e) {
        detail::for_each_call(e, [&](const Expr& call) {
          if (call.kind == ExprKind::Call) in.callees.emplace_back(static_cast<int>(ci), call.slot);
          else if (call.kind == ExprKind::ExternalCall) in.callees.emplace_back(call.target, call.slot);
          else in.calls_ext = true;
        });
      };
      std::function<void(const std::vector<Stmt>&)> walk = [&](const std::vector<Stmt>& body) {
        for (const auto& s : body) {
          if (s.kind == StmtKind::Require || s.kind == StmtKind::Revert || s.kind == StmtKind::Transfer) in.direct = true;
          if (opts.arith == ArithMode::Checked && statement_is_checked(s)) in.direct = true;
          for (const auto& e : s.exprs) visit_expr(e);
          walk(s.body);
          walk(s.else_body);
        }
      };
      walk(c.functions[fi].body);
    }
  }
  const bool cascade = opts.lowlevel == LowLevelRevert::Cascade;
  mr.ext = !cascade;  // return-false mode: the unknown code may fail by itself
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t ci = 0; ci < info.size(); ++ci) {
      for (size_t fi = 0; fi < info[ci].size(); ++fi) {
        if (mr.functions[ci][fi]) continue;
        const Info& in = info[ci][fi];
        bool v = in.direct || (cascade && in.calls_ext && mr.ext);
        for (auto [cc, ff] : in.callees) v = v || mr.functions[cc][ff];
        if (v) {
          mr.functions[ci][fi] = true;
          changed = true;
        }
      }
    }
    if (!mr.ext) {
      for (size_t ci = 0; ci < model.contracts.size() && !mr.ext; ++ci)
        for (const auto& sig : model.contracts[ci].state_changing)
          if (mr.functions[ci][sig.index]) {
            mr.ext = true;
            changed = true;
            break;
          }
    }
  }
  return mr;
}

class TcfgBuilder {
 public:
  TcfgBuilder(const DappModel& model, GraphOptions opts) : model_(model), unit_(model.unit) {
    g_.options_ = opts;
  }

  Tcfg build() {
    g_.may_revert_ = compute_may_revert(model_, g_.options_);
    allocate_functions();
    for (size_t ci = 0; ci < unit_.contracts.size(); ++ci)
      for (size_t fi = 0; fi < unit_.contracts[ci].functions.size(); ++fi)
        build_function(g_.function_index(static_cast<int>(ci), static_cast<int>(fi)));
    if (g_.ext_) build_ext();
    materialize();
    return std::move(g_);
  }

 private:
  struct Target {
    enum class What { Node, Entry, Exit, Revert } what = What::Node;
    int value = -1;  // node id or function index
  };
  struct Pending {
    NodeId from;
    Target to;
    EdgeKind kind;
    std::string branch;
    bool back;
  };
  struct Dangling {
    NodeId from;
    std::string branch;
  };
  using Out = std::vector<Dangling>;

  const DappModel& model_;
  const SourceUnit& unit_;
  Tcfg g_;
  std::vector<Pending> pending_;
  int current_ = -1;

  void allocate_functions() {
    bool any_low_level = false;
    g_.decl_function_.resize(unit_.contracts.size());
    for (size_t ci = 0; ci < unit_.contracts.size(); ++ci) {
      const auto& c = unit_.contracts[ci];
      for (size_t fi = 0; fi < c.functions.size(); ++fi) {
        const auto& f = c.functions[fi];
        FunctionGraph fg;
        fg.name = c.name + "." + f.name;
        fg.contract = static_cast<int>(ci);
        fg.decl = static_cast<int>(fi);
        // Transaction entries: state-changing public/external functions plus
        // the constructor and fallback (creation / plain message calls).
        bool readonly = f.mutability == Mutability::View || f.mutability == Mutability::Pure;
        fg.tx_entry = f.kind != FunctionKind::Ordinary || (f.is_external_entry() && !readonly);
        g_.function_by_name_[fg.name] = static_cast<int>(g_.functions_.size());
        g_.decl_function_[ci].push_back(static_cast<int>(g_.functions_.size()));
        g_.functions_.push_back(std::move(fg));
        std::function<void(const std::vector<Stmt>&)> scan = [&](const std::vector<Stmt>& body) {
          for (const auto& s : body) {
            for (const auto& e : s.exprs)
              detail::for_each_call(e, [&](const Expr& call) {
                if (call.kind == ExprKind::LowLevelCall) any_low_level = true;
              });
            scan(s.body);
            scan(s.else_body);
          }
        };
        scan(f.body);
      }
    }
    if (any_low_level) {
      FunctionGraph ext;
      ext.name = "ext";
      ext.is_ext = true;
      g_.ext_ = static_cast<int>(g_.functions_.size());
      g_.function_by_name_["ext"] = *g_.ext_;
      g_.functions_.push_back(std::move(ext));
    }
  }

  NodeId add_node(NodeKind kind, SourceLoc loc, std::string label) {
    Node n;
    n.id = static_cast<NodeId>(g_.nodes_.size());
    n.kind = kind;
    n.function = current_;
    n.loc = loc;
    n.label = std::move(label);
    g_.nodes_.push_back(std::move(n));
    return g_.nodes_.back().id;
  }

  void add_edge(NodeId from, Target to, EdgeKind kind, std::string branch = {}, bool back = false) {
    pending_.push_back({from, to, kind, std::move(branch), back});
  }
  static Target node(NodeId n) { return {Target::What::Node, n}; }
  static Target entry_of(int f) { return {Target::What::Entry, f}; }
  static Target exit_of(int f) { return {Target::What::Exit, f}; }
  static Target revert_of(int f) { return {Target::What::Revert, f}; }

  void link(Out& in, Target to, bool back = false) {
    for (auto& d : in) add_edge(d.from, to, EdgeKind::Flow, d.branch, back);
    in.clear();
  }

  bool may_revert(int fn) const {
    const FunctionGraph& f = g_.functions_[fn];
    if (f.is_ext) return g_.may_revert_.ext;
    return g_.may_revert_.at(f.contract, f.decl);
  }

  bool checked() const { return g_.options_.arith == ArithMode::Checked; }

  void build_function(int fn) {
    current_ = fn;
    const FunctionGraph& fg = g_.functions_[fn];
    const FunctionDecl& decl = unit_.contracts[fg.contract].functions[fg.decl];
    NodeId entry = add_node(NodeKind::Entry, decl.loc, "entry " + fg.name);
    g_.nodes_[entry].tx_entry = fg.tx_entry;
    Out out{{entry, ""}};
    out = build_body(decl.body, std::move(out));
    link(out, exit_of(fn));
    finish_function(fn, entry, decl.loc);
  }

  void finish_function(int fn, NodeId entry, SourceLoc loc) {
    FunctionGraph& fg = g_.functions_[fn];
    fg.entry = entry;
    fg.exit = add_node(NodeKind::Exit, loc, "exit " + fg.name);
    if (may_revert(fn)) fg.revert = add_node(NodeKind::Revert, loc, "revert " + fg.name);
  }

  Out build_body(const std::vector<Stmt>& body, Out in) {
    for (const auto& s : body) in = build_stmt(s, std::move(in));
    return in;
  }

  static std::string short_label(const Stmt& s, const std::string& text) {
    std::string t = text.size() > 48 ? text.substr(0, 45) + "..." : text;
    return "L" + std::to_string(s.loc.line) + ": " + t;
  }

  // Call-site/return-site pairs for every call in the expressions, in
  // evaluation order.
  Out emit_calls(const std::vector<Expr>& exprs, Out in) {
    for (const auto& e : exprs) {
      detail::for_each_call(e, [&](const Expr& call) {
        int callee;
        std::string name;
        bool low = call.kind == ExprKind::LowLevelCall;
        if (low) {
          callee = *g_.ext_;
          name = "ext";
        } else if (call.kind == ExprKind::Call) {
          callee = g_.function_index(g_.functions_[current_].contract, call.slot);
          name = g_.functions_[callee].name;
        } else {
          callee = g_.function_index(call.target, call.slot);
          name = g_.functions_[callee].name;
        }
        NodeId c = add_node(NodeKind::CallSite, call.loc, "call " + name);
        NodeId r = add_node(NodeKind::ReturnSite, call.loc, "ret " + name);
        link(in, node(c));
        add_edge(c, entry_of(callee), EdgeKind::Call);
        add_edge(c, exit_of(callee), EdgeKind::Return);  // from/to swapped at materialisation
        pending_.back().from = -1;
        pending_.back().to = node(r);
        pending_.back().branch = std::to_string(callee);
        if (may_revert(callee)) {
          if (low && g_.options_.lowlevel == LowLevelRevert::ReturnFalse) {
            add_revert_return(callee, r);
          } else {
            add_cascade(callee, current_);
          }
        }
        CallPair pair{c, r, callee, low};
        g_.call_pairs_[call.id] = pair;
        g_.pair_by_node_[c] = pair;
        g_.pair_by_node_[r] = pair;
        in = Out{{r, ""}};
      });
    }
    return in;
  }

  // Return edges are recorded with from = -1 and the callee in `branch`; the
  // exit node id is only known once the callee is finished.
  void add_revert_return(int callee, NodeId ret) {
    pending_.push_back({-2, node(ret), EdgeKind::Return, std::to_string(callee), false});
  }
  void add_cascade(int callee, int caller) {
    pending_.push_back({-3, revert_of(caller), EdgeKind::CascadingRevert, std::to_string(callee), false});
  }

  Out build_stmt(const Stmt& s, Out in) {
    const int fn = current_;
    switch (s.kind) {
      case StmtKind::Block:
        return build_body(s.body, std::move(in));
      case StmtKind::VarDecl:
      case StmtKind::Assign:
      case StmtKind::IncDec:
      case StmtKind::ExprStmt:
      case StmtKind::Push:
      case StmtKind::Return:
      case StmtKind::Log: {
        bool has_calls = false;
        for (const auto& e : s.exprs) detail::for_each_call(e, [&](const Expr&) { has_calls = true; });
        Out out = emit_calls(s.exprs, std::move(in));
        std::string text = print_stmt(s);
        if (checked() && statement_is_checked(s)) {
          NodeId p = add_node(NodeKind::Pred, s.loc, short_label(s, text));
          link(out, node(p));
          add_edge(p, revert_of(fn), EdgeKind::Revert, "overflow");
          g_.stmt_nodes_[s.id] = p;
          out = Out{{p, "ok"}};
        } else if (!has_calls) {
          NodeId n = add_node(NodeKind::Expr, s.loc, short_label(s, text));
          link(out, node(n));
          g_.stmt_nodes_[s.id] = n;
          out = Out{{n, ""}};
        }
        if (s.kind == StmtKind::Return) link(out, exit_of(fn));
        return out;
      }
      case StmtKind::Transfer: {
        Out out = emit_calls(s.exprs, std::move(in));
        NodeId p = add_node(NodeKind::Pred, s.loc, short_label(s, print_stmt(s)));
        link(out, node(p));
        add_edge(p, revert_of(fn), EdgeKind::Revert, "fail");
        g_.stmt_nodes_[s.id] = p;
        return Out{{p, "ok"}};
      }
      case StmtKind::Require: {
        Out out = emit_calls(s.exprs, std::move(in));
        NodeId p = add_node(NodeKind::Pred, s.loc, short_label(s, print_stmt(s)));
        link(out, node(p));
        add_edge(p, revert_of(fn), EdgeKind::Revert, "false");
        g_.stmt_nodes_[s.id] = p;
        return Out{{p, "true"}};
      }
      case StmtKind::Revert:
        link(in, revert_of(fn));
        return {};
      case StmtKind::If: {
        NodeId p = emit_condition(s, in);
        Out then_out = build_body(s.body, Out{{p, "true"}});
        Out else_out = s.has_else ? build_body(s.else_body, Out{{p, "false"}}) : Out{{p, "false"}};
        then_out.insert(then_out.end(), else_out.begin(), else_out.end());
        return then_out;
      }
      case StmtKind::While: {
        NodeId head = static_cast<NodeId>(g_.nodes_.size());
        NodeId p = emit_condition(s, in);
        Out body_out = build_body(s.body, Out{{p, "true"}});
        link(body_out, node(head), true);
        return Out{{p, "false"}};
      }
      case StmtKind::For: {
        Out out = build_stmt(s.body[0], std::move(in));
        NodeId head = static_cast<NodeId>(g_.nodes_.size());
        NodeId p = emit_condition(s, out);
        Out body_out = build_stmt(s.body[2], Out{{p, "true"}});
        body_out = build_stmt(s.body[1], std::move(body_out));
        link(body_out, node(head), true);
        return Out{{p, "false"}};
      }
    }
    return in;
  }

  // Calls in the condition, then one pred node for the whole condition.
  NodeId emit_condition(const Stmt& s, Out& in) {
    Out out = emit_calls({s.exprs[0]}, std::move(in));
    NodeId p = add_node(NodeKind::Pred, s.loc, "L" + std::to_string(s.loc.line) + ": " + print_expr(s.exprs[0]));
    link(out, node(p));
    if (checked() && detail::has_arith(s.exprs[0])) add_edge(p, revert_of(current_), EdgeKind::Revert, "overflow");
    g_.stmt_nodes_[s.id] = p;
    in.clear();
    return p;
  }

  void build_ext() {
    const int fn = *g_.ext_;
    current_ = fn;
    NodeId entry = add_node(NodeKind::Entry, {}, "entry ext");
    NodeId b = add_node(NodeKind::Pred, {}, "dispatch");
    g_.dispatcher_ = b;
    add_edge(entry, node(b), EdgeKind::Flow);
    add_edge(b, exit_of(fn), EdgeKind::Flow, "exit");
    std::vector<std::pair<NodeId, int>> pairs;
    for (size_t ci = 0; ci < model_.contracts.size(); ++ci) {
      for (const auto& sig : model_.contracts[ci].state_changing) {
        int callee = g_.function_index(static_cast<int>(ci), sig.index);
        const std::string& name = g_.functions_[callee].name;
        NodeId c = add_node(NodeKind::CallSite, {}, "call " + name);
        NodeId r = add_node(NodeKind::ReturnSite, {}, "ret " + name);
        add_edge(b, node(c), EdgeKind::Flow, name);
        add_edge(c, entry_of(callee), EdgeKind::Call);
        pending_.push_back({-1, node(r), EdgeKind::Return, std::to_string(callee), false});
        add_edge(r, node(b), EdgeKind::Flow);
        if (may_revert(callee)) add_cascade(callee, fn);
        CallPair pair{c, r, callee, false};
        g_.dispatch_[callee] = pair;
        g_.pair_by_node_[c] = pair;
        g_.pair_by_node_[r] = pair;
      }
    }
    if (g_.options_.lowlevel == LowLevelRevert::ReturnFalse) add_edge(b, revert_of(fn), EdgeKind::Flow, "revert");
    finish_function(fn, entry, {});
  }

  NodeId resolve(const Target& t) const {
    switch (t.what) {
      case Target::What::Node: return t.value;
      case Target::What::Entry: return g_.functions_[t.value].entry;
      case Target::What::Exit: return g_.functions_[t.value].exit;
      case Target::What::Revert: {
        const auto& r = g_.functions_[t.value].revert;
        if (!r) throw GraphError("function '" + g_.functions_[t.value].name + "' has no revert node");
        return *r;
      }
    }
    return -1;
  }

  void materialize() {
    for (const auto& p : pending_) {
      NodeId from = p.from;
      std::string branch = p.branch;
      if (from < 0) {
        int callee = std::stoi(p.branch);
        branch.clear();
        if (from == -1) from = g_.functions_[callee].exit;
        else from = *g_.functions_[callee].revert;  // -2 revert-return, -3 cascade
      }
      NodeId to = resolve(p.to);
      if (g_.edge_index_.count({from, to})) continue;
      Edge e;
      e.id = static_cast<EdgeId>(g_.edges_.size());
      e.from = from;
      e.to = to;
      e.kind = p.kind;
      e.branch = std::move(branch);
      e.back_edge = p.back;
      g_.edge_index_[{from, to}] = e.id;
      g_.edges_.push_back(std::move(e));
    }
    g_.out_.assign(g_.nodes_.size(), {});
    g_.in_.assign(g_.nodes_.size(), {});
    for (const auto& e : g_.edges_) {
      g_.out_[e.from].push_back(e.id);
      g_.in_[e.to].push_back(e.id);
    }
  }
};

/// Builds the dapp-wide transaction control flow graph.
inline Tcfg build_tcfg(const DappModel& model, GraphOptions opts = {}) { return TcfgBuilder(model, opts).build(); }

}  // namespace txbasis
