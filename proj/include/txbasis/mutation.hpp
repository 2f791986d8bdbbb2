#pragma once

// Single-fault mutant generation over MiniSol sources: operator replacement,
// variable replacement and statement omission.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "txbasis/model.hpp"
#include "txbasis/parser.hpp"
#include "txbasis/printer.hpp"

namespace txbasis {

// HandWritten marks mutants supplied as whole sources rather than generated.
enum class MutationOp { OperatorReplacement, VariableReplacement, StatementOmission, HandWritten };

inline const char* to_string(MutationOp op) {
  switch (op) {
    case MutationOp::OperatorReplacement: return "operator-replacement";
    case MutationOp::VariableReplacement: return "variable-replacement";
    case MutationOp::StatementOmission: return "statement-omission";
    case MutationOp::HandWritten: return "hand-written";
  }
  return "?";
}

inline MutationOp parse_mutation_op(const std::string& s) {
  if (s == "operator-replacement") return MutationOp::OperatorReplacement;
  if (s == "variable-replacement") return MutationOp::VariableReplacement;
  if (s == "statement-omission") return MutationOp::StatementOmission;
  if (s == "hand-written") return MutationOp::HandWritten;
  throw std::invalid_argument("unknown mutation operator '" + s + "'");
}

struct MutantDescriptor {
  std::string id;
  MutationOp op = MutationOp::OperatorReplacement;
  std::string function;  // Contract.function holding the site
  SourceLoc loc;
  std::string original;
  std::string replacement;
  bool equivalent = false;
};

struct Mutant {
  MutantDescriptor desc;
  std::string source;  // printed, re-parseable mutated unit
};

namespace detail {

inline const std::vector<BinOp>& arith_group() {
  static const std::vector<BinOp> g{BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div};
  return g;
}
inline const std::vector<BinOp>& relational_group() {
  static const std::vector<BinOp> g{BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge, BinOp::Eq, BinOp::Ne};
  return g;
}

inline const char* assign_text(AssignOp op) {
  static const char* t[] = {"=", "+=", "-=", "*="};
  return t[static_cast<int>(op)];
}

// Walks a unit in a fixed order and offers every mutation candidate to a
// callback. The callback receives a function that applies the candidate to
// a copy of the unit addressed by the same walk position.
class MutationWalker {
 public:
  struct Candidate {
    MutationOp op;
    std::string function;
    SourceLoc loc;
    std::string original;
    std::string replacement;
    std::string site;  // groups variable-replacement candidates per site
    std::function<void(SourceUnit&)> apply;
  };

  explicit MutationWalker(const SourceUnit& unit) : unit_(unit) {}

  std::vector<Candidate> candidates() {
    out_.clear();
    for (size_t ci = 0; ci < unit_.contracts.size(); ++ci) {
      const ContractDecl& c = unit_.contracts[ci];
      for (size_t fi = 0; fi < c.functions.size(); ++fi) {
        const FunctionDecl& f = c.functions[fi];
        fn_name_ = c.name + "." + f.name;
        ci_ = ci;
        fi_ = fi;
        scopes_.assign(1, {});
        for (const auto& p : f.params) scopes_.back().push_back({p.name, Type::scalar(p.type)});
        std::vector<size_t> path;
        walk_body(f.body, path, /*omittable=*/true);
      }
    }
    return std::move(out_);
  }

 private:
  const SourceUnit& unit_;
  std::vector<Candidate> out_;
  std::string fn_name_;
  size_t ci_ = 0, fi_ = 0;
  std::vector<std::vector<std::pair<std::string, Type>>> scopes_;

  // Statement address: alternating (child list selector, index) pairs from
  // the function body. Selector 0 = body, 1 = else_body.
  using Path = std::vector<size_t>;

  static Stmt& stmt_at(SourceUnit& u, size_t ci, size_t fi, const Path& p) {
    std::vector<Stmt>* list = &u.contracts[ci].functions[fi].body;
    Stmt* s = nullptr;
    for (size_t i = 0; i < p.size(); i += 2) {
      if (i > 0) list = p[i] == 0 ? &s->body : &s->else_body;
      s = &(*list)[p[i + 1]];
    }
    return *s;
  }
  static std::vector<Stmt>& list_at(SourceUnit& u, size_t ci, size_t fi, const Path& p) {
    // p addresses a statement; returns the list that holds it.
    std::vector<Stmt>* list = &u.contracts[ci].functions[fi].body;
    Stmt* s = nullptr;
    for (size_t i = 0; i + 2 < p.size(); i += 2) {
      if (i > 0) list = p[i] == 0 ? &s->body : &s->else_body;
      s = &(*list)[p[i + 1]];
    }
    if (p.size() > 2) list = p[p.size() - 2] == 0 ? &s->body : &s->else_body;
    return *list;
  }

  void walk_body(const std::vector<Stmt>& body, Path& path, bool omittable, size_t selector = 0) {
    scopes_.emplace_back();
    for (size_t i = 0; i < body.size(); ++i) {
      path.push_back(selector);
      path.push_back(i);
      walk_stmt(body[i], path, omittable);
      path.pop_back();
      path.pop_back();
    }
    scopes_.pop_back();
  }

  void walk_stmt(const Stmt& s, Path& path, bool omittable) {
    const size_t ci = ci_, fi = fi_;
    const Path here = path;
    // expressions first, in order
    for (size_t e = 0; e < s.exprs.size(); ++e) {
      std::vector<size_t> epath;
      walk_expr(s.exprs[e], here, e, epath);
    }
    if (s.kind == StmtKind::Assign && s.assign != AssignOp::Set) {
      for (AssignOp alt : {AssignOp::Add, AssignOp::Sub, AssignOp::Mul}) {
        if (alt == s.assign) continue;
        Candidate c{MutationOp::OperatorReplacement, fn_name_, s.loc, assign_text(s.assign), assign_text(alt), "", {}};
        c.apply = [ci, fi, here, alt](SourceUnit& u) { stmt_at(u, ci, fi, here).assign = alt; };
        out_.push_back(std::move(c));
      }
    }
    if (omittable && s.kind != StmtKind::VarDecl && s.kind != StmtKind::Block) {
      Candidate c{MutationOp::StatementOmission, fn_name_, s.loc, print_stmt(s), "", "", {}};
      c.apply = [ci, fi, here](SourceUnit& u) {
        auto& list = list_at(u, ci, fi, here);
        list.erase(list.begin() + static_cast<long>(here.back()));
      };
      out_.push_back(std::move(c));
    }
    if (s.kind == StmtKind::VarDecl) scopes_.back().push_back({s.name, s.decl_type});
    switch (s.kind) {
      case StmtKind::Block:
        walk_body(s.body, path, true);
        break;
      case StmtKind::If:
        walk_body(s.body, path, true, 0);
        if (s.has_else) walk_body(s.else_body, path, true, 1);
        break;
      case StmtKind::While:
        walk_body(s.body, path, true, 0);
        break;
      case StmtKind::For: {
        // init and step stay; only the loop body's statements are omittable
        scopes_.emplace_back();
        path.push_back(0);
        path.push_back(0);
        walk_stmt(s.body[0], path, false);
        path.pop_back();
        path.pop_back();
        path.push_back(0);
        path.push_back(2);
        walk_stmt(s.body[2], path, true);
        path.pop_back();
        path.pop_back();
        path.push_back(0);
        path.push_back(1);
        walk_stmt(s.body[1], path, false);
        path.pop_back();
        path.pop_back();
        scopes_.pop_back();
        break;
      }
      default:
        break;
    }
  }

  static Expr& expr_at(SourceUnit& u, size_t ci, size_t fi, const Path& sp, size_t ei, const std::vector<size_t>& ep) {
    Expr* e = &stmt_at(u, ci, fi, sp).exprs[ei];
    for (size_t k : ep) e = &e->kids[k];
    return *e;
  }

  std::vector<std::string> visible_of_type(const Type& t, const std::string& except) const {
    std::set<std::string> names;
    for (const auto& v : unit_.contracts[ci_].state_vars)
      if (v.type == t && v.name != except) names.insert(v.name);
    for (const auto& scope : scopes_)
      for (const auto& [n, ty] : scope)
        if (ty == t && n != except) names.insert(n);
    return {names.begin(), names.end()};
  }

  void walk_expr(const Expr& e, const Path& sp, size_t ei, std::vector<size_t>& ep) {
    const size_t ci = ci_, fi = fi_;
    for (size_t k = 0; k < e.kids.size(); ++k) {
      ep.push_back(k);
      walk_expr(e.kids[k], sp, ei, ep);
      ep.pop_back();
    }
    const std::vector<size_t> here = ep;
    if (e.kind == ExprKind::Binary) {
      for (const auto* group : {&arith_group(), &relational_group()}) {
        if (std::find(group->begin(), group->end(), e.op) == group->end()) continue;
        for (BinOp alt : *group) {
          if (alt == e.op) continue;
          Candidate c{MutationOp::OperatorReplacement, fn_name_, e.loc, to_string(e.op), to_string(alt), "", {}};
          c.apply = [ci, fi, sp, ei, here, alt](SourceUnit& u) { expr_at(u, ci, fi, sp, ei, here).op = alt; };
          out_.push_back(std::move(c));
        }
      }
    }
    if (e.kind == ExprKind::Ident &&
        (e.ref == RefKind::StateVar || e.ref == RefKind::Param || e.ref == RefKind::Local)) {
      std::string site = fn_name_ + "@" + std::to_string(e.loc.line) + ":" + std::to_string(e.loc.column) + "#" +
                         std::to_string(out_.size());
      for (const auto& name : visible_of_type(e.type, e.name)) {
        Candidate c{MutationOp::VariableReplacement, fn_name_, e.loc, e.name, name, site, {}};
        c.apply = [ci, fi, sp, ei, here, name](SourceUnit& u) { expr_at(u, ci, fi, sp, ei, here).name = name; };
        out_.push_back(std::move(c));
      }
    }
  }
};

inline std::string mutant_id(const MutantDescriptor& d) {
  const char* code = d.op == MutationOp::OperatorReplacement ? "op" : d.op == MutationOp::VariableReplacement ? "var" : "del";
  std::string id = std::string(code) + "-" + std::to_string(d.loc.line) + "-" + std::to_string(d.loc.column);
  if (!d.replacement.empty()) {
    id += "-";
    for (char ch : d.replacement) {
      switch (ch) {
        case '+': id += "add"; break;
        case '-': id += "sub"; break;
        case '*': id += "mul"; break;
        case '/': id += "div"; break;
        case '<': id += "lt"; break;
        case '>': id += "gt"; break;
        case '=': id += "eq"; break;
        case '!': id += "not"; break;
        default: id += ch;
      }
    }
  }
  return id;
}

}  // namespace detail

/// Every valid single-site mutant in walk order. Variable replacement keeps
/// at most `var_cap` valid candidates per site (same type, name order).
inline std::vector<Mutant> generate_mutants(const SourceUnit& unit, const std::set<MutationOp>& ops,
                                            size_t var_cap = 3) {
  detail::MutationWalker walker(unit);
  std::vector<Mutant> out;
  std::map<std::string, size_t> per_site;
  std::set<std::string> ids;
  std::vector<AccountRole> probe_roles{{"__probe", 0}};
  for (auto& c : walker.candidates()) {
    if (!ops.count(c.op)) continue;
    if (c.op == MutationOp::VariableReplacement && per_site[c.site] >= var_cap) continue;
    SourceUnit copy = unit;
    c.apply(copy);
    std::string text = print_unit(copy);
    try {
      SourceUnit reparsed = parse_source(text);
      build_dapp_model(std::move(reparsed), probe_roles);
    } catch (const std::exception&) {
      continue;  // the mutant would not compile
    }
    if (c.op == MutationOp::VariableReplacement) ++per_site[c.site];
    Mutant m;
    m.desc.op = c.op;
    m.desc.function = c.function;
    m.desc.loc = c.loc;
    m.desc.original = c.original;
    m.desc.replacement = c.replacement;
    std::string id = detail::mutant_id(m.desc);
    std::string unique = id;
    for (int n = 2; !ids.insert(unique).second; ++n) unique = id + "-" + std::to_string(n);
    m.desc.id = unique;
    m.source = std::move(text);
    out.push_back(std::move(m));
  }
  return out;
}

inline std::vector<Mutant> generate_mutants(const SourceUnit& unit) {
  return generate_mutants(unit, {MutationOp::OperatorReplacement, MutationOp::VariableReplacement,
                                 MutationOp::StatementOmission});
}

}  // namespace txbasis
