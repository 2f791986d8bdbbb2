#pragma once

// Canonical MiniSol pretty-printer. Output re-parses to a structurally
// identical unit (see same_structure).

#include <sstream>
#include <string>

#include "txbasis/ast.hpp"

namespace txbasis {

inline std::string print_expr(const Expr& e);

namespace detail {

inline int binop_precedence(BinOp op) {
  switch (op) {
    case BinOp::Or: return 1;
    case BinOp::And: return 2;
    case BinOp::Eq: case BinOp::Ne: return 3;
    case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge: return 4;
    case BinOp::Add: case BinOp::Sub: return 5;
    case BinOp::Mul: case BinOp::Div: case BinOp::Mod: return 6;
  }
  return 0;
}

// Binary operands that are themselves binary are always parenthesised; the
// parser is left-associative, so this keeps the tree shape on re-parse.
inline std::string print_operand(const Expr& e) {
  if (e.kind == ExprKind::Binary) return "(" + print_expr(e) + ")";
  return print_expr(e);
}

inline std::string print_args(const std::vector<Expr>& args, size_t from = 0) {
  std::string out;
  for (size_t i = from; i < args.size(); ++i) {
    if (i > from) out += ", ";
    out += print_expr(args[i]);
  }
  return out;
}

inline void print_stmt(std::ostringstream& os, const Stmt& s, int indent);

inline void print_body(std::ostringstream& os, const std::vector<Stmt>& body, int indent) {
  for (const auto& s : body) print_stmt(os, s, indent);
}

// Statement printed inline without indentation or trailing ';' (for headers).
inline std::string print_simple(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::VarDecl:
      return std::string(to_string(s.decl_type.base)) + " " + s.name +
             (s.exprs.empty() ? "" : " = " + print_expr(s.exprs[0]));
    case StmtKind::Assign: {
      static const char* ops[] = {"=", "+=", "-=", "*="};
      return print_expr(s.exprs[0]) + " " + ops[static_cast<int>(s.assign)] + " " + print_expr(s.exprs[1]);
    }
    case StmtKind::IncDec: return print_expr(s.exprs[0]) + (s.increment ? "++" : "--");
    case StmtKind::ExprStmt: return print_expr(s.exprs[0]);
    case StmtKind::Push: return print_expr(s.exprs[0]) + ".push(" + print_expr(s.exprs[1]) + ")";
    case StmtKind::Transfer: return print_expr(s.exprs[0]) + ".transfer(" + print_expr(s.exprs[1]) + ")";
    case StmtKind::Return: return s.exprs.empty() ? "return" : "return " + print_expr(s.exprs[0]);
    case StmtKind::Require: return "require(" + print_expr(s.exprs[0]) + ")";
    case StmtKind::Revert: return "revert()";
    case StmtKind::Log: return "log(\"" + s.text + "\")";
    default: return "";
  }
}

inline void print_stmt(std::ostringstream& os, const Stmt& s, int indent) {
  std::string pad(static_cast<size_t>(indent) * 2, ' ');
  switch (s.kind) {
    case StmtKind::Block:
      os << pad << "{\n";
      print_body(os, s.body, indent + 1);
      os << pad << "}\n";
      return;
    case StmtKind::If:
      os << pad << "if (" << print_expr(s.exprs[0]) << ") {\n";
      for (const auto& b : s.body)
        b.kind == StmtKind::Block ? print_body(os, b.body, indent + 1) : print_stmt(os, b, indent + 1);
      if (s.has_else) {
        os << pad << "} else {\n";
        for (const auto& b : s.else_body)
          b.kind == StmtKind::Block ? print_body(os, b.body, indent + 1) : print_stmt(os, b, indent + 1);
      }
      os << pad << "}\n";
      return;
    case StmtKind::While:
      os << pad << "while (" << print_expr(s.exprs[0]) << ") {\n";
      for (const auto& b : s.body)
        b.kind == StmtKind::Block ? print_body(os, b.body, indent + 1) : print_stmt(os, b, indent + 1);
      os << pad << "}\n";
      return;
    case StmtKind::For: {
      const Stmt& init = s.body[0];
      const Stmt& step = s.body[1];
      os << pad << "for (" << (init.kind == StmtKind::Block ? "" : print_simple(init)) << "; "
         << print_expr(s.exprs[0]) << "; " << (step.kind == StmtKind::Block ? "" : print_simple(step)) << ") {\n";
      const Stmt& b = s.body[2];
      b.kind == StmtKind::Block ? print_body(os, b.body, indent + 1) : print_stmt(os, b, indent + 1);
      os << pad << "}\n";
      return;
    }
    default:
      os << pad << print_simple(s) << ";\n";
  }
}

}  // namespace detail

inline std::string print_expr(const Expr& e) {
  using detail::print_operand;
  switch (e.kind) {
    case ExprKind::Number: return e.number.str();
    case ExprKind::BoolLit: return e.boolean ? "true" : "false";
    case ExprKind::Ident: return e.name;
    case ExprKind::MsgSender: return "msg.sender";
    case ExprKind::MsgValue: return "msg.value";
    case ExprKind::Now: return "now";
    case ExprKind::This: return "this";
    case ExprKind::AddressCast: return "address(" + print_expr(e.kids[0]) + ")";
    case ExprKind::Binary: return print_operand(e.kids[0]) + " " + to_string(e.op) + " " + print_operand(e.kids[1]);
    case ExprKind::Not:
      return "!" + (e.kids[0].kind == ExprKind::Binary ? "(" + print_expr(e.kids[0]) + ")" : print_expr(e.kids[0]));
    case ExprKind::Index: return print_expr(e.kids[0]) + "[" + print_expr(e.kids[1]) + "]";
    case ExprKind::Length: return print_expr(e.kids[0]) + ".length";
    case ExprKind::Call: return e.name + "(" + detail::print_args(e.kids) + ")";
    case ExprKind::ExternalCall: return e.contract + "." + e.name + "(" + detail::print_args(e.kids) + ")";
    case ExprKind::LowLevelCall:
      return print_operand(e.kids[0]) + ".call.value(" + print_expr(e.kids[1]) + ")()";
  }
  return "";
}

inline std::string print_stmt(const Stmt& s) {
  std::ostringstream os;
  detail::print_stmt(os, s, 0);
  std::string out = os.str();
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

inline std::string print_function_header(const FunctionDecl& f) {
  std::string out;
  switch (f.kind) {
    case FunctionKind::Constructor: out = "constructor("; break;
    case FunctionKind::Fallback: out = "function("; break;
    case FunctionKind::Ordinary: out = "function " + f.name + "("; break;
  }
  for (size_t i = 0; i < f.params.size(); ++i) {
    if (i) out += ", ";
    out += std::string(to_string(f.params[i].type)) + " " + f.params[i].name;
  }
  out += ")";
  if (f.kind != FunctionKind::Constructor) out += std::string(" ") + to_string(f.visibility);
  if (f.mutability != Mutability::StateChanging) out += std::string(" ") + to_string(f.mutability);
  if (!f.returns.empty()) {
    out += " returns (";
    for (size_t i = 0; i < f.returns.size(); ++i) {
      if (i) out += ", ";
      out += to_string(f.returns[i]);
    }
    out += ")";
  }
  return out;
}

inline std::string print_unit(const SourceUnit& unit) {
  std::ostringstream os;
  for (size_t ci = 0; ci < unit.contracts.size(); ++ci) {
    const auto& c = unit.contracts[ci];
    if (ci) os << "\n";
    os << "contract " << c.name << " {\n";
    for (const auto& v : c.state_vars) os << "  " << type_to_string(v.type) << " " << v.name << ";\n";
    for (const auto& f : c.functions) {
      os << "\n  " << print_function_header(f) << " {\n";
      detail::print_body(os, f.body, 2);
      os << "  }\n";
    }
    os << "}\n";
  }
  return os.str();
}

/// Structural equality ignoring ids, source positions and resolver output.
inline bool same_structure(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.number != b.number || a.boolean != b.boolean || a.name != b.name ||
      a.contract != b.contract || a.kids.size() != b.kids.size())
    return false;
  if (a.kind == ExprKind::Binary && a.op != b.op) return false;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!same_structure(a.kids[i], b.kids[i])) return false;
  return true;
}

inline bool same_structure(const std::vector<Stmt>& a, const std::vector<Stmt>& b);

inline bool same_structure(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.has_else != b.has_else || a.assign != b.assign || a.increment != b.increment ||
      a.name != b.name || !(a.decl_type == b.decl_type) || a.text != b.text || a.exprs.size() != b.exprs.size())
    return false;
  for (size_t i = 0; i < a.exprs.size(); ++i)
    if (!same_structure(a.exprs[i], b.exprs[i])) return false;
  return same_structure(a.body, b.body) && same_structure(a.else_body, b.else_body);
}

inline bool same_structure(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!same_structure(a[i], b[i])) return false;
  return true;
}

inline bool same_structure(const SourceUnit& a, const SourceUnit& b) {
  if (a.contracts.size() != b.contracts.size()) return false;
  for (size_t ci = 0; ci < a.contracts.size(); ++ci) {
    const auto& x = a.contracts[ci];
    const auto& y = b.contracts[ci];
    if (x.name != y.name || x.state_vars.size() != y.state_vars.size() || x.functions.size() != y.functions.size())
      return false;
    for (size_t i = 0; i < x.state_vars.size(); ++i)
      if (x.state_vars[i].name != y.state_vars[i].name || !(x.state_vars[i].type == y.state_vars[i].type)) return false;
    for (size_t i = 0; i < x.functions.size(); ++i) {
      const auto& f = x.functions[i];
      const auto& g = y.functions[i];
      if (f.name != g.name || f.kind != g.kind || f.visibility != g.visibility || f.mutability != g.mutability ||
          f.params != g.params || f.returns != g.returns || !same_structure(f.body, g.body))
        return false;
    }
  }
  return true;
}

}  // namespace txbasis
