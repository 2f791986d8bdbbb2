#pragma once

// Recursive-descent parser for MiniSol. The grammar is documented in
// docs/minisol.ebnf; parse_source() also runs name resolution and type
// checking (resolver.hpp), so a returned unit is always resolved.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "txbasis/ast.hpp"
#include "txbasis/lexer.hpp"

namespace txbasis {

namespace detail {

inline bool is_keyword(const std::string& s) {
  static const std::set<std::string> kw = {
      "contract", "function", "constructor", "fallback", "returns", "if",      "else",
      "while",    "for",      "return",      "require",  "revert",  "log",     "mapping",
      "uint",     "uint256",  "bool",        "address",  "true",    "false",   "msg",
      "now",      "this",     "public",      "external", "internal", "private", "view",
      "pure",     "payable"};
  return kw.count(s) > 0;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SourceUnit parse_unit() {
    SourceUnit unit;
    while (!at_end()) unit.contracts.push_back(parse_contract());
    return unit;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  int next_id_ = 0;

  const Token& peek(size_t ahead = 0) const {
    size_t p = pos_ + ahead;
    return p < toks_.size() ? toks_[p] : toks_.back();
  }
  bool at_end() const { return peek().kind == TokKind::End; }
  bool is(std::string_view text, size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return (t.kind == TokKind::Punct || t.kind == TokKind::Ident) && t.text == text;
  }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(std::string_view text) {
    if (is(text)) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(peek().loc, "expected " + expected + " but found " + describe(peek()));
  }
  Token expect(std::string_view text) {
    if (!is(text)) fail("'" + std::string(text) + "'");
    return take();
  }
  std::string expect_ident(const char* what) {
    const Token& t = peek();
    if (t.kind != TokKind::Ident || is_keyword(t.text)) fail(what);
    return take().text;
  }

  bool at_base_type() const { return is("uint") || is("uint256") || is("bool") || is("address"); }

  BaseType parse_base_type() {
    if (accept("uint") || accept("uint256")) return BaseType::Uint;
    if (accept("bool")) return BaseType::Bool;
    if (accept("address")) return BaseType::Address;
    fail("a type (uint256, bool, address)");
  }

  Type parse_type() {
    if (accept("mapping")) {
      expect("(");
      BaseType k = parse_base_type();
      expect("=>");
      BaseType v = parse_base_type();
      expect(")");
      return Type::mapping(k, v);
    }
    BaseType b = parse_base_type();
    if (is("[")) {
      expect("[");
      expect("]");
      return Type::array(b);
    }
    return Type::scalar(b);
  }

  ContractDecl parse_contract() {
    ContractDecl c;
    c.loc = peek().loc;
    expect("contract");
    c.name = expect_ident("contract name");
    expect("{");
    while (!is("}")) {
      if (at_end()) fail("'}'");
      if (is("function") || is("constructor") || is("fallback")) {
        c.functions.push_back(parse_function());
      } else if (at_base_type() || is("mapping")) {
        StateVarDecl v;
        v.loc = peek().loc;
        v.type = parse_type();
        v.name = expect_ident("state variable name");
        expect(";");
        c.state_vars.push_back(std::move(v));
      } else {
        fail("a state variable or function declaration");
      }
    }
    expect("}");
    return c;
  }

  FunctionDecl parse_function() {
    FunctionDecl f;
    f.loc = peek().loc;
    if (accept("constructor")) {
      f.kind = FunctionKind::Constructor;
      f.name = "constructor";
    } else if (accept("fallback")) {
      f.kind = FunctionKind::Fallback;
      f.name = "fallback";
    } else {
      expect("function");
      if (is("(")) {
        f.kind = FunctionKind::Fallback;
        f.name = "fallback";
      } else {
        f.name = expect_ident("function name");
      }
    }
    expect("(");
    if (!is(")")) {
      do {
        if (!at_base_type()) fail("parameter type or ')'");
        Param p;
        p.type = parse_base_type();
        p.name = expect_ident("parameter name");
        f.params.push_back(std::move(p));
      } while (accept(","));
    }
    expect(")");
    bool saw_visibility = false;
    for (;;) {
      if (accept("public")) {
        f.visibility = Visibility::Public;
        saw_visibility = true;
      } else if (accept("external")) {
        f.visibility = Visibility::External;
        saw_visibility = true;
      } else if (accept("internal")) {
        f.visibility = Visibility::Internal;
        saw_visibility = true;
      } else if (accept("private")) {
        f.visibility = Visibility::Private;
        saw_visibility = true;
      } else if (accept("view")) {
        f.mutability = Mutability::View;
      } else if (accept("pure")) {
        f.mutability = Mutability::Pure;
      } else if (accept("payable")) {
        f.mutability = Mutability::Payable;
      } else {
        break;
      }
    }
    if (!saw_visibility && f.kind == FunctionKind::Fallback) f.visibility = Visibility::External;
    if (accept("returns")) {
      expect("(");
      do {
        f.returns.push_back(parse_base_type());
        if (peek().kind == TokKind::Ident && !is_keyword(peek().text)) take();  // optional name
      } while (accept(","));
      expect(")");
    }
    f.body = parse_block_body();
    return f;
  }

  std::vector<Stmt> parse_block_body() {
    expect("{");
    std::vector<Stmt> out;
    while (!is("}")) {
      if (at_end()) fail("'}'");
      out.push_back(parse_stmt());
    }
    expect("}");
    return out;
  }

  Stmt make_stmt(StmtKind kind, SourceLoc loc) {
    Stmt s;
    s.kind = kind;
    s.loc = loc;
    s.id = next_id_++;
    return s;
  }

  // Bodies of if/while/for are always Blocks.
  Stmt parse_body_stmt() {
    if (is("{")) return parse_stmt();
    Stmt block = make_stmt(StmtKind::Block, peek().loc);
    block.body.push_back(parse_stmt());
    return block;
  }

  Stmt parse_stmt() {
    SourceLoc loc = peek().loc;
    if (is("{")) {
      Stmt s = make_stmt(StmtKind::Block, loc);
      s.body = parse_block_body();
      return s;
    }
    if (accept("if")) {
      Stmt s = make_stmt(StmtKind::If, loc);
      expect("(");
      s.exprs.push_back(parse_expr());
      expect(")");
      s.body.push_back(parse_body_stmt());
      if (accept("else")) {
        s.has_else = true;
        s.else_body.push_back(parse_body_stmt());
      }
      return s;
    }
    if (accept("while")) {
      Stmt s = make_stmt(StmtKind::While, loc);
      expect("(");
      s.exprs.push_back(parse_expr());
      expect(")");
      s.body.push_back(parse_body_stmt());
      return s;
    }
    if (accept("for")) {
      Stmt s = make_stmt(StmtKind::For, loc);
      expect("(");
      if (accept(";")) {
        s.body.push_back(make_stmt(StmtKind::Block, peek().loc));
      } else if (at_base_type()) {
        s.body.push_back(parse_var_decl());
      } else {
        s.body.push_back(parse_simple());
        expect(";");
      }
      if (is(";")) fail("loop condition");
      s.exprs.push_back(parse_expr());
      expect(";");
      if (is(")"))
        s.body.push_back(make_stmt(StmtKind::Block, peek().loc));
      else
        s.body.push_back(parse_simple());
      expect(")");
      s.body.push_back(parse_body_stmt());
      return s;
    }
    if (accept("return")) {
      Stmt s = make_stmt(StmtKind::Return, loc);
      if (!is(";")) s.exprs.push_back(parse_expr());
      expect(";");
      return s;
    }
    if (accept("require")) {
      Stmt s = make_stmt(StmtKind::Require, loc);
      expect("(");
      s.exprs.push_back(parse_expr());
      expect(")");
      expect(";");
      return s;
    }
    if (accept("revert")) {
      Stmt s = make_stmt(StmtKind::Revert, loc);
      expect("(");
      expect(")");
      expect(";");
      return s;
    }
    if (accept("log")) {
      Stmt s = make_stmt(StmtKind::Log, loc);
      expect("(");
      if (peek().kind != TokKind::String) fail("string literal");
      s.text = take().text;
      expect(")");
      expect(";");
      return s;
    }
    if (at_base_type()) return parse_var_decl();
    Stmt s = parse_simple();
    expect(";");
    return s;
  }

  Stmt parse_var_decl() {
    Stmt s = make_stmt(StmtKind::VarDecl, peek().loc);
    s.decl_type = Type::scalar(parse_base_type());
    s.name = expect_ident("variable name");
    if (accept("=")) s.exprs.push_back(parse_expr());
    expect(";");
    return s;
  }

  // Assignment, ++/--, push, transfer or a bare call.
  Stmt parse_simple() {
    SourceLoc loc = peek().loc;
    Expr lhs = parse_expr();
    if (is("=") || is("+=") || is("-=") || is("*=")) {
      Stmt s = make_stmt(StmtKind::Assign, loc);
      std::string op = take().text;
      s.assign = op == "=" ? AssignOp::Set : op == "+=" ? AssignOp::Add : op == "-=" ? AssignOp::Sub : AssignOp::Mul;
      s.exprs.push_back(std::move(lhs));
      s.exprs.push_back(parse_expr());
      return s;
    }
    if (is("++") || is("--")) {
      Stmt s = make_stmt(StmtKind::IncDec, loc);
      s.increment = take().text == "++";
      s.exprs.push_back(std::move(lhs));
      return s;
    }
    // `x.push(e)` and `x.transfer(e)` are parsed as a pseudo call on a member.
    if (lhs.kind == ExprKind::Call && lhs.name.empty() && lhs.kids.size() == 2 && !lhs.contract.empty()) {
      Stmt s = make_stmt(lhs.contract == "push" ? StmtKind::Push : StmtKind::Transfer, loc);
      s.exprs = std::move(lhs.kids);
      return s;
    }
    if (lhs.kind != ExprKind::Call && lhs.kind != ExprKind::ExternalCall && lhs.kind != ExprKind::LowLevelCall)
      throw ParseError(loc, "expression statement must be a call or assignment");
    Stmt s = make_stmt(StmtKind::ExprStmt, loc);
    s.exprs.push_back(std::move(lhs));
    return s;
  }

  Expr make_expr(ExprKind kind, SourceLoc loc) {
    Expr e;
    e.kind = kind;
    e.loc = loc;
    e.id = next_id_++;
    return e;
  }

  Expr parse_expr() { return parse_binary(0); }

  static int precedence(const std::string& op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    if (op == "*" || op == "/" || op == "%") return 6;
    return -1;
  }
  static BinOp to_binop(const std::string& op) {
    static const std::pair<const char*, BinOp> table[] = {
        {"||", BinOp::Or}, {"&&", BinOp::And}, {"==", BinOp::Eq}, {"!=", BinOp::Ne}, {"<", BinOp::Lt},
        {"<=", BinOp::Le}, {">", BinOp::Gt},   {">=", BinOp::Ge}, {"+", BinOp::Add}, {"-", BinOp::Sub},
        {"*", BinOp::Mul}, {"/", BinOp::Div},  {"%", BinOp::Mod}};
    for (const auto& [s, b] : table)
      if (op == s) return b;
    return BinOp::Add;
  }

  Expr parse_binary(int min_prec) {
    Expr lhs = parse_unary();
    for (;;) {
      const Token& t = peek();
      int prec = t.kind == TokKind::Punct ? precedence(t.text) : -1;
      if (prec < 0 || prec < min_prec) break;
      Token op = take();
      Expr rhs = parse_binary(prec + 1);
      Expr bin = make_expr(ExprKind::Binary, op.loc);
      bin.op = to_binop(op.text);
      bin.kids.push_back(std::move(lhs));
      bin.kids.push_back(std::move(rhs));
      lhs = std::move(bin);
    }
    return lhs;
  }

  Expr parse_unary() {
    if (is("!")) {
      Expr e = make_expr(ExprKind::Not, take().loc);
      e.kids.push_back(parse_unary());
      return e;
    }
    return parse_postfix(parse_primary());
  }

  std::vector<Expr> parse_args() {
    expect("(");
    std::vector<Expr> args;
    if (!is(")")) {
      do args.push_back(parse_expr());
      while (accept(","));
    }
    expect(")");
    return args;
  }

  Expr parse_postfix(Expr e) {
    for (;;) {
      if (is("[")) {
        Expr idx = make_expr(ExprKind::Index, take().loc);
        idx.kids.push_back(std::move(e));
        idx.kids.push_back(parse_expr());
        expect("]");
        e = std::move(idx);
      } else if (is(".")) {
        SourceLoc loc = take().loc;
        std::string member = expect_member();
        if (member == "length") {
          Expr len = make_expr(ExprKind::Length, loc);
          len.kids.push_back(std::move(e));
          e = std::move(len);
        } else if (member == "call") {
          Expr call = make_expr(ExprKind::LowLevelCall, loc);
          call.kids.push_back(std::move(e));
          if (accept(".")) {
            if (expect_member() != "value") fail("'value'");
            expect("(");
            call.kids.push_back(parse_expr());
            expect(")");
          } else {
            Expr zero = make_expr(ExprKind::Number, loc);
            call.kids.push_back(std::move(zero));
          }
          expect("(");
          expect(")");
          e = std::move(call);
        } else if (member == "push" || member == "transfer") {
          // Marker call: contract field carries the member name; the
          // statement parser turns it into Push / Transfer.
          Expr call = make_expr(ExprKind::Call, loc);
          call.contract = member;
          call.kids.push_back(std::move(e));
          std::vector<Expr> args = parse_args();
          if (args.size() != 1) throw ParseError(loc, member + " takes exactly one argument");
          call.kids.push_back(std::move(args[0]));
          return call;
        } else if (e.kind == ExprKind::Ident) {
          Expr call = make_expr(ExprKind::ExternalCall, e.loc);
          call.contract = e.name;
          call.name = member;
          call.kids = parse_args();
          e = std::move(call);
        } else {
          throw ParseError(loc, "unknown member '" + member + "'");
        }
      } else {
        return e;
      }
    }
  }

  std::string expect_member() {
    if (peek().kind != TokKind::Ident) fail("member name");
    return take().text;
  }

  Expr parse_primary() {
    const Token& t = peek();
    SourceLoc loc = t.loc;
    if (t.kind == TokKind::Number) {
      Expr e = make_expr(ExprKind::Number, loc);
      e.number = U256(take().text);
      return e;
    }
    if (accept("true") || accept("false")) {
      Expr e = make_expr(ExprKind::BoolLit, loc);
      e.boolean = toks_[pos_ - 1].text == "true";
      return e;
    }
    if (accept("msg")) {
      expect(".");
      std::string m = expect_member();
      if (m == "sender") return make_expr(ExprKind::MsgSender, loc);
      if (m == "value") return make_expr(ExprKind::MsgValue, loc);
      throw ParseError(loc, "unknown msg member '" + m + "'");
    }
    if (accept("now")) return make_expr(ExprKind::Now, loc);
    if (accept("this")) return make_expr(ExprKind::This, loc);
    if (accept("address")) {
      Expr e = make_expr(ExprKind::AddressCast, loc);
      expect("(");
      e.kids.push_back(parse_expr());
      expect(")");
      return e;
    }
    if (accept("(")) {
      Expr inner = parse_expr();
      expect(")");
      return inner;
    }
    if (t.kind == TokKind::Ident && !is_keyword(t.text)) {
      std::string name = take().text;
      if (is("(")) {
        Expr call = make_expr(ExprKind::Call, loc);
        call.name = name;
        call.kids = parse_args();
        return call;
      }
      Expr e = make_expr(ExprKind::Ident, loc);
      e.name = name;
      return e;
    }
    fail("an expression");
  }
};

}  // namespace detail

inline SourceUnit resolve(SourceUnit unit);

/// Parses and resolves MiniSol text. Throws ParseError with the position of
/// the first problem.
inline SourceUnit parse_source(std::string_view text) {
  detail::Parser p(tokenize(text));
  return resolve(p.parse_unit());
}

}  // namespace txbasis

#include "txbasis/resolver.hpp"
