#pragma once

// Syntax model for MiniSol. All nodes are plain values so a whole unit can be
// copied and edited (the mutation engine relies on that).

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

#include "txbasis/errors.hpp"

namespace txbasis {

using U256 = boost::multiprecision::uint256_t;

enum class BaseType { Uint, Bool, Address };

struct Type {
  enum class Shape { Scalar, Array, Mapping };

  Shape shape = Shape::Scalar;
  BaseType base = BaseType::Uint;  // element / value type
  BaseType key = BaseType::Uint;   // mappings only

  static Type scalar(BaseType b) { return {Shape::Scalar, b, BaseType::Uint}; }
  static Type array(BaseType b) { return {Shape::Array, b, BaseType::Uint}; }
  static Type mapping(BaseType k, BaseType v) { return {Shape::Mapping, v, k}; }

  bool is_scalar() const { return shape == Shape::Scalar; }

  friend bool operator==(const Type&, const Type&) = default;
};

enum class BinOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

enum class ExprKind {
  Number,
  BoolLit,
  Ident,
  MsgSender,
  MsgValue,
  Now,
  This,
  AddressCast,   // address(e)
  Binary,
  Not,
  Index,         // kids[0][kids[1]]
  Length,        // kids[0].length
  Call,          // internal call: name(args)
  ExternalCall,  // Contract.name(args)
  LowLevelCall,  // kids[0].call.value(kids[1])()
};

/// What an identifier resolved to.
enum class RefKind { Unresolved, StateVar, Param, Local, Function, Contract };

struct Expr {
  ExprKind kind = ExprKind::Number;
  int id = -1;
  SourceLoc loc;

  U256 number = 0;       // Number
  bool boolean = false;  // BoolLit
  std::string name;      // Ident / Call target / ExternalCall function
  std::string contract;  // ExternalCall target contract
  BinOp op = BinOp::Add;
  std::vector<Expr> kids;

  // Filled in by the resolver.
  RefKind ref = RefKind::Unresolved;
  int slot = -1;    // state var / local index; callee index for calls
  int target = -1;  // ExternalCall: callee contract index
  Type type;
};

enum class StmtKind {
  Block,
  VarDecl,    // type name [= exprs[0]]
  Assign,     // exprs[0] op= exprs[1]
  IncDec,     // exprs[0]++ / --
  ExprStmt,   // exprs[0] (a call)
  Push,       // exprs[0].push(exprs[1])
  Transfer,   // exprs[0].transfer(exprs[1])
  If,         // exprs[0]; body / else_body
  While,      // exprs[0]; body
  For,        // init in body[0] (may be Block{} when absent), exprs[0] cond,
              // step in body[1], loop body in body[2]
  Return,     // optional exprs[0]
  Require,    // exprs[0]
  Revert,
  Log,        // text
};

enum class AssignOp { Set, Add, Sub, Mul };

struct Stmt {
  StmtKind kind = StmtKind::Block;
  int id = -1;
  SourceLoc loc;

  std::vector<Expr> exprs;
  std::vector<Stmt> body;
  std::vector<Stmt> else_body;
  bool has_else = false;

  AssignOp assign = AssignOp::Set;
  bool increment = true;  // IncDec
  std::string name;       // VarDecl
  Type decl_type;         // VarDecl
  std::string text;       // Log
  int slot = -1;          // VarDecl local slot
};

enum class Visibility { Public, External, Internal, Private };
enum class Mutability { StateChanging, View, Pure, Payable };
enum class FunctionKind { Ordinary, Constructor, Fallback };

struct Param {
  std::string name;
  BaseType type = BaseType::Uint;

  friend bool operator==(const Param&, const Param&) = default;
};

struct FunctionDecl {
  std::string name;  // "constructor" / "fallback" for the special kinds
  FunctionKind kind = FunctionKind::Ordinary;
  Visibility visibility = Visibility::Public;
  Mutability mutability = Mutability::StateChanging;
  std::vector<Param> params;
  std::vector<BaseType> returns;
  std::vector<Stmt> body;
  SourceLoc loc;

  // Resolver output: types of every local slot, params first.
  std::vector<BaseType> local_types;

  bool is_external_entry() const {
    return visibility == Visibility::Public || visibility == Visibility::External;
  }
};

struct StateVarDecl {
  std::string name;
  Type type;
  SourceLoc loc;
};

struct ContractDecl {
  std::string name;
  std::vector<StateVarDecl> state_vars;
  std::vector<FunctionDecl> functions;
  SourceLoc loc;

  const FunctionDecl* find_function(const std::string& fn) const {
    for (const auto& f : functions)
      if (f.name == fn) return &f;
    return nullptr;
  }
  int function_index(const std::string& fn) const {
    for (size_t i = 0; i < functions.size(); ++i)
      if (functions[i].name == fn) return static_cast<int>(i);
    return -1;
  }
  int state_var_index(const std::string& var) const {
    for (size_t i = 0; i < state_vars.size(); ++i)
      if (state_vars[i].name == var) return static_cast<int>(i);
    return -1;
  }
};

struct SourceUnit {
  std::vector<ContractDecl> contracts;

  const ContractDecl* find_contract(const std::string& name) const {
    for (const auto& c : contracts)
      if (c.name == name) return &c;
    return nullptr;
  }
  int contract_index(const std::string& name) const {
    for (size_t i = 0; i < contracts.size(); ++i)
      if (contracts[i].name == name) return static_cast<int>(i);
    return -1;
  }
};

inline const char* to_string(BaseType t) {
  switch (t) {
    case BaseType::Uint: return "uint256";
    case BaseType::Bool: return "bool";
    case BaseType::Address: return "address";
  }
  return "?";
}

inline const char* to_string(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Div: return "/";
    case BinOp::Mod: return "%";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::Gt: return ">";
    case BinOp::Ge: return ">=";
    case BinOp::Eq: return "==";
    case BinOp::Ne: return "!=";
    case BinOp::And: return "&&";
    case BinOp::Or: return "||";
  }
  return "?";
}

inline const char* to_string(Visibility v) {
  switch (v) {
    case Visibility::Public: return "public";
    case Visibility::External: return "external";
    case Visibility::Internal: return "internal";
    case Visibility::Private: return "private";
  }
  return "?";
}

inline const char* to_string(Mutability m) {
  switch (m) {
    case Mutability::StateChanging: return "nonpayable";
    case Mutability::View: return "view";
    case Mutability::Pure: return "pure";
    case Mutability::Payable: return "payable";
  }
  return "?";
}

inline std::string type_to_string(const Type& t) {
  switch (t.shape) {
    case Type::Shape::Scalar: return to_string(t.base);
    case Type::Shape::Array: return std::string(to_string(t.base)) + "[]";
    case Type::Shape::Mapping:
      return std::string("mapping(") + to_string(t.key) + " => " + to_string(t.base) + ")";
  }
  return "?";
}

}  // namespace txbasis
