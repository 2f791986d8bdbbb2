#pragma once

// Name resolution and type checking for MiniSol. Annotates identifiers with
// their storage class and slot, records local-slot types per function, and
// rejects duplicate declarations, unresolved names, arity and type errors.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "txbasis/ast.hpp"

namespace txbasis {

namespace detail {

class Resolver {
 public:
  explicit Resolver(SourceUnit& unit) : unit_(unit) {}

  void run() {
    std::set<std::string> contract_names;
    for (const auto& c : unit_.contracts)
      if (!contract_names.insert(c.name).second) throw ParseError(c.loc, "duplicate contract '" + c.name + "'");
    for (size_t ci = 0; ci < unit_.contracts.size(); ++ci) check_declarations(unit_.contracts[ci]);
    for (size_t ci = 0; ci < unit_.contracts.size(); ++ci) {
      contract_ = &unit_.contracts[ci];
      for (auto& f : contract_->functions) resolve_function(f);
    }
  }

 private:
  SourceUnit& unit_;
  ContractDecl* contract_ = nullptr;
  FunctionDecl* function_ = nullptr;
  std::vector<std::map<std::string, int>> scopes_;

  void check_declarations(const ContractDecl& c) {
    std::set<std::string> names;
    for (const auto& v : c.state_vars) {
      if (!names.insert(v.name).second) throw ParseError(v.loc, "duplicate declaration of '" + v.name + "'");
      if (unit_.find_contract(v.name)) throw ParseError(v.loc, "'" + v.name + "' shadows a contract name");
    }
    for (const auto& f : c.functions) {
      if (!names.insert(f.name).second) {
        if (f.kind == FunctionKind::Ordinary)
          throw ParseError(f.loc, "duplicate declaration of '" + f.name + "' (overloading is not supported)");
        throw ParseError(f.loc, "more than one " + f.name + " in contract '" + c.name + "'");
      }
      if (f.returns.size() > 1) throw ParseError(f.loc, "functions return at most one value");
      if (f.kind == FunctionKind::Fallback && (!f.params.empty() || !f.returns.empty()))
        throw ParseError(f.loc, "fallback function takes no parameters and returns nothing");
      if (f.kind == FunctionKind::Constructor && !f.returns.empty())
        throw ParseError(f.loc, "constructor cannot return values");
      std::set<std::string> params;
      for (const auto& p : f.params)
        if (!params.insert(p.name).second) throw ParseError(f.loc, "duplicate parameter '" + p.name + "'");
    }
  }

  void resolve_function(FunctionDecl& f) {
    function_ = &f;
    f.local_types.clear();
    scopes_.clear();
    scopes_.emplace_back();
    for (const auto& p : f.params) {
      scopes_.back()[p.name] = static_cast<int>(f.local_types.size());
      f.local_types.push_back(p.type);
    }
    for (auto& s : f.body) resolve_stmt(s);
    scopes_.clear();
  }

  std::optional<int> lookup_local(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return found->second;
    }
    return std::nullopt;
  }

  void declare_local(Stmt& s) {
    if (lookup_local(s.name)) throw ParseError(s.loc, "duplicate declaration of '" + s.name + "'");
    s.slot = static_cast<int>(function_->local_types.size());
    function_->local_types.push_back(s.decl_type.base);
    scopes_.back()[s.name] = s.slot;
  }

  static void require_type(const Expr& e, const Type& have, const Type& want, const char* what) {
    if (!(have == want))
      throw ParseError(e.loc, std::string("type mismatch in ") + what + ": expected " + type_to_string(want) +
                                  ", found " + type_to_string(have));
  }

  Type value_of(Expr& e) {
    std::optional<Type> t = resolve_expr(e);
    if (!t) throw ParseError(e.loc, "call without a return value used as a value");
    if (!t->is_scalar()) throw ParseError(e.loc, "'" + e.name + "' cannot be used as a value");
    return *t;
  }

  bool is_lvalue(const Expr& e) const {
    if (e.kind == ExprKind::Ident) return e.ref == RefKind::StateVar || e.ref == RefKind::Local || e.ref == RefKind::Param;
    return e.kind == ExprKind::Index;
  }

  void resolve_block(std::vector<Stmt>& body) {
    scopes_.emplace_back();
    for (auto& s : body) resolve_stmt(s);
    scopes_.pop_back();
  }

  void resolve_stmt(Stmt& s) {
    switch (s.kind) {
      case StmtKind::Block:
        resolve_block(s.body);
        break;
      case StmtKind::VarDecl:
        if (!s.exprs.empty()) require_type(s.exprs[0], value_of(s.exprs[0]), s.decl_type, "initialisation");
        declare_local(s);
        break;
      case StmtKind::Assign: {
        Type rhs = value_of(s.exprs[1]);
        Type lhs = value_of(s.exprs[0]);
        if (!is_lvalue(s.exprs[0])) throw ParseError(s.exprs[0].loc, "left side of assignment is not assignable");
        require_type(s.exprs[1], rhs, lhs, "assignment");
        if (s.assign != AssignOp::Set) require_type(s.exprs[0], lhs, Type::scalar(BaseType::Uint), "compound assignment");
        break;
      }
      case StmtKind::IncDec: {
        Type t = value_of(s.exprs[0]);
        if (!is_lvalue(s.exprs[0])) throw ParseError(s.exprs[0].loc, "operand of ++/-- is not assignable");
        require_type(s.exprs[0], t, Type::scalar(BaseType::Uint), "increment");
        break;
      }
      case StmtKind::ExprStmt:
        resolve_expr(s.exprs[0]);
        break;
      case StmtKind::Push: {
        std::optional<Type> arr = resolve_expr(s.exprs[0]);
        if (!arr || arr->shape != Type::Shape::Array || s.exprs[0].ref != RefKind::StateVar)
          throw ParseError(s.exprs[0].loc, "push requires a state array");
        require_type(s.exprs[1], value_of(s.exprs[1]), Type::scalar(arr->base), "push");
        break;
      }
      case StmtKind::Transfer:
        require_type(s.exprs[0], value_of(s.exprs[0]), Type::scalar(BaseType::Address), "transfer target");
        require_type(s.exprs[1], value_of(s.exprs[1]), Type::scalar(BaseType::Uint), "transfer amount");
        break;
      case StmtKind::If:
        require_type(s.exprs[0], value_of(s.exprs[0]), Type::scalar(BaseType::Bool), "condition");
        resolve_block(s.body);
        if (s.has_else) resolve_block(s.else_body);
        break;
      case StmtKind::While:
        require_type(s.exprs[0], value_of(s.exprs[0]), Type::scalar(BaseType::Bool), "condition");
        resolve_block(s.body);
        break;
      case StmtKind::For:
        scopes_.emplace_back();
        resolve_stmt(s.body[0]);
        require_type(s.exprs[0], value_of(s.exprs[0]), Type::scalar(BaseType::Bool), "condition");
        resolve_stmt(s.body[1]);
        resolve_stmt(s.body[2]);
        scopes_.pop_back();
        break;
      case StmtKind::Return:
        if (function_->returns.empty()) {
          if (!s.exprs.empty()) throw ParseError(s.loc, "function '" + function_->name + "' returns no value");
        } else {
          if (s.exprs.empty()) throw ParseError(s.loc, "missing return value");
          require_type(s.exprs[0], value_of(s.exprs[0]), Type::scalar(function_->returns[0]), "return");
        }
        break;
      case StmtKind::Require:
        require_type(s.exprs[0], value_of(s.exprs[0]), Type::scalar(BaseType::Bool), "require");
        break;
      case StmtKind::Revert:
      case StmtKind::Log:
        break;
    }
  }

  void check_args(Expr& call, const FunctionDecl& callee) {
    if (call.kids.size() != callee.params.size())
      throw ParseError(call.loc, "call to '" + callee.name + "' expects " + std::to_string(callee.params.size()) +
                                     " argument(s), got " + std::to_string(call.kids.size()));
    for (size_t i = 0; i < call.kids.size(); ++i)
      require_type(call.kids[i], value_of(call.kids[i]), Type::scalar(callee.params[i].type), "argument");
  }

  static std::optional<Type> return_type(const FunctionDecl& f) {
    if (f.returns.empty()) return std::nullopt;
    return Type::scalar(f.returns[0]);
  }

  std::optional<Type> set(Expr& e, std::optional<Type> t) {
    if (t) e.type = *t;
    return t;
  }

  std::optional<Type> resolve_expr(Expr& e) {
    const Type kUint = Type::scalar(BaseType::Uint);
    const Type kBool = Type::scalar(BaseType::Bool);
    const Type kAddr = Type::scalar(BaseType::Address);
    switch (e.kind) {
      case ExprKind::Number: return set(e, kUint);
      case ExprKind::BoolLit: return set(e, kBool);
      case ExprKind::MsgSender:
      case ExprKind::This: return set(e, kAddr);
      case ExprKind::MsgValue:
      case ExprKind::Now: return set(e, kUint);
      case ExprKind::AddressCast: {
        Type t = value_of(e.kids[0]);
        if (t.base == BaseType::Bool) throw ParseError(e.loc, "cannot convert bool to address");
        return set(e, kAddr);
      }
      case ExprKind::Ident: {
        if (auto slot = lookup_local(e.name)) {
          e.ref = *slot < static_cast<int>(function_->params.size()) ? RefKind::Param : RefKind::Local;
          e.slot = *slot;
          return set(e, Type::scalar(function_->local_types[*slot]));
        }
        int sv = contract_->state_var_index(e.name);
        if (sv >= 0) {
          e.ref = RefKind::StateVar;
          e.slot = sv;
          return set(e, contract_->state_vars[sv].type);
        }
        int ci = unit_.contract_index(e.name);
        if (ci >= 0) {
          e.ref = RefKind::Contract;
          e.target = ci;
          return set(e, kAddr);
        }
        if (contract_->find_function(e.name)) throw ParseError(e.loc, "function '" + e.name + "' used as a value");
        throw ParseError(e.loc, "unresolved identifier '" + e.name + "'");
      }
      case ExprKind::Binary: {
        Type l = value_of(e.kids[0]);
        Type r = value_of(e.kids[1]);
        switch (e.op) {
          case BinOp::Add: case BinOp::Sub: case BinOp::Mul: case BinOp::Div: case BinOp::Mod:
            require_type(e.kids[0], l, kUint, "arithmetic");
            require_type(e.kids[1], r, kUint, "arithmetic");
            return set(e, kUint);
          case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge:
            require_type(e.kids[0], l, kUint, "comparison");
            require_type(e.kids[1], r, kUint, "comparison");
            return set(e, kBool);
          case BinOp::Eq: case BinOp::Ne:
            require_type(e.kids[1], r, l, "equality");
            return set(e, kBool);
          case BinOp::And: case BinOp::Or:
            require_type(e.kids[0], l, kBool, "logical operator");
            require_type(e.kids[1], r, kBool, "logical operator");
            return set(e, kBool);
        }
        return set(e, kUint);
      }
      case ExprKind::Not:
        require_type(e.kids[0], value_of(e.kids[0]), kBool, "negation");
        return set(e, kBool);
      case ExprKind::Index: {
        std::optional<Type> base = resolve_expr(e.kids[0]);
        if (!base || base->is_scalar() || e.kids[0].ref != RefKind::StateVar)
          throw ParseError(e.loc, "indexing requires a state array or mapping");
        Type idx = value_of(e.kids[1]);
        if (base->shape == Type::Shape::Array)
          require_type(e.kids[1], idx, kUint, "array index");
        else
          require_type(e.kids[1], idx, Type::scalar(base->key), "mapping key");
        return set(e, Type::scalar(base->base));
      }
      case ExprKind::Length: {
        std::optional<Type> base = resolve_expr(e.kids[0]);
        if (!base || base->shape != Type::Shape::Array || e.kids[0].ref != RefKind::StateVar)
          throw ParseError(e.loc, "length requires a state array");
        return set(e, kUint);
      }
      case ExprKind::Call: {
        if (e.name.empty()) throw ParseError(e.loc, "'" + e.contract + "' is only allowed as a statement");
        int fi = contract_->function_index(e.name);
        if (fi < 0) throw ParseError(e.loc, "unresolved function '" + e.name + "'");
        const FunctionDecl& callee = contract_->functions[fi];
        if (callee.kind != FunctionKind::Ordinary) throw ParseError(e.loc, "'" + e.name + "' cannot be called directly");
        if (callee.visibility == Visibility::External)
          throw ParseError(e.loc, "external function '" + e.name + "' cannot be called internally");
        e.ref = RefKind::Function;
        e.slot = fi;
        check_args(e, callee);
        return set(e, return_type(callee));
      }
      case ExprKind::ExternalCall: {
        int ci = unit_.contract_index(e.contract);
        if (ci < 0) throw ParseError(e.loc, "unresolved contract '" + e.contract + "'");
        const ContractDecl& target = unit_.contracts[ci];
        int fi = target.function_index(e.name);
        if (fi < 0) throw ParseError(e.loc, "contract '" + e.contract + "' has no function '" + e.name + "'");
        const FunctionDecl& callee = target.functions[fi];
        if (callee.kind != FunctionKind::Ordinary || !callee.is_external_entry())
          throw ParseError(e.loc, "'" + e.contract + "." + e.name + "' is not callable from outside its contract");
        e.ref = RefKind::Function;
        e.target = ci;
        e.slot = fi;
        check_args(e, callee);
        return set(e, return_type(callee));
      }
      case ExprKind::LowLevelCall:
        require_type(e.kids[0], value_of(e.kids[0]), kAddr, "call target");
        require_type(e.kids[1], value_of(e.kids[1]), kUint, "call value");
        return set(e, kBool);
    }
    return std::nullopt;
  }
};

}  // namespace detail

inline SourceUnit resolve(SourceUnit unit) {
  detail::Resolver(unit).run();
  return unit;
}

}  // namespace txbasis
