#pragma once

// The application model: external account roles plus per-contract interface
// classification (state-changing entries, view entries, constructor,
// fallback, internal helpers).

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "txbasis/ast.hpp"

namespace txbasis {

struct FunctionSig {
  std::string name;
  std::vector<Param> params;
  std::vector<BaseType> returns;
  Visibility visibility = Visibility::Public;
  Mutability mutability = Mutability::StateChanging;
  FunctionKind kind = FunctionKind::Ordinary;
  int index = -1;  // position in the contract declaration

  bool payable() const { return mutability == Mutability::Payable; }
};

struct ContractModel {
  std::string name;
  std::vector<FunctionSig> state_changing;  // F_P
  std::vector<FunctionSig> views;           // F_V
  std::optional<FunctionSig> constructor;
  std::optional<FunctionSig> fallback;
  std::vector<FunctionSig> internal;
  U256 ether = 0;

  const FunctionSig* find_entry(const std::string& fn) const {
    for (const auto& f : state_changing)
      if (f.name == fn) return &f;
    return nullptr;
  }
  const FunctionSig* find_view(const std::string& fn) const {
    for (const auto& f : views)
      if (f.name == fn) return &f;
    return nullptr;
  }
};

struct AccountRole {
  std::string name;
  U256 balance = 0;
};

struct DappModel {
  std::vector<AccountRole> accounts;
  std::vector<ContractModel> contracts;
  SourceUnit unit;

  int account_index(const std::string& name) const {
    for (size_t i = 0; i < accounts.size(); ++i)
      if (accounts[i].name == name) return static_cast<int>(i);
    return -1;
  }
  int contract_index(const std::string& name) const {
    for (size_t i = 0; i < contracts.size(); ++i)
      if (contracts[i].name == name) return static_cast<int>(i);
    return -1;
  }
};

/// Parses "alice=100,bob=50" (balances in wei). A bare name gets balance 0.
inline std::vector<AccountRole> parse_accounts(const std::string& spec) {
  std::vector<AccountRole> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    AccountRole a;
    auto eq = item.find('=');
    a.name = item.substr(0, eq);
    if (eq != std::string::npos) {
      std::string digits = item.substr(eq + 1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ModelError("bad balance for account '" + a.name + "'");
      a.balance = U256(digits);
    }
    if (a.name.empty()) throw ModelError("empty account name");
    out.push_back(std::move(a));
  }
  return out;
}

namespace detail {

inline FunctionSig make_sig(const FunctionDecl& f, int index) {
  return FunctionSig{f.name, f.params, f.returns, f.visibility, f.mutability, f.kind, index};
}

inline bool expr_writes(const Expr& e, const ContractDecl& c, std::string& what) {
  if (e.kind == ExprKind::LowLevelCall) {
    what = "low-level call";
    return true;
  }
  if (e.kind == ExprKind::Call) {
    const FunctionDecl& callee = c.functions[e.slot];
    if (callee.mutability != Mutability::View && callee.mutability != Mutability::Pure) {
      what = "call to state-changing function '" + callee.name + "'";
      return true;
    }
  }
  if (e.kind == ExprKind::ExternalCall) {
    what = "external call to '" + e.contract + "." + e.name + "'";
    return true;
  }
  for (const auto& k : e.kids)
    if (expr_writes(k, c, what)) return true;
  return false;
}

inline bool is_state_target(const Expr& lhs) {
  if (lhs.kind == ExprKind::Ident) return lhs.ref == RefKind::StateVar;
  return lhs.kind == ExprKind::Index;  // only state arrays/mappings are indexable
}

inline bool stmt_writes(const std::vector<Stmt>& body, const ContractDecl& c, std::string& what) {
  for (const auto& s : body) {
    switch (s.kind) {
      case StmtKind::Assign:
      case StmtKind::IncDec:
        if (is_state_target(s.exprs[0])) {
          what = "state write";
          return true;
        }
        break;
      case StmtKind::Push:
        what = "state write";
        return true;
      case StmtKind::Transfer:
        what = "ether transfer";
        return true;
      default:
        break;
    }
    for (const auto& e : s.exprs)
      if (expr_writes(e, c, what)) return true;
    if (stmt_writes(s.body, c, what) || stmt_writes(s.else_body, c, what)) return true;
  }
  return false;
}

}  // namespace detail

/// Classifies every function of a resolved unit and attaches account roles.
inline DappModel build_dapp_model(SourceUnit unit, std::vector<AccountRole> accounts) {
  if (accounts.empty()) throw ModelError("at least one account role is required");
  std::set<std::string> names;
  for (const auto& a : accounts)
    if (!names.insert(a.name).second) throw ModelError("duplicate account role '" + a.name + "'");
  DappModel model;
  for (const auto& c : unit.contracts) {
    if (names.count(c.name)) throw ModelError("'" + c.name + "' is both an account role and a contract");
    ContractModel cm;
    cm.name = c.name;
    for (size_t i = 0; i < c.functions.size(); ++i) {
      const FunctionDecl& f = c.functions[i];
      FunctionSig sig = detail::make_sig(f, static_cast<int>(i));
      bool readonly = f.mutability == Mutability::View || f.mutability == Mutability::Pure;
      if (readonly) {
        std::string what;
        if (detail::stmt_writes(f.body, c, what))
          throw ModelError(std::string(to_string(f.mutability)) + " function '" + c.name + "." + f.name +
                           "' performs a " + what);
      }
      if (f.kind == FunctionKind::Constructor)
        cm.constructor = sig;
      else if (f.kind == FunctionKind::Fallback)
        cm.fallback = sig;
      else if (!f.is_external_entry())
        cm.internal.push_back(sig);
      else if (readonly)
        cm.views.push_back(sig);
      else
        cm.state_changing.push_back(sig);
    }
    model.contracts.push_back(std::move(cm));
  }
  model.accounts = std::move(accounts);
  model.unit = std::move(unit);
  return model;
}

}  // namespace txbasis
