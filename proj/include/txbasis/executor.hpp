#pragma once

// Deterministic interpreter for MiniSol dapps. Each top-level step is one
// transaction; a revert unwinds to the transaction boundary and restores the
// pre-transaction world. Every executed graph node is appended to the
// transaction's trace, so traces are whole transaction paths of the Tcfg.

#include <optional>
#include <string>
#include <vector>

#include "txbasis/tcfg.hpp"
#include "txbasis/testcase.hpp"
#include "txbasis/wtp.hpp"
#include "txbasis/world.hpp"

namespace txbasis {

class Executor {
 public:
  Executor(const DappModel& model, const Tcfg& g, TestCase tc, size_t statement_limit = 100000)
      : model_(model), g_(g), tc_(std::move(tc)), limit_(statement_limit) {
    std::vector<AccountRole> roles = model.accounts;
    if (tc_.balances) {
      for (const auto& r : *tc_.balances) {
        int i = model.account_index(r.name);
        if (i < 0) throw ExecutionError("test case sets a balance for unknown account '" + r.name + "'");
        roles[i].balance = r.balance;
      }
    }
    world_ = WorldState::initial(model, roles);
    for (const auto& a : tc_.agents)
      if (model.account_index(a.account) < 0)
        throw ExecutionError("agent script for unknown account '" + a.account + "'");
  }

  const WorldState& world() const { return world_; }
  const std::vector<TxRecord>& records() const { return records_; }
  size_t next_step() const { return records_.size(); }
  bool done() const { return records_.size() == tc_.steps.size(); }

  /// Executes the next step and returns its record.
  const TxRecord& step() {
    if (done()) throw ExecutionError("no steps left");
    records_.push_back(run_step(records_.size()));
    return records_.back();
  }

  const std::vector<TxRecord>& run_all() {
    while (!done()) step();
    return records_;
  }

  /// Read-only call of a view/pure function against the current world;
  /// none when the call reverts.
  std::optional<TypedValue> view_call(const std::string& contract, const std::string& function,
                                      const std::vector<TypedValue>& args) {
    int ci = model_.contract_index(contract);
    if (ci < 0) throw ExecutionError("unknown contract '" + contract + "'");
    const ContractModel& cm = model_.contracts[ci];
    const FunctionSig* sig = cm.find_view(function);
    if (!sig) throw ExecutionError("'" + contract + "." + function + "' is not a view function");
    if (!world_.contracts[ci].deployed) throw ExecutionError("call to undeployed contract '" + contract + "'");
    if (args.size() != sig->params.size()) throw ExecutionError("wrong number of arguments for '" + function + "'");
    WorldState saved = world_;
    std::vector<NodeId> scratch;
    std::vector<std::string> scratch_logs;
    auto* t = trace_;
    auto* l = logs_;
    const size_t executed = executed_;
    trace_ = &scratch;
    logs_ = &scratch_logs;
    executed_ = 0;
    std::optional<TypedValue> out;
    try {
      std::vector<U256> vals;
      for (const auto& a : args) vals.push_back(a.value);
      U256 v = call_function(ci, sig->index, vals, 0, 0);
      out = TypedValue{sig->returns.empty() ? BaseType::Uint : sig->returns[0], v};
    } catch (const RevertSignal&) {
    }
    trace_ = t;
    logs_ = l;
    executed_ = executed;
    world_ = std::move(saved);
    return out;
  }

 private:
  struct RevertSignal {};
  struct ReturnSignal {};

  struct Frame {
    int contract;
    int fn;  // graph function index
    std::vector<U256> locals;
    U256 sender;
    U256 value;
    std::optional<U256> ret;
  };

  struct LValue {
    enum class Kind { Local, Scalar, ArrayElem, MapEntry } kind;
    int slot;
    U256 key;
  };

  const DappModel& model_;
  const Tcfg& g_;
  TestCase tc_;
  size_t limit_;
  WorldState world_;
  std::vector<TxRecord> records_;
  std::vector<NodeId>* trace_ = nullptr;
  std::vector<std::string>* logs_ = nullptr;
  size_t executed_ = 0;
  size_t now_ = 0;
  int agent_depth_ = 0;
  bool overflow_ = false;

  bool checked() const { return g_.options().arith == ArithMode::Checked; }

  // ---- arguments ---------------------------------------------------------

  U256 resolve_arg(const ArgSpec& a, BaseType want, size_t at) {
    switch (a.kind) {
      case ArgSpec::Kind::Number:
        if (want == BaseType::Bool) throw ExecutionError("number given for a bool parameter");
        return a.number;
      case ArgSpec::Kind::Bool:
        if (want != BaseType::Bool) throw ExecutionError("bool given for a non-bool parameter");
        return a.boolean ? 1 : 0;
      case ArgSpec::Kind::Name: {
        if (want != BaseType::Address) throw ExecutionError("name '" + a.name + "' given for a non-address parameter");
        auto addr = address_of(model_, a.name);
        if (!addr) throw ExecutionError("unknown account or contract '" + a.name + "'");
        return *addr;
      }
      case ArgSpec::Kind::ReturnOf: {
        if (a.step < 0 || static_cast<size_t>(a.step) >= at) throw ExecutionError("reference to a step that has not run");
        const TxRecord& r = records_[a.step];
        if (r.returns.empty()) throw ExecutionError("step " + std::to_string(a.step) + " returned nothing");
        return r.returns[0].value;
      }
      case ArgSpec::Kind::LogOf: {
        if (a.step < 0 || static_cast<size_t>(a.step) >= at) throw ExecutionError("reference to a step that has not run");
        const TxRecord& r = records_[a.step];
        if (a.index < 0 || static_cast<size_t>(a.index) >= r.logs.size())
          throw ExecutionError("step " + std::to_string(a.step) + " has no log " + std::to_string(a.index));
        const std::string& s = r.logs[a.index];
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
          throw ExecutionError("log '" + s + "' is not a number");
        return U256(s);
      }
      case ArgSpec::Kind::View: {
        int ci = model_.contract_index(a.contract);
        const FunctionSig* sig = ci < 0 ? nullptr : model_.contracts[ci].find_view(a.function);
        if (!sig) throw ExecutionError("'" + a.contract + "." + a.function + "' is not a view function");
        auto args = resolve_args(a.args, sig->params, at);
        auto v = view_call(a.contract, a.function, args);
        if (!v) throw ExecutionError("view call '" + a.contract + "." + a.function + "' reverted");
        return v->value;
      }
    }
    return 0;
  }

  std::vector<TypedValue> resolve_args(const std::vector<ArgSpec>& specs, const std::vector<Param>& params,
                                       size_t at) {
    if (specs.size() != params.size())
      throw ExecutionError("expected " + std::to_string(params.size()) + " arguments, got " +
                           std::to_string(specs.size()));
    std::vector<TypedValue> out;
    for (size_t i = 0; i < specs.size(); ++i) out.push_back({params[i].type, resolve_arg(specs[i], params[i].type, at)});
    return out;
  }

  // ---- transactions ------------------------------------------------------

  TxRecord run_step(size_t i) {
    const TestStep& s = tc_.steps[i];
    int ai = model_.account_index(s.account);
    if (ai < 0) throw ExecutionError("unknown account '" + s.account + "'");
    int ci = model_.contract_index(s.contract);
    if (ci < 0) throw ExecutionError("unknown contract '" + s.contract + "'");
    const ContractModel& cm = model_.contracts[ci];
    const ContractDecl& cd = model_.unit.contracts[ci];
    const FunctionSig* sig = nullptr;
    bool ctor = s.function == "constructor";
    if (ctor) sig = cm.constructor ? &*cm.constructor : nullptr;
    else if (s.function == "fallback") {
      if (!cm.fallback) throw ExecutionError("contract '" + s.contract + "' has no fallback");
      sig = &*cm.fallback;
    } else {
      sig = cm.find_entry(s.function);
      if (!sig) {
        if (cm.find_view(s.function)) throw ExecutionError("view function '" + s.function + "' is not a transaction");
        throw ExecutionError("'" + s.contract + "." + s.function + "' is not a transaction entry");
      }
    }
    ContractState& cs = world_.contracts[ci];
    if (ctor && cs.deployed) throw ExecutionError("contract '" + s.contract + "' is already deployed");
    if (!ctor && !cs.deployed) throw ExecutionError("call to undeployed contract '" + s.contract + "'");

    TxRecord r;
    r.account = s.account;
    r.contract = s.contract;
    r.function = s.function;
    r.value = s.value;
    static const std::vector<Param> no_params;
    r.inputs = resolve_args(s.args, sig ? sig->params : no_params, i);
    if (s.value > 0 && !(sig && sig->payable()))
      throw ExecutionError("value sent to non-payable '" + s.contract + "." + s.function + "'");
    if (world_.balances[ai] < s.value) throw ExecutionError("account '" + s.account + "' cannot afford the value");

    WorldState snapshot = world_;
    trace_ = &r.trace;
    logs_ = &r.logs;
    now_ = i;
    executed_ = 0;
    agent_depth_ = 0;
    try {
      world_.balances[ai] -= s.value;
      world_.contracts[ci].ether += s.value;
      if (ctor) world_.contracts[ci].deployed = true;
      if (sig) {
        std::vector<U256> vals;
        for (const auto& v : r.inputs) vals.push_back(v.value);
        U256 ret = call_function(ci, sig->index, vals, AddressBook::account(ai), s.value);
        const FunctionDecl& fd = cd.functions[sig->index];
        if (!fd.returns.empty()) r.returns.push_back({fd.returns[0], ret});
      }
    } catch (const RevertSignal&) {
      world_ = std::move(snapshot);
      r.outcome = Outcome::Revert;
      r.logs.clear();
      r.returns.clear();
    }
    trace_ = nullptr;
    logs_ = nullptr;
    return r;
  }

  U256 call_function(int contract, int decl, const std::vector<U256>& args, const U256& sender, const U256& value) {
    const FunctionDecl& fd = model_.unit.contracts[contract].functions[decl];
    const int fn = g_.function_index(contract, decl);
    const FunctionGraph& fg = g_.function(fn);
    Frame f{contract, fn, std::vector<U256>(fd.local_types.size(), 0), sender, value, std::nullopt};
    for (size_t i = 0; i < args.size(); ++i) f.locals[i] = args[i];
    const bool saved_overflow = overflow_;
    trace_->push_back(fg.entry);
    try {
      exec_body(fd.body, f);
    } catch (const ReturnSignal&) {
    } catch (const RevertSignal&) {
      if (!fg.revert) throw InvariantViolation("function '" + fg.name + "' reverted but has no revert node");
      trace_->push_back(*fg.revert);
      throw;
    }
    trace_->push_back(fg.exit);
    overflow_ = saved_overflow;
    return f.ret.value_or(0);
  }

  // ---- unknown external code ---------------------------------------------

  U256 low_level_call(Frame& f, const Expr& e, const U256& target, const U256& amount) {
    const CallPair& cp = g_.call_pair(e.id);
    const FunctionGraph& ext = g_.function(*g_.ext_function());
    trace_->push_back(cp.call);
    trace_->push_back(ext.entry);
    trace_->push_back(g_.dispatcher());
    ContractState& self = world_.contracts[f.contract];
    if (self.ether < amount) {  // the call fails before any code runs
      trace_->push_back(ext.exit);
      trace_->push_back(cp.ret);
      return 0;
    }
    WorldState snapshot = world_;
    size_t log_mark = logs_->size();
    const bool saved_overflow = overflow_;
    try {
      self.ether -= amount;
      world_.ether_at(target) += amount;
      run_agent(target);
    } catch (const RevertSignal&) {
      if (g_.options().lowlevel == LowLevelRevert::Cascade) throw;
      world_ = std::move(snapshot);
      logs_->resize(log_mark);
      overflow_ = saved_overflow;  // an overflow that reverted the callee is not the caller's
      trace_->push_back(cp.ret);
      return 0;
    }
    trace_->push_back(cp.ret);
    return 1;
  }

  const AgentScript* agent_for(const U256& addr) const {
    auto ai = AddressBook::account_of(addr, model_.accounts.size());
    if (!ai) return nullptr;
    for (const auto& a : tc_.agents)
      if (a.account == model_.accounts[*ai].name) return &a;
    return nullptr;
  }

  // Runs the agent's code: dispatch loop through public functions, then
  // exit or revert. Nested invocations beyond the depth bound return at once.
  void run_agent(const U256& addr) {
    const FunctionGraph& ext = g_.function(*g_.ext_function());
    const AgentScript* script = agent_for(addr);
    if (!script || agent_depth_ >= script->depth) {
      trace_->push_back(ext.exit);
      return;
    }
    struct DepthGuard {
      int& d;
      explicit DepthGuard(int& x) : d(x) { ++d; }
      ~DepthGuard() { --d; }
    } guard(agent_depth_);
    for (const AgentAction& act : script->actions) {
      int ci = model_.contract_index(act.contract);
      const FunctionSig* sig = ci < 0 ? nullptr : model_.contracts[ci].find_entry(act.function);
      if (!sig) throw ExecutionError("agent action '" + act.contract + "." + act.function + "' is not a public entry");
      if (!world_.contracts[ci].deployed) throw ExecutionError("agent calls undeployed contract '" + act.contract + "'");
      if (act.value > 0 && !sig->payable()) throw ExecutionError("agent sends value to non-payable '" + act.function + "'");
      U256& purse = world_.ether_at(addr);
      if (purse < act.value) throw ExecutionError("agent '" + script->account + "' cannot afford the value");
      auto args = resolve_args(act.args, sig->params, records_.size());
      std::vector<U256> vals;
      for (const auto& v : args) vals.push_back(v.value);
      const CallPair& dp = g_.dispatch_pair(g_.function_index(ci, sig->index));
      trace_->push_back(dp.call);
      try {
        purse -= act.value;
        world_.contracts[ci].ether += act.value;
        call_function(ci, sig->index, vals, addr, act.value);
      } catch (const RevertSignal&) {
        if (!ext.revert) throw InvariantViolation("ext reverted but has no revert node");
        trace_->push_back(*ext.revert);
        throw;
      }
      trace_->push_back(dp.ret);
      trace_->push_back(g_.dispatcher());
    }
    if (script->final == AgentFinal::Revert) {
      if (g_.options().lowlevel == LowLevelRevert::Cascade)
        throw ExecutionError("agent revert is only expressible in return-false mode");
      trace_->push_back(*ext.revert);
      throw RevertSignal{};
    }
    trace_->push_back(ext.exit);
  }

  // ---- statements --------------------------------------------------------

  void exec_body(const std::vector<Stmt>& body, Frame& f) {
    for (const auto& s : body) exec(s, f);
  }

  // Appends the statement's node; a pending overflow reverts after it.
  void emit(const Stmt& s) {
    auto n = g_.stmt_node(s.id);
    if (n) trace_->push_back(*n);
    if (overflow_) {
      if (!n || g_.node(*n).kind != NodeKind::Pred)
        throw InvariantViolation("overflow at line " + std::to_string(s.loc.line) + " has no revert branch");
      throw RevertSignal{};
    }
  }

  bool condition(const Stmt& s, Frame& f) {
    overflow_ = false;
    U256 c = eval(s.exprs[0], f);
    emit(s);
    return c != 0;
  }

  void exec(const Stmt& s, Frame& f) {
    if (++executed_ > limit_) throw ExecutionError("statement limit exceeded");
    overflow_ = false;
    switch (s.kind) {
      case StmtKind::Block:
        exec_body(s.body, f);
        return;
      case StmtKind::VarDecl: {
        U256 v = s.exprs.empty() ? U256(0) : eval(s.exprs[0], f);
        emit(s);
        f.locals[s.slot] = v;
        return;
      }
      case StmtKind::Assign: {
        LValue lv = lvalue(s.exprs[0], f);
        U256 rhs = eval(s.exprs[1], f);
        U256 v = rhs;
        switch (s.assign) {
          case AssignOp::Set: break;
          case AssignOp::Add: v = arith(BinOp::Add, read(lv, f), rhs); break;
          case AssignOp::Sub: v = arith(BinOp::Sub, read(lv, f), rhs); break;
          case AssignOp::Mul: v = arith(BinOp::Mul, read(lv, f), rhs); break;
        }
        emit(s);
        write(lv, f, v);
        return;
      }
      case StmtKind::IncDec: {
        LValue lv = lvalue(s.exprs[0], f);
        U256 v = arith(s.increment ? BinOp::Add : BinOp::Sub, read(lv, f), 1);
        emit(s);
        write(lv, f, v);
        return;
      }
      case StmtKind::ExprStmt:
        eval(s.exprs[0], f);
        emit(s);
        return;
      case StmtKind::Push: {
        U256 v = eval(s.exprs[1], f);
        emit(s);
        world_.contracts[f.contract].vars[s.exprs[0].slot].array.push_back(v);
        return;
      }
      case StmtKind::Transfer: {
        U256 to = eval(s.exprs[0], f);
        U256 amount = eval(s.exprs[1], f);
        emit(s);
        ContractState& self = world_.contracts[f.contract];
        if (self.ether < amount) throw RevertSignal{};
        self.ether -= amount;
        world_.ether_at(to) += amount;
        return;
      }
      case StmtKind::Return: {
        std::optional<U256> v;
        if (!s.exprs.empty()) v = eval(s.exprs[0], f);
        emit(s);
        f.ret = v;
        throw ReturnSignal{};
      }
      case StmtKind::Require: {
        if (!condition(s, f)) throw RevertSignal{};
        return;
      }
      case StmtKind::Revert:
        throw RevertSignal{};
      case StmtKind::Log:
        emit(s);
        logs_->push_back(s.text);
        return;
      case StmtKind::If:
        if (condition(s, f)) exec_body(s.body, f);
        else if (s.has_else) exec_body(s.else_body, f);
        return;
      case StmtKind::While:
        while (condition(s, f)) {
          exec_body(s.body, f);
          if (++executed_ > limit_) throw ExecutionError("statement limit exceeded");
        }
        return;
      case StmtKind::For:
        exec(s.body[0], f);
        while (condition(s, f)) {
          exec(s.body[2], f);
          exec(s.body[1], f);
          if (++executed_ > limit_) throw ExecutionError("statement limit exceeded");
        }
        return;
    }
  }

  // ---- expressions -------------------------------------------------------

  StorageVar& storage(const Frame& f, int slot) { return world_.contracts[f.contract].vars[slot]; }

  LValue lvalue(const Expr& e, Frame& f) {
    if (e.kind == ExprKind::Ident) {
      if (e.ref == RefKind::StateVar) return {LValue::Kind::Scalar, e.slot, 0};
      return {LValue::Kind::Local, e.slot, 0};
    }
    if (e.kind == ExprKind::Index) {
      const Expr& base = e.kids[0];
      U256 key = eval(e.kids[1], f);
      if (base.type.shape == Type::Shape::Mapping) return {LValue::Kind::MapEntry, base.slot, key};
      return {LValue::Kind::ArrayElem, base.slot, key};
    }
    throw InvariantViolation("expression is not assignable");
  }

  U256 read(const LValue& lv, Frame& f) {
    switch (lv.kind) {
      case LValue::Kind::Local: return f.locals[lv.slot];
      case LValue::Kind::Scalar: return storage(f, lv.slot).scalar;
      case LValue::Kind::ArrayElem: {
        const auto& a = storage(f, lv.slot).array;
        return lv.key < a.size() ? a[static_cast<size_t>(lv.key)] : U256(0);
      }
      case LValue::Kind::MapEntry: {
        const auto& m = storage(f, lv.slot).map;
        auto it = m.find(lv.key);
        return it == m.end() ? U256(0) : it->second;
      }
    }
    return 0;
  }

  void write(const LValue& lv, Frame& f, const U256& v) {
    switch (lv.kind) {
      case LValue::Kind::Local: f.locals[lv.slot] = v; return;
      case LValue::Kind::Scalar: storage(f, lv.slot).scalar = v; return;
      case LValue::Kind::ArrayElem: {
        auto& a = storage(f, lv.slot).array;
        if (lv.key < a.size()) a[static_cast<size_t>(lv.key)] = v;  // out of range: no effect
        return;
      }
      case LValue::Kind::MapEntry: {
        auto& m = storage(f, lv.slot).map;
        if (v == 0) m.erase(lv.key);
        else m[lv.key] = v;
        return;
      }
    }
  }

  U256 arith(BinOp op, const U256& a, const U256& b) {
    switch (op) {
      case BinOp::Add: {
        U256 r = a + b;
        if (r < a && checked()) overflow_ = true;
        return r;
      }
      case BinOp::Sub:
        if (b > a && checked()) overflow_ = true;
        return a - b;
      case BinOp::Mul: {
        U256 r = a * b;
        if (checked() && a != 0 && r / a != b) overflow_ = true;
        return r;
      }
      case BinOp::Div:
      case BinOp::Mod:
        if (b == 0) {
          if (checked()) overflow_ = true;
          return 0;
        }
        return op == BinOp::Div ? a / b : a % b;
      default:
        throw InvariantViolation("not an arithmetic operator");
    }
  }

  U256 eval(const Expr& e, Frame& f) {
    switch (e.kind) {
      case ExprKind::Number: return e.number;
      case ExprKind::BoolLit: return e.boolean ? 1 : 0;
      case ExprKind::Ident:
        switch (e.ref) {
          case RefKind::StateVar: return storage(f, e.slot).scalar;
          case RefKind::Param:
          case RefKind::Local: return f.locals[e.slot];
          case RefKind::Contract: return AddressBook::contract(e.target);
          default: throw InvariantViolation("identifier '" + e.name + "' has no value");
        }
      case ExprKind::MsgSender: return f.sender;
      case ExprKind::MsgValue: return f.value;
      case ExprKind::Now: return U256(now_);
      case ExprKind::This: return AddressBook::contract(f.contract);
      case ExprKind::AddressCast: return eval(e.kids[0], f);
      case ExprKind::Binary: {
        U256 a = eval(e.kids[0], f);
        U256 b = eval(e.kids[1], f);
        switch (e.op) {
          case BinOp::Lt: return a < b ? 1 : 0;
          case BinOp::Le: return a <= b ? 1 : 0;
          case BinOp::Gt: return a > b ? 1 : 0;
          case BinOp::Ge: return a >= b ? 1 : 0;
          case BinOp::Eq: return a == b ? 1 : 0;
          case BinOp::Ne: return a != b ? 1 : 0;
          case BinOp::And: return (a != 0 && b != 0) ? 1 : 0;
          case BinOp::Or: return (a != 0 || b != 0) ? 1 : 0;
          default: return arith(e.op, a, b);
        }
      }
      case ExprKind::Not: return eval(e.kids[0], f) == 0 ? 1 : 0;
      case ExprKind::Index: {
        LValue lv = lvalue(e, f);
        return read(lv, f);
      }
      case ExprKind::Length: return U256(storage(f, e.kids[0].slot).array.size());
      case ExprKind::Call: {
        std::vector<U256> args;
        for (const auto& k : e.kids) args.push_back(eval(k, f));
        const CallPair& cp = g_.call_pair(e.id);
        trace_->push_back(cp.call);
        U256 r = call_function(f.contract, e.slot, args, f.sender, f.value);
        trace_->push_back(cp.ret);
        return r;
      }
      case ExprKind::ExternalCall: {
        std::vector<U256> args;
        for (const auto& k : e.kids) args.push_back(eval(k, f));
        if (!world_.contracts[e.target].deployed)
          throw ExecutionError("call to undeployed contract '" + e.contract + "'");
        const CallPair& cp = g_.call_pair(e.id);
        trace_->push_back(cp.call);
        U256 r = call_function(e.target, e.slot, args, AddressBook::contract(f.contract), 0);
        trace_->push_back(cp.ret);
        return r;
      }
      case ExprKind::LowLevelCall: {
        U256 target = eval(e.kids[0], f);
        U256 amount = eval(e.kids[1], f);
        return low_level_call(f, e, target, amount);
      }
    }
    return 0;
  }
};

/// Runs a whole test case from a clear state.
inline std::vector<TxRecord> execute_test_case(const DappModel& model, const Tcfg& g, const TestCase& t) {
  Executor ex(model, g, t);
  return ex.run_all();
}

/// A record's trace as a validated whole transaction path over the entry's
/// reachable edges. Throws InvariantViolation when the trace is not a WTP or
/// its terminal disagrees with the outcome.
inline WholeTxPath project_trace(const Tcfg& g, const TxRecord& r, const ReachableMetrics& m) {
  if (r.trace.empty()) throw InvariantViolation("empty trace for " + r.contract + "." + r.function);
  WtpCheck c = validate_wtp(g, r.trace);
  if (!c)
    throw InvariantViolation("trace of " + r.contract + "." + r.function + " is not a whole-transaction path at " +
                             std::to_string(c.index) + ": " + c.reason);
  if (c.terminal != terminal_for(r.outcome))
    throw InvariantViolation("trace terminal disagrees with outcome of " + r.contract + "." + r.function);
  WholeTxPath p;
  p.vector = path_vector(g, r.trace, m);
  p.nodes = r.trace;
  p.terminal = c.terminal;
  return p;
}

}  // namespace txbasis
