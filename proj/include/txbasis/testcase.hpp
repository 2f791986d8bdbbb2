#pragma once

// Test-case inputs: initial balances, the transaction sequence and the
// scripted behaviour of external accounts reached through low-level calls.

#include <optional>
#include <string>
#include <vector>

#include "txbasis/ast.hpp"
#include "txbasis/interactions.hpp"
#include "txbasis/model.hpp"

namespace txbasis {

struct ArgSpec {
  enum class Kind {
    Number,    // uint literal
    Bool,      // bool literal
    Name,      // account role or contract name, as an address
    ReturnOf,  // return value of an earlier step
    LogOf,     // numeric log line of an earlier step
    View,      // result of a view call made just before this step
  };
  Kind kind = Kind::Number;
  U256 number = 0;
  bool boolean = false;
  std::string name;
  int step = -1;
  int index = 0;
  std::string contract;  // View
  std::string function;  // View
  std::vector<ArgSpec> args;

  static ArgSpec num(U256 v) {
    ArgSpec a;
    a.number = v;
    return a;
  }
  static ArgSpec flag(bool b) {
    ArgSpec a;
    a.kind = Kind::Bool;
    a.boolean = b;
    return a;
  }
  static ArgSpec addr(std::string n) {
    ArgSpec a;
    a.kind = Kind::Name;
    a.name = std::move(n);
    return a;
  }
  static ArgSpec return_of(int step) {
    ArgSpec a;
    a.kind = Kind::ReturnOf;
    a.step = step;
    return a;
  }
};

struct TestStep {
  std::string account;
  std::string contract;
  std::string function;  // "constructor" / "fallback" for the special entries
  U256 value = 0;
  std::vector<ArgSpec> args;
};

struct AgentAction {
  std::string contract;
  std::string function;
  U256 value = 0;
  std::vector<ArgSpec> args;
};

enum class AgentFinal { ReturnSuccess, Revert };

inline const char* to_string(AgentFinal f) { return f == AgentFinal::ReturnSuccess ? "return-success" : "revert"; }

struct AgentScript {
  std::string account;  // the address whose code the script stands for
  std::vector<AgentAction> actions;
  int depth = 1;  // nested invocations beyond this return at once
  AgentFinal final = AgentFinal::ReturnSuccess;
};

struct TestCase {
  std::string name;
  std::optional<std::vector<AccountRole>> balances;  // defaults to the model's roles
  std::vector<TestStep> steps;
  std::vector<AgentScript> agents;
};

struct TypedValue {
  BaseType type = BaseType::Uint;
  U256 value = 0;

  bool operator==(const TypedValue&) const = default;
};

struct TxRecord {
  std::string account;
  std::string contract;
  std::string function;
  U256 value = 0;
  Outcome outcome = Outcome::Success;
  std::vector<TypedValue> inputs;
  std::vector<TypedValue> returns;
  std::vector<std::string> logs;
  std::vector<NodeId> trace;

  bool operator==(const TxRecord&) const = default;
};

}  // namespace txbasis
