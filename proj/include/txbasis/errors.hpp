#pragma once

#include <stdexcept>
#include <string>

namespace txbasis {

struct SourceLoc {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

inline std::string to_string(const SourceLoc& loc) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

/// Malformed or ill-typed MiniSol input. Carries the position of the first
/// offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(SourceLoc loc, const std::string& msg)
      : std::runtime_error(to_string(loc) + ": " + msg), loc_(loc) {}

  SourceLoc loc() const { return loc_; }

 private:
  SourceLoc loc_;
};

/// A well-parsed unit that violates a model-level rule (e.g. a view function
/// writing state).
class ModelError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class GraphError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad test input: unknown step reference, undeployed contract, arity.
class ExecutionError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when an internal consistency check fails (e.g. an interpreter trace
/// that is not a whole transaction path). Maps to CLI exit status 3.
class InvariantViolation : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace txbasis
