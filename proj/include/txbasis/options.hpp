#pragma once

#include <stdexcept>
#include <string>

namespace txbasis {

/// How a revert inside a low-level call's callee reaches the caller.
enum class LowLevelRevert {
  Cascade,      // cascading-revert edge Revert_ext -> Revert_caller
  ReturnFalse,  // callee failure surfaces as `false` at the return site
};

enum class ArithMode { Wrap, Checked };

enum class MatchMode { Exact, EdgeVector };

struct GraphOptions {
  LowLevelRevert lowlevel = LowLevelRevert::Cascade;
  ArithMode arith = ArithMode::Wrap;
};

/// Per-search traversal limits for path generation.
struct SearchBudget {
  int call_edge = 2;  // traversals of any single call edge
  int back_edge = 2;  // traversals of any single loop back edge
};

inline const char* to_string(LowLevelRevert m) {
  return m == LowLevelRevert::Cascade ? "cascade" : "return-false";
}
inline const char* to_string(ArithMode m) { return m == ArithMode::Wrap ? "wrap" : "checked"; }
inline const char* to_string(MatchMode m) { return m == MatchMode::Exact ? "exact" : "edge-vector"; }

inline LowLevelRevert parse_lowlevel_revert(const std::string& s) {
  if (s == "cascade") return LowLevelRevert::Cascade;
  if (s == "return-false") return LowLevelRevert::ReturnFalse;
  throw std::invalid_argument("unknown lowlevel-revert mode '" + s + "'");
}
inline ArithMode parse_arith_mode(const std::string& s) {
  if (s == "wrap") return ArithMode::Wrap;
  if (s == "checked") return ArithMode::Checked;
  throw std::invalid_argument("unknown arith mode '" + s + "'");
}
inline MatchMode parse_match_mode(const std::string& s) {
  if (s == "exact") return MatchMode::Exact;
  if (s == "edge-vector") return MatchMode::EdgeVector;
  throw std::invalid_argument("unknown match mode '" + s + "'");
}

}  // namespace txbasis
