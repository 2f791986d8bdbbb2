#pragma once

// Covers relation between executed transaction windows and requirements,
// requirement coverage reports and statement coverage.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "txbasis/executor.hpp"
#include "txbasis/interactions.hpp"
#include "txbasis/options.hpp"

namespace txbasis {

/// One executed test case: its name and the records it produced.
struct ExecutedTest {
  std::string name;
  std::vector<TxRecord> records;
};

namespace detail {

inline bool record_matches(const Tcfg& g, const TxRecord& rec, const TxTuple& t, const BasisPathSet& basis,
                           int path, MatchMode mode) {
  if (rec.account != t.account || rec.contract != t.contract || rec.function != t.function || rec.outcome != t.outcome)
    return false;
  const WholeTxPath& want = basis.paths.at(path);
  if (mode == MatchMode::Exact) return rec.trace == want.nodes;
  if (rec.trace.empty() || rec.trace.front() != basis.entry) return false;
  try {
    return path_vector(g, rec.trace, basis.metrics) == want.vector;
  } catch (const GraphError&) {
    return false;
  }
}

}  // namespace detail

/// Smallest window offset i such that records[i..i+k-1] match the
/// requirement slot by slot.
inline std::optional<size_t> requirement_covered(const Tcfg& g, const RequirementSet& rs,
                                                 const CoverageRequirement& r, const std::vector<TxRecord>& records,
                                                 const BasisLibrary& bases, MatchMode mode = MatchMode::Exact) {
  const size_t k = r.tuples.size();
  if (records.size() < k) return std::nullopt;
  for (size_t i = 0; i + k <= records.size(); ++i) {
    bool ok = true;
    for (size_t j = 0; j < k && ok; ++j) {
      const TxTuple& t = rs.u.at(r.tuples[j]).tuple;
      const BasisPathSet& b = bases.at(t.qualified());
      if (r.paths[j] < 0 || static_cast<size_t>(r.paths[j]) >= b.paths.size())
        throw std::out_of_range("requirement refers to unknown basis path " + std::to_string(r.paths[j]) + " of " +
                                t.qualified());
      ok = detail::record_matches(g, records[i + j], t, b, r.paths[j], mode);
    }
    if (ok) return i;
  }
  return std::nullopt;
}

enum class ReqState { Covered, Uncovered, Infeasible };

inline const char* to_string(ReqState s) {
  switch (s) {
    case ReqState::Covered: return "covered";
    case ReqState::Uncovered: return "uncovered";
    case ReqState::Infeasible: return "infeasible";
  }
  return "?";
}

struct RequirementStatus {
  std::string id;
  ReqState state = ReqState::Uncovered;
  int test = -1;  // covering test index
  size_t offset = 0;
};

struct StatementCoverage {
  size_t visited = 0;
  size_t total = 0;
  std::vector<NodeId> unvisited;

  double percent() const { return total ? 100.0 * static_cast<double>(visited) / static_cast<double>(total) : 0.0; }
};

struct CoverageReport {
  int k = 0;
  std::vector<RequirementStatus> statuses;
  std::vector<std::string> contradicted;  // annotated infeasible yet covered
  std::optional<StatementCoverage> statements;

  size_t total() const { return statuses.size(); }
  size_t count(ReqState s) const {
    size_t n = 0;
    for (const auto& st : statuses) n += st.state == s;
    return n;
  }
  size_t covered() const { return count(ReqState::Covered); }
  size_t infeasible() const { return count(ReqState::Infeasible); }
  double raw_percent() const { return total() ? 100.0 * static_cast<double>(covered()) / static_cast<double>(total()) : 0.0; }
  double adjusted_percent() const {
    size_t feasible = total() - infeasible();
    return feasible ? 100.0 * static_cast<double>(covered()) / static_cast<double>(feasible) : 0.0;
  }
};

/// Marks every requirement covered by some test of the suite. Annotated
/// requirements that no test covers are infeasible; a covered annotated
/// requirement counts as covered and is listed as a contradiction.
inline CoverageReport measure_coverage(const Tcfg& g, const RequirementSet& rs, const std::vector<ExecutedTest>& suite,
                                       const BasisLibrary& bases, const InfeasibleAnnotations& infeasible = {},
                                       MatchMode mode = MatchMode::Exact) {
  CoverageReport rep;
  rep.k = rs.k;
  std::set<std::string> ids;
  for (const auto& r : rs.requirements) {
    RequirementStatus st;
    st.id = rs.id(r);
    ids.insert(st.id);
    for (size_t t = 0; t < suite.size() && st.test < 0; ++t) {
      if (auto off = requirement_covered(g, rs, r, suite[t].records, bases, mode)) {
        st.state = ReqState::Covered;
        st.test = static_cast<int>(t);
        st.offset = *off;
      }
    }
    if (infeasible.contains(st.id)) {
      if (st.state == ReqState::Covered) rep.contradicted.push_back(st.id);
      else st.state = ReqState::Infeasible;
    }
    rep.statuses.push_back(std::move(st));
  }
  for (const auto& [id, why] : infeasible.reasons)
    if (!ids.count(id)) throw std::invalid_argument("infeasibility annotation names unknown requirement '" + id + "'");
  return rep;
}

/// Expr and pred nodes that count as statements: outside `ext`, in
/// functions realizably reachable from some transaction entry.
inline std::vector<NodeId> statement_nodes(const Tcfg& g) {
  std::set<NodeId> live;
  for (NodeId n : g.tx_entries()) {
    auto m = reachable_metrics(g, n);
    live.insert(m.nodes.begin(), m.nodes.end());
  }
  std::vector<NodeId> out;
  for (NodeId n : live) {
    const Node& node = g.node(n);
    if ((node.kind == NodeKind::Expr || node.kind == NodeKind::Pred) && !g.function(node.function).is_ext)
      out.push_back(n);
  }
  return out;
}

inline StatementCoverage measure_statement_coverage(const Tcfg& g, const std::vector<ExecutedTest>& suite) {
  std::set<NodeId> seen;
  for (const auto& t : suite)
    for (const auto& r : t.records) seen.insert(r.trace.begin(), r.trace.end());
  StatementCoverage sc;
  for (NodeId n : statement_nodes(g)) {
    ++sc.total;
    if (seen.count(n)) ++sc.visited;
    else sc.unvisited.push_back(n);
  }
  return sc;
}

}  // namespace txbasis
