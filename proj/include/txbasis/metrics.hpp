#pragma once

// Subgraph reachable from a transaction entry and its cyclomatic number.
//
// Reachability only follows realizable paths: a return (or cascading revert)
// out of a callee is taken only back into a frame that actually called it.
// Plain forward reachability would leak from a shared helper's exit into
// every caller of that helper.

#include <algorithm>
#include <set>
#include <unordered_map>
#include <vector>

#include "txbasis/tcfg.hpp"

namespace txbasis {

struct ReachableMetrics {
  NodeId entry = -1;
  std::vector<NodeId> nodes;  // V', ascending
  std::vector<EdgeId> edges;  // E', ascending; position = vector coordinate
  int sinks = 0;              // terminal nodes of the entry frame without out-edges in E'
  long cyclomatic = 0;

  bool has_node(NodeId n) const { return std::binary_search(nodes.begin(), nodes.end(), n); }
  bool has_edge(EdgeId e) const { return std::binary_search(edges.begin(), edges.end(), e); }
  /// Coordinate of an edge in path vectors, or -1 outside E'.
  int coordinate(EdgeId e) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    return it != edges.end() && *it == e ? static_cast<int>(it - edges.begin()) : -1;
  }
};

namespace detail {

struct FrameSummary {
  std::set<NodeId> nodes;
  std::set<EdgeId> edges;
  std::set<int> callees;
  bool can_exit = false;
  bool can_revert = false;
};

// Same-level reachability for every function, iterated to a fixpoint on the
// callees' can-exit / can-revert flags.
inline std::vector<FrameSummary> frame_summaries(const Tcfg& g) {
  const size_t nf = g.functions().size();
  std::vector<FrameSummary> sum(nf);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t fi = 0; fi < nf; ++fi) {
      const FunctionGraph& f = g.function(static_cast<int>(fi));
      FrameSummary s;
      std::vector<NodeId> work{f.entry};
      s.nodes.insert(f.entry);
      auto reach = [&](EdgeId eid) {
        s.edges.insert(eid);
        NodeId to = g.edge(eid).to;
        if (s.nodes.insert(to).second) work.push_back(to);
      };
      while (!work.empty()) {
        NodeId n = work.back();
        work.pop_back();
        const Node& node = g.node(n);
        if (node.kind == NodeKind::CallSite) {
          const CallPair& pair = g.pair_of(n);
          const FunctionGraph& callee = g.function(pair.callee);
          for (EdgeId eid : g.out_edges(n)) s.edges.insert(eid);  // the call edge
          s.callees.insert(pair.callee);
          if (sum[pair.callee].can_exit) reach(*g.edge_between(callee.exit, pair.ret));
          if (sum[pair.callee].can_revert && callee.revert) {
            if (auto e = g.edge_between(*callee.revert, pair.ret)) reach(*e);
            else if (f.revert)
              if (auto c = g.edge_between(*callee.revert, *f.revert)) reach(*c);
          }
          continue;
        }
        if (node.kind == NodeKind::Exit || node.kind == NodeKind::Revert) continue;
        for (EdgeId eid : g.out_edges(n)) reach(eid);
      }
      s.can_exit = s.nodes.count(f.exit) > 0;
      s.can_revert = f.revert && s.nodes.count(*f.revert) > 0;
      if (s.can_exit != sum[fi].can_exit || s.can_revert != sum[fi].can_revert || s.nodes != sum[fi].nodes)
        changed = true;
      sum[fi] = std::move(s);
    }
  }
  return sum;
}

}  // namespace detail

/// V', E' and cyclomatic number for the transaction entry `n`.
///
/// With several terminal sinks (exit and revert of the entry frame, neither
/// leading anywhere) the count uses a virtual single exit, adding s - 1.
inline ReachableMetrics reachable_metrics(const Tcfg& g, NodeId n) {
  if (n < 0 || n >= static_cast<NodeId>(g.nodes().size()) || !g.node(n).tx_entry)
    throw GraphError("node " + std::to_string(n) + " is not a transaction entry");
  auto sum = detail::frame_summaries(g);
  std::set<NodeId> nodes;
  std::set<EdgeId> edges;
  std::set<int> seen{g.node(n).function};
  std::vector<int> work{g.node(n).function};
  while (!work.empty()) {
    int f = work.back();
    work.pop_back();
    nodes.insert(sum[f].nodes.begin(), sum[f].nodes.end());
    edges.insert(sum[f].edges.begin(), sum[f].edges.end());
    for (int c : sum[f].callees)
      if (seen.insert(c).second) work.push_back(c);
  }
  ReachableMetrics m;
  m.entry = n;
  m.nodes.assign(nodes.begin(), nodes.end());
  m.edges.assign(edges.begin(), edges.end());
  const FunctionGraph& top = g.function(g.node(n).function);
  std::vector<NodeId> terminals{top.exit};
  if (top.revert) terminals.push_back(*top.revert);
  for (NodeId t : terminals) {
    if (!nodes.count(t)) continue;
    bool out = false;
    for (EdgeId e : g.out_edges(t)) out = out || edges.count(e);
    if (!out) ++m.sinks;
  }
  m.cyclomatic = static_cast<long>(m.edges.size()) - static_cast<long>(m.nodes.size()) + 2 + std::max(0, m.sinks - 1);
  return m;
}

inline ReachableMetrics reachable_metrics(const Tcfg& g, const std::string& qualified_function) {
  int f = g.function_index(qualified_function);
  if (f < 0) throw GraphError("unknown function '" + qualified_function + "'");
  return reachable_metrics(g, g.function(f).entry);
}

}  // namespace txbasis
