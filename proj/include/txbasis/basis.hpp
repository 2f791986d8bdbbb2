#pragma once

// Basis path set generation: start from the baseline path, then repeatedly
// flip one decision to an unused alternative and complete minimally.

#include <algorithm>
#include <vector>

#include "txbasis/metrics.hpp"
#include "txbasis/path_search.hpp"
#include "txbasis/rational.hpp"
#include "txbasis/wtp.hpp"

namespace txbasis {

struct BasisPathSet {
  NodeId entry = -1;
  std::string function;  // qualified name of the entry's function
  std::vector<WholeTxPath> paths;
  long cyclomatic = 0;
  bool complete = false;
  ReachableMetrics metrics;

  std::vector<CountVector> vectors() const {
    std::vector<CountVector> out;
    for (const auto& p : paths) out.push_back(p.vector);
    return out;
  }
  size_t count(Terminal t) const {
    return static_cast<size_t>(std::count_if(paths.begin(), paths.end(), [&](const auto& p) { return p.terminal == t; }));
  }
};

namespace detail {

struct Candidate {
  std::vector<NodeId> prefix;  // ends at the alternative successor
};

// Alternatives at each position of `p`, in position order, targets
// ascending. With `unused_only`, edges already on some path are skipped.
inline std::vector<Candidate> flip_candidates(const Tcfg& g, const std::vector<NodeId>& p,
                                              const std::set<EdgeId>& used, bool unused_only) {
  std::vector<Candidate> out;
  for (size_t i = 0; i + 1 < p.size(); ++i) {
    std::vector<NodeId> targets;
    for (EdgeId eid : g.out_edges(p[i])) {
      const Edge& e = g.edge(eid);
      if (e.to == p[i + 1]) continue;
      if (unused_only && used.count(eid)) continue;
      targets.push_back(e.to);
    }
    std::sort(targets.begin(), targets.end());
    for (NodeId w : targets) {
      Candidate c;
      c.prefix.assign(p.begin(), p.begin() + static_cast<long>(i) + 1);
      c.prefix.push_back(w);
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace detail

/// Generates a basis path set for transaction entry `n`. Every admitted path
/// raises the rank of the set; `complete` is false when no further
/// independent path could be found within the budget.
inline BasisPathSet generate_wtpbs(const Tcfg& g, NodeId n, const SearchBudget& budget = {}) {
  BasisPathSet out;
  out.metrics = reachable_metrics(g, n);
  out.entry = n;
  out.function = g.function(g.node(n).function).name;
  out.cyclomatic = out.metrics.cyclomatic;
  RowSpace space(out.metrics.edges.size());
  std::set<EdgeId> used;
  std::set<std::vector<NodeId>> tried;

  auto admit = [&](std::vector<NodeId> nodes) {
    WholeTxPath p = make_wtp(g, std::move(nodes), out.metrics);
    if (!space.add(p.vector)) return false;
    for (size_t i = 0; i + 1 < p.nodes.size(); ++i) used.insert(*g.edge_between(p.nodes[i], p.nodes[i + 1]));
    out.paths.push_back(std::move(p));
    return true;
  };
  auto try_candidates = [&](const std::vector<detail::Candidate>& cands) {
    for (const auto& c : cands) {
      if (!tried.insert(c.prefix).second) continue;
      auto ctx = replay_prefix(g, c.prefix, budget);
      if (!ctx) continue;
      auto full = complete_from_prefix(g, c.prefix, *ctx, budget);
      if (full && admit(std::move(*full))) return true;
    }
    return false;
  };

  admit(baseline_path(g, n, budget));
  size_t current = 0;
  while (static_cast<long>(out.paths.size()) < out.cyclomatic) {
    bool found = try_candidates(detail::flip_candidates(g, out.paths[current].nodes, used, true));
    for (size_t j = 0; !found && j < out.paths.size(); ++j)
      if (j != current) found = try_candidates(detail::flip_candidates(g, out.paths[j].nodes, used, true));
    // Last resort: alternatives whose edge is already used elsewhere.
    for (size_t j = 0; !found && j < out.paths.size(); ++j)
      found = try_candidates(detail::flip_candidates(g, out.paths[j].nodes, used, false));
    if (!found) break;
    current = out.paths.size() - 1;
  }
  out.complete = static_cast<long>(out.paths.size()) == out.cyclomatic;
  return out;
}

inline std::vector<BasisPathSet> generate_all_wtpbs(const Tcfg& g, const SearchBudget& budget = {}) {
  std::vector<BasisPathSet> out;
  for (NodeId n : g.tx_entries()) out.push_back(generate_wtpbs(g, n, budget));
  return out;
}

inline bool span_contains(const BasisPathSet& basis, const WholeTxPath& p) {
  return span_contains(basis.vectors(), p.vector);
}

inline size_t vector_rank(const std::vector<WholeTxPath>& paths) {
  std::vector<CountVector> vs;
  for (const auto& p : paths) vs.push_back(p.vector);
  return vector_rank(vs);
}

}  // namespace txbasis
