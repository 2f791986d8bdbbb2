#pragma once

// Budgeted best-first search for whole transaction paths. Paths are ranked
// by (number of pred-node visits, node sequence); the first terminal popped
// is the minimum under that order.

#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "txbasis/options.hpp"
#include "txbasis/tcfg.hpp"

namespace txbasis {

/// Search state: pending call sites plus traversal counters for budgeted
/// edges.
struct CallContext {
  std::vector<NodeId> stack;
  std::map<EdgeId, int> call_counts;
  std::map<EdgeId, int> back_counts;
  int preds = 0;

  bool operator==(const CallContext&) const = default;
};

namespace detail {

inline bool is_terminal(const Tcfg& g, NodeId n, const CallContext& ctx, int top_function) {
  const Node& node = g.node(n);
  return ctx.stack.empty() && node.function == top_function &&
         (node.kind == NodeKind::Exit || node.kind == NodeKind::Revert);
}

// Applies one step along `e`; false when the grammar or budget forbids it.
inline bool step(const Tcfg& g, const Edge& e, CallContext& ctx, const SearchBudget& budget) {
  switch (e.kind) {
    case EdgeKind::Flow:
    case EdgeKind::Revert:
      if (e.back_edge && ++ctx.back_counts[e.id] > budget.back_edge) return false;
      break;
    case EdgeKind::Call:
      if (++ctx.call_counts[e.id] > budget.call_edge) return false;
      ctx.stack.push_back(e.from);
      break;
    case EdgeKind::Return:
      if (ctx.stack.empty() || g.pair_of(ctx.stack.back()).ret != e.to) return false;
      ctx.stack.pop_back();
      break;
    case EdgeKind::CascadingRevert:
      if (ctx.stack.empty() || g.node(ctx.stack.back()).function != g.node(e.to).function) return false;
      ctx.stack.pop_back();
      break;
  }
  if (g.node(e.to).kind == NodeKind::Pred) ++ctx.preds;
  return true;
}

}  // namespace detail

/// Replays a path fragment from a transaction entry; none when the fragment
/// is not a legal, budget-respecting prefix.
inline std::optional<CallContext> replay_prefix(const Tcfg& g, const std::vector<NodeId>& prefix,
                                                const SearchBudget& budget = {}) {
  if (prefix.empty() || !g.node(prefix[0]).tx_entry) return std::nullopt;
  CallContext ctx;
  const int top = g.node(prefix[0]).function;
  for (size_t i = 0; i + 1 < prefix.size(); ++i) {
    if (detail::is_terminal(g, prefix[i], ctx, top)) return std::nullopt;
    auto e = g.edge_between(prefix[i], prefix[i + 1]);
    if (!e || !detail::step(g, g.edge(*e), ctx, budget)) return std::nullopt;
  }
  return ctx;
}

/// Minimal completion of `prefix` (whose replayed state is `ctx`) to a
/// terminal of the transaction frame.
inline std::optional<std::vector<NodeId>> complete_from_prefix(const Tcfg& g, const std::vector<NodeId>& prefix,
                                                               const CallContext& ctx,
                                                               const SearchBudget& budget = {},
                                                               size_t max_expansions = 2'000'000) {
  if (prefix.empty()) return std::nullopt;
  const int top = g.node(prefix[0]).function;
  struct Item {
    int preds;
    std::vector<NodeId> path;
    CallContext ctx;
  };
  auto worse = [](const Item& a, const Item& b) {
    if (a.preds != b.preds) return a.preds > b.preds;
    return a.path > b.path;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(worse)> open(worse);
  std::set<std::vector<int>> closed;
  open.push({ctx.preds, prefix, ctx});
  size_t expansions = 0;
  while (!open.empty()) {
    Item cur = open.top();
    open.pop();
    NodeId u = cur.path.back();
    if (detail::is_terminal(g, u, cur.ctx, top)) return cur.path;
    std::vector<int> key{u, static_cast<int>(cur.ctx.stack.size())};
    key.insert(key.end(), cur.ctx.stack.begin(), cur.ctx.stack.end());
    for (auto [e, c] : cur.ctx.call_counts) key.insert(key.end(), {-1, e, c});
    for (auto [e, c] : cur.ctx.back_counts) key.insert(key.end(), {-2, e, c});
    if (!closed.insert(std::move(key)).second) continue;
    if (++expansions > max_expansions) return std::nullopt;
    for (EdgeId eid : g.out_edges(u)) {
      const Edge& e = g.edge(eid);
      CallContext next = cur.ctx;
      if (!detail::step(g, e, next, budget)) continue;
      Item item{next.preds, cur.path, std::move(next)};
      item.path.push_back(e.to);
      open.push(std::move(item));
    }
  }
  return std::nullopt;
}

inline std::optional<std::vector<NodeId>> complete_from_prefix(const Tcfg& g, const std::vector<NodeId>& prefix,
                                                               const SearchBudget& budget = {}) {
  auto ctx = replay_prefix(g, prefix, budget);
  if (!ctx) return std::nullopt;
  return complete_from_prefix(g, prefix, *ctx, budget);
}

/// The path from `n` with the fewest pred visits (ties: smallest node
/// sequence). Throws when no path fits the budget.
inline std::vector<NodeId> baseline_path(const Tcfg& g, NodeId n, const SearchBudget& budget = {}) {
  if (n < 0 || n >= static_cast<NodeId>(g.nodes().size()) || !g.node(n).tx_entry)
    throw GraphError("node " + std::to_string(n) + " is not a transaction entry");
  auto p = complete_from_prefix(g, {n}, CallContext{}, budget);
  if (!p) throw GraphError("no whole-transaction path from node " + std::to_string(n) + " within budget");
  return *p;
}

}  // namespace txbasis
