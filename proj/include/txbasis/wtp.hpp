#pragma once

// Whole transaction paths: grammar check by call-stack simulation and
// edge-count vectors.

#include <optional>
#include <string>
#include <vector>

#include "txbasis/metrics.hpp"
#include "txbasis/rational.hpp"
#include "txbasis/tcfg.hpp"

namespace txbasis {

enum class Terminal { Exit, Revert };

inline const char* to_string(Terminal t) { return t == Terminal::Exit ? "exit" : "revert"; }

struct WholeTxPath {
  std::vector<NodeId> nodes;
  CountVector vector;  // over the E' of the entry's metrics
  Terminal terminal = Terminal::Exit;

  bool operator==(const WholeTxPath&) const = default;
};

struct WtpCheck {
  bool valid = false;
  Terminal terminal = Terminal::Exit;
  size_t index = 0;  // first offending position when invalid
  std::string reason;

  explicit operator bool() const { return valid; }
};

namespace detail {

inline WtpCheck wtp_fail(size_t i, std::string why) {
  WtpCheck c;
  c.index = i;
  c.reason = std::move(why);
  return c;
}

}  // namespace detail

/// Checks that `nodes` starts at a transaction entry, follows edges, keeps
/// call/return/revert properly nested, and ends at the entry function's
/// exit or revert node. Cascading reverts pop one frame per hop.
inline WtpCheck validate_wtp(const Tcfg& g, const std::vector<NodeId>& nodes) {
  using detail::wtp_fail;
  if (nodes.empty()) return wtp_fail(0, "empty path");
  const NodeId count = static_cast<NodeId>(g.nodes().size());
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] < 0 || nodes[i] >= count) return wtp_fail(i, "unknown node " + std::to_string(nodes[i]));
  if (!g.node(nodes[0]).tx_entry) return wtp_fail(0, "path does not start at a transaction entry");

  struct Frame {
    int function;
    NodeId call;  // -1 for the transaction frame
  };
  std::vector<Frame> stack{{g.node(nodes[0]).function, -1}};
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    NodeId a = nodes[i];
    NodeId b = nodes[i + 1];
    auto eid = g.edge_between(a, b);
    if (!eid) return wtp_fail(i + 1, "no edge " + std::to_string(a) + "->" + std::to_string(b));
    const Edge& e = g.edge(*eid);
    if (g.node(a).function != stack.back().function) return wtp_fail(i, "node outside the current call frame");
    switch (e.kind) {
      case EdgeKind::Flow:
      case EdgeKind::Revert:
        break;
      case EdgeKind::Call:
        stack.push_back({g.node(b).function, a});
        break;
      case EdgeKind::Return:
      case EdgeKind::CascadingRevert: {
        if (stack.size() < 2) return wtp_fail(i + 1, "unmatched return out of the transaction frame");
        Frame top = stack.back();
        stack.pop_back();
        const CallPair& pair = g.pair_of(top.call);
        if (e.kind == EdgeKind::Return && pair.ret != b)
          return wtp_fail(i + 1, "return does not match call site " + std::to_string(top.call));
        if (e.kind == EdgeKind::CascadingRevert && g.node(b).function != stack.back().function)
          return wtp_fail(i + 1, "cascading revert does not reach the calling frame");
        break;
      }
    }
  }
  NodeId last = nodes.back();
  const Node& ln = g.node(last);
  if (stack.size() != 1) return wtp_fail(nodes.size() - 1, "path ends inside a nested call");
  const FunctionGraph& top = g.function(stack.back().function);
  WtpCheck ok;
  ok.valid = true;
  if (last == top.exit) {
    ok.terminal = Terminal::Exit;
  } else if (top.revert && last == *top.revert) {
    ok.terminal = Terminal::Revert;
  } else {
    return wtp_fail(nodes.size() - 1, "path ends at " + std::string(to_string(ln.kind)) + " node, not a terminal");
  }
  return ok;
}

/// Edge occurrence counts over E'. Throws on an edge outside E'.
inline CountVector path_vector(const Tcfg& g, const std::vector<NodeId>& nodes, const ReachableMetrics& m) {
  CountVector v(m.edges.size(), 0);
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    auto e = g.edge_between(nodes[i], nodes[i + 1]);
    int c = e ? m.coordinate(*e) : -1;
    if (c < 0)
      throw GraphError("step " + std::to_string(nodes[i]) + "->" + std::to_string(nodes[i + 1]) +
                       " is outside the reachable edge set");
    ++v[c];
  }
  return v;
}

/// Validates and wraps a node sequence; throws GraphError on a violation.
inline WholeTxPath make_wtp(const Tcfg& g, std::vector<NodeId> nodes, const ReachableMetrics& m) {
  WtpCheck c = validate_wtp(g, nodes);
  if (!c) throw GraphError("invalid whole-transaction path at " + std::to_string(c.index) + ": " + c.reason);
  WholeTxPath p;
  p.vector = path_vector(g, nodes, m);
  p.nodes = std::move(nodes);
  p.terminal = c.terminal;
  return p;
}

/// Readable rendering: "(" marks an entry, ")" an exit, call/return sites
/// and reverts are named.
inline std::string format_path(const Tcfg& g, const std::vector<NodeId>& nodes) {
  std::string out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = g.node(nodes[i]);
    const std::string& fn = g.function(n.function).name;
    if (i) out += "-";
    switch (n.kind) {
      case NodeKind::Entry: out += "(" + fn; break;
      case NodeKind::Exit: out += ")" + fn; break;
      case NodeKind::Revert: out += "Revert_" + fn; break;
      case NodeKind::CallSite: out += std::to_string(n.id) + "call"; break;
      case NodeKind::ReturnSite: out += std::to_string(n.id) + "ret"; break;
      default: out += std::to_string(n.id);
    }
  }
  return out;
}

}  // namespace txbasis
