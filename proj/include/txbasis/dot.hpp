#pragma once

// Graphviz output for a Tcfg.
//
// Style contract:
//   call / return edges      dashed
//   revert edges             red
//   cascading-revert edges   red, dashed
//   flow edges               solid, labelled with the branch when present
//   entry/exit nodes         ellipse; pred diamond; revert octagon; others box
// Each function is a cluster named after it.

#include <sstream>
#include <string>

#include "txbasis/tcfg.hpp"

namespace txbasis {

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline const char* dot_shape(NodeKind k) {
  switch (k) {
    case NodeKind::Entry: case NodeKind::Exit: return "ellipse";
    case NodeKind::Pred: return "diamond";
    case NodeKind::Revert: return "octagon";
    default: return "box";
  }
}

}  // namespace detail

inline std::string export_dot(const Tcfg& g) {
  std::ostringstream os;
  os << "digraph tcfg {\n";
  if (!g.nodes().empty()) os << "  node [fontname=\"monospace\"];\n";
  for (size_t fi = 0; fi < g.functions().size(); ++fi) {
    const FunctionGraph& f = g.functions()[fi];
    os << "  subgraph cluster_" << fi << " {\n";
    os << "    label=\"" << detail::dot_escape(f.name) << "\";\n";
    for (const Node& n : g.nodes()) {
      if (n.function != static_cast<int>(fi)) continue;
      std::string label = std::string(to_string(n.kind)) + "\\n" + detail::dot_escape(n.label);
      if (n.loc.line > 0) label += "\\nline " + std::to_string(n.loc.line);
      os << "    n" << n.id << " [shape=" << detail::dot_shape(n.kind) << ", label=\"" << label << "\"";
      if (n.tx_entry) os << ", peripheries=2";
      os << "];\n";
    }
    os << "  }\n";
  }
  for (const Edge& e : g.edges()) {
    os << "  n" << e.from << " -> n" << e.to << " [";
    switch (e.kind) {
      case EdgeKind::Flow: os << "style=solid"; break;
      case EdgeKind::Call: os << "style=dashed"; break;
      case EdgeKind::Return: os << "style=dashed"; break;
      case EdgeKind::Revert: os << "color=red"; break;
      case EdgeKind::CascadingRevert: os << "color=red, style=dashed"; break;
    }
    if (!e.branch.empty()) os << ", label=\"" << detail::dot_escape(e.branch) << "\"";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace txbasis
