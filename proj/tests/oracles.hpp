#pragma once

// Reference implementations used only as test oracles. They share no code
// with the library's search, rank or enumeration routines.

#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "txbasis/tcfg.hpp"

namespace oracle {

using namespace txbasis;

inline std::string fixture(const std::string& name) {
  std::ifstream in(std::string(TXBASIS_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Bounds {
  int per_call_edge = 2;
  int per_back_edge = 2;
  size_t max_paths = 200000;
};

// Every whole-transaction path from `entry` under the traversal bounds, by
// plain depth-first search with an explicit stack of pending return sites.
inline std::vector<std::vector<NodeId>> enumerate_wtps(const Tcfg& g, NodeId entry, Bounds b = {}) {
  const int entry_fn = g.node(entry).function;
  std::vector<std::vector<NodeId>> out;
  std::vector<NodeId> path{entry};
  std::vector<std::pair<NodeId, int>> frames;  // (return site, caller function)
  std::map<EdgeId, int> used;

  auto is_end = [&](NodeId n) {
    const auto& f = g.function(entry_fn);
    return frames.empty() && (n == f.exit || (f.revert && n == *f.revert));
  };

  std::function<void(NodeId)> dfs = [&](NodeId n) {
    if (out.size() >= b.max_paths) return;
    if (is_end(n)) {
      out.push_back(path);
      return;
    }
    for (EdgeId eid : g.out_edges(n)) {
      const Edge& e = g.edge(eid);
      int limit = -1;
      if (e.kind == EdgeKind::Call) limit = b.per_call_edge;
      else if (e.back_edge) limit = b.per_back_edge;
      if (limit >= 0 && used[eid] >= limit) continue;
      const int here = g.node(n).function;
      std::vector<std::pair<NodeId, int>> saved = frames;
      bool ok = true;
      switch (e.kind) {
        case EdgeKind::Flow:
        case EdgeKind::Revert:
          ok = g.node(e.to).function == here;
          break;
        case EdgeKind::Call: {
          // the matching return site is the flow successor of the call site
          // inside the caller, recorded in the call pair
          frames.push_back({g.pair_of(n).ret, here});
          break;
        }
        case EdgeKind::Return:
          ok = !frames.empty() && frames.back().first == e.to;
          if (ok) frames.pop_back();
          break;
        case EdgeKind::CascadingRevert:
          ok = !frames.empty() && g.node(e.to).function == frames.back().second;
          if (ok) frames.pop_back();
          break;
      }
      if (ok) {
        ++used[eid];
        path.push_back(e.to);
        dfs(e.to);
        path.pop_back();
        --used[eid];
      }
      frames = saved;
    }
  };
  dfs(entry);
  return out;
}

// Edge-count vector of a path over an explicit coordinate list.
inline std::vector<std::int64_t> count_vector(const Tcfg& g, const std::vector<NodeId>& path,
                                              const std::vector<EdgeId>& coords) {
  std::map<EdgeId, size_t> pos;
  for (size_t i = 0; i < coords.size(); ++i) pos[coords[i]] = i;
  std::vector<std::int64_t> v(coords.size(), 0);
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    EdgeId e = -1;
    for (EdgeId x : g.out_edges(path[i]))
      if (g.edge(x).to == path[i + 1]) e = x;
    if (e >= 0 && pos.count(e)) ++v[pos[e]];
  }
  return v;
}

// Rank by fraction-free Gaussian elimination over 128-bit integers with
// gcd row reduction; the small vectors of the fixtures stay in range.
inline size_t int_rank(std::vector<std::vector<std::int64_t>> rows) {
  using I = __int128;
  std::vector<std::vector<I>> m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  if (m.empty()) return 0;
  const size_t cols = m[0].size();
  size_t rank = 0;
  auto gcd = [](I a, I b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
      I t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  for (size_t c = 0; c < cols && rank < m.size(); ++c) {
    size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      I a = m[rank][c], bb = m[r][c];
      I g = 0;
      for (size_t k = 0; k < cols; ++k) {
        m[r][k] = m[r][k] * a - m[rank][k] * bb;
        g = gcd(g, m[r][k]);
      }
      if (g > 1)
        for (auto& x : m[r]) x /= g;
    }
    ++rank;
  }
  return rank;
}

}  // namespace oracle
