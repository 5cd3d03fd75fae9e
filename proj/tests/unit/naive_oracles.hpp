#pragma once

// Independent brute-force references used only by tests. These deliberately
// avoid the library's BFS/flow code paths.

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "perc/explorer.hpp"

namespace perc::testing {

/// Shortest-path distances on the realized open subgraph of a view, by
/// repeated edge relaxation (Bellman-Ford style) over open_edges_used.
inline std::map<Vertex, std::int64_t> naive_distances(const ClusterView& view) {
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::map<Vertex, std::int64_t> dist;
  for (const auto& [v, d] : view.dist) dist[v] = inf;
  dist[view.origin] = 0;
  std::vector<Edge> edges(view.open_edges_used.begin(), view.open_edges_used.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Edge& e : edges) {
      auto du = dist.at(e.u), dv = dist.at(e.v);
      if (du + 1 < dv) {
        dist[e.v] = du + 1;
        changed = true;
      } else if (dv + 1 < du) {
        dist[e.u] = dv + 1;
        changed = true;
      }
    }
  }
  return dist;
}

/// All simple open paths between two vertices, by exhaustive DFS. Returns
/// vertex sets of the paths.
inline void enumerate_paths(const std::map<Vertex, std::vector<Vertex>>& adj, const Vertex& from,
                            const std::set<Vertex>& targets, std::set<Vertex>& on_path,
                            std::vector<Vertex>& stack, std::vector<std::set<Vertex>>& out) {
  if (targets.count(from)) {
    out.emplace_back(stack.begin(), stack.end());
    return;
  }
  auto it = adj.find(from);
  if (it == adj.end()) return;
  for (const Vertex& next : it->second) {
    if (on_path.count(next)) continue;
    on_path.insert(next);
    stack.push_back(next);
    enumerate_paths(adj, next, targets, on_path, stack, out);
    stack.pop_back();
    on_path.erase(next);
  }
}

/// Brute-force backbone test: open edge e = (a,b) qualifies iff some open
/// path origin->a and some open path b->dQ_R share no vertex (either
/// orientation of the bond). Exponential; for tiny clusters only.
inline bool naive_backbone_edge(const ClusterView& view, const LatticeSpec& spec, std::int64_t R,
                                const Edge& e) {
  std::map<Vertex, std::vector<Vertex>> adj;
  for (const Edge& oe : view.open_edges_used) {
    adj[oe.u].push_back(oe.v);
    adj[oe.v].push_back(oe.u);
  }
  for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
  std::set<Vertex> boundary;
  for (const auto& [v, d] : view.dist)
    if (shell_index(v, spec) == R) boundary.insert(v);
  if (boundary.empty()) return false;

  auto paths_between = [&](const Vertex& from, const std::set<Vertex>& targets) {
    std::vector<std::set<Vertex>> out;
    std::set<Vertex> on_path{from};
    std::vector<Vertex> stack{from};
    enumerate_paths(adj, from, targets, on_path, stack, out);
    return out;
  };

  for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
    auto to_a = paths_between(view.origin, {a});
    auto from_b = paths_between(b, boundary);
    for (const auto& pa : to_a) {
      for (const auto& pb : from_b) {
        bool disjoint = true;
        for (const Vertex& v : pa)
          if (pb.count(v)) {
            disjoint = false;
            break;
          }
        if (disjoint) return true;
      }
    }
  }
  return false;
}

}  // namespace perc::testing
