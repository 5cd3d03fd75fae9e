#include "perc/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace perc {

ClusterView explore(const Vertex& origin, const EdgeStateProvider& provider,
                    const LatticeSpec& spec, const ExploreLimits& limits) {
  limits.validate();
  if (origin.dim != spec.dim()) throw std::invalid_argument("explore: dimension mismatch");

  const std::int64_t R = limits.extrinsic_radius;
  if (shell_index(origin, spec) > R)
    throw std::invalid_argument("explore: origin outside Q_R");

  ClusterView view;
  view.origin = origin;
  view.extrinsic_radius = R;
  view.intrinsic_cap = limits.intrinsic_radius;

  view.dist.emplace(origin, 0);
  view.max_shell = shell_index(origin, spec);
  std::deque<Vertex> frontier{origin};
  if (limits.stop_at_shell && view.max_shell >= *limits.stop_at_shell) {
    view.early_stopped = true;
    return view;
  }

  while (!frontier.empty()) {
    Vertex u = frontier.front();
    frontier.pop_front();
    const std::int64_t du = view.dist.at(u);
    const bool at_cap = limits.intrinsic_radius && du >= *limits.intrinsic_radius;

    for (const Vertex& o : spec.offsets()) {
      Vertex w = u;
      for (int i = 0; i < w.dim; ++i) w.c[i] += o.c[i];
      Edge e(u, w);
      if (!provider.open(e)) continue;

      const std::int64_t shell = shell_index(w, spec);
      if (shell > R) {
        view.hit_extrinsic_boundary = true;
        continue;
      }
      auto it = view.dist.find(w);
      if (it != view.dist.end()) {
        view.open_edges_used.insert(e);
        continue;
      }
      if (at_cap) {
        view.hit_intrinsic_cap = true;
        continue;
      }
      if (limits.vertex_budget &&
          static_cast<std::int64_t>(view.dist.size()) >= *limits.vertex_budget) {
        view.hit_budget = true;
        continue;
      }
      view.dist.emplace(w, du + 1);
      view.open_edges_used.insert(e);
      view.max_shell = std::max(view.max_shell, shell);
      if (limits.stop_at_shell && shell >= *limits.stop_at_shell) {
        view.early_stopped = true;
        return view;
      }
      frontier.push_back(w);
    }
  }
  return view;
}

Observables observables(const ClusterView& view, const LatticeSpec& spec, std::int64_t r) {
  if (r < 0) throw std::invalid_argument("observables: r must be >= 0");
  if (r > view.extrinsic_radius)
    throw std::invalid_argument("observables: r exceeds exploration radius");
  if (view.early_stopped)
    throw std::invalid_argument("observables: view was truncated by stop_at_shell");

  Observables obs;
  obs.shell_counts.assign(static_cast<std::size_t>(r) + 1, 0);
  for (const auto& [v, d] : view.dist) {
    const std::int64_t shell = shell_index(v, spec);
    if (shell <= r) {
      ++obs.x_r_lower;
      ++obs.shell_counts[static_cast<std::size_t>(shell)];
    }
    if (d <= r) ++obs.b_r;
  }
  obs.x_rr = obs.x_r_lower;
  obs.arm_hit = view.max_shell == view.extrinsic_radius;
  return obs;
}

bool short_arm_event(const ClusterView& view, const LatticeSpec& spec, double epsilon,
                     std::int64_t r) {
  if (epsilon <= 0.0) throw std::invalid_argument("short_arm_event: epsilon must be positive");
  if (view.extrinsic_radius != r)
    throw std::invalid_argument("short_arm_event: view must be explored with R = r");
  const auto threshold =
      static_cast<std::int64_t>(std::floor(epsilon * static_cast<double>(r) * static_cast<double>(r)));
  if (view.intrinsic_cap && *view.intrinsic_cap < threshold)
    throw std::invalid_argument("short_arm_event: insufficient exploration depth");
  for (const auto& [v, d] : view.dist) {
    if (d <= threshold && shell_index(v, spec) == r) return true;
  }
  return false;
}

namespace {

// Unit-capacity max flow, augmenting at most `cap_flow` times.
struct FlowNet {
  struct Arc {
    int to;
    int cap;
    int rev;
  };
  std::vector<std::vector<Arc>> adj;

  explicit FlowNet(int n) : adj(n) {}

  void add(int from, int to, int cap) {
    adj[from].push_back({to, cap, static_cast<int>(adj[to].size())});
    adj[to].push_back({from, 0, static_cast<int>(adj[from].size()) - 1});
  }

  int max_flow(int s, int t, int cap_flow) {
    int flow = 0;
    std::vector<int> prev_node(adj.size()), prev_arc(adj.size());
    while (flow < cap_flow) {
      std::fill(prev_node.begin(), prev_node.end(), -1);
      std::deque<int> q{s};
      prev_node[s] = s;
      while (!q.empty() && prev_node[t] < 0) {
        int u = q.front();
        q.pop_front();
        for (int i = 0; i < static_cast<int>(adj[u].size()); ++i) {
          const Arc& a = adj[u][i];
          if (a.cap > 0 && prev_node[a.to] < 0) {
            prev_node[a.to] = u;
            prev_arc[a.to] = i;
            q.push_back(a.to);
          }
        }
      }
      if (prev_node[t] < 0) break;
      for (int v = t; v != s; v = prev_node[v]) {
        Arc& a = adj[prev_node[v]][prev_arc[v]];
        --a.cap;
        ++adj[v][a.rev].cap;
      }
      ++flow;
    }
    return flow;
  }
};

}  // namespace

std::vector<Edge> backbone_edges(const ClusterView& view, const LatticeSpec& spec,
                                 std::int64_t R) {
  if (view.extrinsic_radius != R)
    throw std::invalid_argument("backbone_edges: view must be explored with radius R");
  std::vector<Edge> result;
  if (view.max_shell != R) return result;

  std::vector<Vertex> verts;
  verts.reserve(view.dist.size());
  for (const auto& [v, d] : view.dist) verts.push_back(v);
  std::sort(verts.begin(), verts.end());
  std::unordered_map<Vertex, int, VertexHash> id;
  for (int i = 0; i < static_cast<int>(verts.size()); ++i) id.emplace(verts[i], i);

  std::vector<Edge> edges(view.open_edges_used.begin(), view.open_edges_used.end());
  std::sort(edges.begin(), edges.end());

  const int n = static_cast<int>(verts.size());
  // Nodes: 2i = v_in, 2i+1 = v_out, then S, T, W (boundary aggregator).
  const int S = 2 * n, T = 2 * n + 1, W = 2 * n + 2;
  const int origin_id = id.at(view.origin);

  for (const Edge& cand : edges) {
    FlowNet net(2 * n + 3);
    for (int i = 0; i < n; ++i) net.add(2 * i, 2 * i + 1, 1);
    for (const Edge& e : edges) {
      int a = id.at(e.u), b = id.at(e.v);
      net.add(2 * a + 1, 2 * b, 1);
      net.add(2 * b + 1, 2 * a, 1);
    }
    for (int i = 0; i < n; ++i) {
      if (shell_index(verts[i], spec) == R) net.add(2 * i + 1, W, 1);
    }
    net.add(W, T, 1);
    net.add(2 * origin_id + 1, T, 1);
    net.add(S, 2 * id.at(cand.u), 1);
    net.add(S, 2 * id.at(cand.v), 1);
    if (net.max_flow(S, T, 2) == 2) result.push_back(cand);
  }
  return result;
}

}  // namespace perc
