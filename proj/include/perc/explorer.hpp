#pragma once

#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "perc/configuration.hpp"
#include "perc/lattice.hpp"

namespace perc {

struct ExploreLimits {
  std::int64_t extrinsic_radius = 1;              // paths confined to Q_R
  std::optional<std::int64_t> intrinsic_radius;   // BFS depth cap
  std::optional<std::int64_t> vertex_budget;
  /// Halt as soon as a vertex with shell index >= this value is visited.
  /// The resulting view is truncated (early_stopped is set) but max_shell
  /// still certifies arm events, which is all this cap is meant for.
  std::optional<std::int64_t> stop_at_shell;

  void validate() const {
    if (extrinsic_radius < 1 || extrinsic_radius > kMaxRadius)
      throw std::invalid_argument("ExploreLimits: extrinsic radius out of range");
    if (intrinsic_radius && *intrinsic_radius < 1)
      throw std::invalid_argument("ExploreLimits: intrinsic cap must be positive");
    if (vertex_budget && *vertex_budget < 1)
      throw std::invalid_argument("ExploreLimits: vertex budget must be positive");
    if (stop_at_shell && (*stop_at_shell < 1 || *stop_at_shell > extrinsic_radius))
      throw std::invalid_argument("ExploreLimits: stop shell outside (0, R]");
  }
};

/// The explored open cluster of the origin restricted to Q_R, with exact
/// intrinsic distance labels for every visited vertex.
struct ClusterView {
  Vertex origin;
  std::int64_t extrinsic_radius = 0;
  std::optional<std::int64_t> intrinsic_cap;
  std::unordered_map<Vertex, std::int64_t, VertexHash> dist;
  /// Every open edge discovered between two visited vertices (the full open
  /// subgraph induced on the visited set, not just the BFS tree).
  std::unordered_set<Edge, EdgeHash> open_edges_used;
  std::int64_t max_shell = 0;
  bool hit_extrinsic_boundary = false;
  bool hit_intrinsic_cap = false;
  bool hit_budget = false;
  /// Exploration halted by stop_at_shell; only max_shell is trustworthy.
  bool early_stopped = false;
};

/// Breadth-first exploration of the open cluster of `origin` inside Q_R,
/// resolving edge states lazily. Deterministic: the frontier is processed
/// FIFO with neighbours generated in lexicographic offset order.
ClusterView explore(const Vertex& origin, const EdgeStateProvider& provider,
                    const LatticeSpec& spec, const ExploreLimits& limits);

struct Observables {
  // x_rr and x_r_lower are both |visited ∩ Q_r|; which set that counts
  // depends on how the view was explored (R == r gives X_{r,r} exactly,
  // R > r gives a lower bound on X_r).
  std::int64_t x_r_lower = 0;
  std::int64_t x_rr = 0;
  std::int64_t b_r = 0;
  std::vector<std::int64_t> shell_counts;  // k = 0..r, includes the origin shell k = 0
  bool arm_hit = false;
};

Observables observables(const ClusterView& view, const LatticeSpec& spec, std::int64_t r);

/// True iff some vertex of the shell dQ_r has intrinsic distance
/// <= floor(epsilon * r^2). Requires a view explored with R = r and
/// intrinsic cap (if any) >= floor(epsilon * r^2).
bool short_arm_event(const ClusterView& view, const LatticeSpec& spec, double epsilon,
                     std::int64_t r);

/// Open edges carrying two vertex-disjoint open connections, one between the
/// origin and one endpoint and one between the other endpoint and dQ_R
/// (either orientation of the bond). Empty unless the view reaches dQ_R.
std::vector<Edge> backbone_edges(const ClusterView& view, const LatticeSpec& spec,
                                 std::int64_t R);

}  // namespace perc
