#pragma once

#include <functional>
#include <vector>

#include "perc/explorer.hpp"

namespace perc {

inline constexpr int kEnumerationCap = 25;  // 2^25 configurations

/// A tiny finite edge set with explicit product measure, used as exact
/// ground truth for the sampling path.
struct FiniteInstance {
  int dim = 0;
  std::vector<Edge> edges;      // canonical, deduplicated, sorted
  std::vector<Vertex> vertices; // all endpoints, sorted
  double p = 0.5;

  /// Radius that surely contains every endpoint, so the confinement in
  /// `explore` never cuts the instance.
  std::int64_t enclosing_radius(const LatticeSpec& spec) const;
};

FiniteInstance make_instance(int dim, std::vector<Edge> edges, double p);

using ClusterFunctional = std::function<double(const ClusterView&)>;

/// Sum over all 2^|edges| configurations of
/// p^#open (1-p)^#closed * functional(explored view of the origin's cluster).
/// Compensated summation; configuration sub-ranges may be enumerated in
/// parallel with a fixed reduction order.
double enumerate_measure(const FiniteInstance& inst, const LatticeSpec& spec,
                         const ClusterFunctional& functional, int workers = 1);

/// Exact P(F | E) = P(F and E) / P(E); throws if P(E) = 0.
double exact_conditional(const FiniteInstance& inst, const LatticeSpec& spec,
                         const ClusterFunctional& event_f, const ClusterFunctional& event_e,
                         int workers = 1);

}  // namespace perc
