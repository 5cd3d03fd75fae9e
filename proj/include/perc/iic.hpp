#pragma once

#include <functional>

#include "perc/explorer.hpp"

namespace perc {

/// What the rejection sampler conditions on: the arm event {0 <-> dQ_R} or
/// the point event {0 <-> x}.
struct ConditioningMode {
  enum class Kind { Arm, Point };
  Kind kind = Kind::Arm;
  std::int64_t r_cond = 1;
  Vertex x;

  static ConditioningMode arm(std::int64_t r_cond) {
    if (r_cond < 1) throw std::invalid_argument("ConditioningMode: R_cond must be >= 1");
    ConditioningMode m;
    m.kind = Kind::Arm;
    m.r_cond = r_cond;
    return m;
  }
  static ConditioningMode point(const Vertex& x) {
    ConditioningMode m;
    m.kind = Kind::Point;
    m.x = x;
    return m;
  }
};

class MaxAttemptsError : public std::runtime_error {
 public:
  explicit MaxAttemptsError(std::int64_t attempts)
      : std::runtime_error("sample_conditioned: max attempts exceeded"), attempts_(attempts) {}
  std::int64_t attempts() const { return attempts_; }

 private:
  std::int64_t attempts_;
};

struct ConditionedSample {
  ClusterView view;
  std::int64_t attempts = 0;
  ConfigKey accepted_key;
};

/// Builds the provider for one rejection attempt from its attempt key.
using ProviderFactory = std::function<EdgeStateProvider(ConfigKey)>;

bool conditioning_holds(const ConditioningMode& mode, const ClusterView& view,
                        const LatticeSpec& spec);

/// Draws fresh configurations (attempt counter mixed into the key as
/// replica_index * 2^32 + attempt) until the conditioning event holds; the
/// accepted view is exactly distributed as the attempt law conditioned on
/// the event. Throws MaxAttemptsError on exhaustion.
ConditionedSample sample_conditioned(const ConditioningMode& mode, const LatticeSpec& spec,
                                     const ProviderFactory& factory, std::uint64_t master_seed,
                                     std::uint64_t replica_index, const ExploreLimits& limits,
                                     std::int64_t max_attempts);

/// Convenience overload for plain Bernoulli(p) configurations on the lattice.
ConditionedSample sample_conditioned(const ConditioningMode& mode, double p,
                                     const LatticeSpec& spec, std::uint64_t master_seed,
                                     std::uint64_t replica_index, const ExploreLimits& limits,
                                     std::int64_t max_attempts);

struct CylinderRow {
  std::int64_t r_cond = 0;
  double estimate = 0;
  double ci_halfwidth = 0;
  std::int64_t n = 0;
  double mean_attempts = 0;
  std::int64_t failures = 0;
};

/// Per-R_i rejection-sampled estimates of P_p(F | 0 <-> dQ_{R_i}) for a
/// cylinder event F decidable from the explored view. The table exposes the
/// stabilization of the sequence in R.
std::vector<CylinderRow> cylinder_convergence(
    const std::function<bool(const ClusterView&)>& event, double p, const LatticeSpec& spec,
    const std::vector<std::int64_t>& radii, std::int64_t n, std::uint64_t master_seed,
    std::int64_t max_attempts, int workers = 1);

}  // namespace perc
