#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "perc/lattice.hpp"

namespace perc {

/// SplitMix64 finalizer; the mixing primitive behind all keyed randomness.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Identifies one sampled configuration: two mixed words derived from
/// (master_seed, replica_index).
struct ConfigKey {
  std::uint64_t w0 = 0, w1 = 0;
  friend bool operator==(const ConfigKey& a, const ConfigKey& b) {
    return a.w0 == b.w0 && a.w1 == b.w1;
  }
};

ConfigKey derive_replica_key(std::uint64_t master_seed, std::uint64_t replica_index);

/// The keyed uniform attached to a canonical edge: a counter-based PRF over
/// (key, dim, u coords, v coords), 53 bits of precision. The edge is open
/// iff this value is < p, which couples all p monotonically.
double edge_uniform(const ConfigKey& key, const Edge& e);

/// Deterministic map edge -> open/closed. Immutable after construction;
/// safe for concurrent queries.
class EdgeStateProvider {
 public:
  using StateMap = std::unordered_map<Edge, bool, EdgeHash>;
  using EdgeSet = std::unordered_set<Edge, EdgeHash>;
  using IndexMap = std::unordered_map<Edge, std::uint32_t, EdgeHash>;

  /// Bernoulli(p) states on every bond, from the keyed PRF.
  static EdgeStateProvider random(ConfigKey key, double p);
  /// Explicit states on listed edges, `open_by_default` elsewhere.
  static EdgeStateProvider explicit_map(StateMap states, bool open_by_default = false);
  /// Keyed Bernoulli(p) states on the support set, closed elsewhere.
  /// Realizes a random configuration of a finite instance.
  static EdgeStateProvider masked_random(ConfigKey key, double p, std::shared_ptr<const EdgeSet> support);
  /// One enumerated configuration of a finite edge set: edge i open iff bit i
  /// of `open_bits` is set; closed off the index. Used by the exact oracle.
  static EdgeStateProvider bitmask(std::shared_ptr<const IndexMap> index, std::uint64_t open_bits);

  bool open(const Edge& e) const;
  double p() const { return p_; }

 private:
  enum class Mode { Random, Explicit, Masked, Bitmask };
  EdgeStateProvider(Mode m, double p) : mode_(m), p_(p) {}

  Mode mode_;
  double p_ = 0;
  ConfigKey key_{};
  bool open_by_default_ = false;
  std::uint64_t open_bits_ = 0;
  std::shared_ptr<const StateMap> states_;
  std::shared_ptr<const EdgeSet> support_;
  std::shared_ptr<const IndexMap> index_;
};

}  // namespace perc
