#include "perc/configuration.hpp"

namespace perc {

ConfigKey derive_replica_key(std::uint64_t master_seed, std::uint64_t replica_index) {
  ConfigKey k;
  k.w0 = mix64(master_seed ^ 0xA0761D6478BD642Full);
  k.w1 = mix64(k.w0 ^ mix64(replica_index ^ 0xE7037ED1A0B428DBull));
  return k;
}

double edge_uniform(const ConfigKey& key, const Edge& e) {
  // Absorb the canonical endpoint pair word by word. The word sequence
  // (dim, u_0..u_{d-1}, v_0..v_{d-1}) is a collision-free encoding of the
  // canonically ordered pair within one dimension.
  std::uint64_t h = key.w0;
  h = mix64(h ^ key.w1);
  h = mix64(h ^ static_cast<std::uint64_t>(e.u.dim));
  for (int i = 0; i < e.u.dim; ++i) h = mix64(h ^ static_cast<std::uint64_t>(e.u.c[i]));
  for (int i = 0; i < e.v.dim; ++i) h = mix64(h ^ static_cast<std::uint64_t>(e.v.c[i]));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

EdgeStateProvider EdgeStateProvider::random(ConfigKey key, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("EdgeStateProvider: p outside [0,1]");
  EdgeStateProvider prov(Mode::Random, p);
  prov.key_ = key;
  return prov;
}

EdgeStateProvider EdgeStateProvider::explicit_map(StateMap states, bool open_by_default) {
  EdgeStateProvider prov(Mode::Explicit, 0.0);
  prov.states_ = std::make_shared<const StateMap>(std::move(states));
  prov.open_by_default_ = open_by_default;
  return prov;
}

EdgeStateProvider EdgeStateProvider::masked_random(ConfigKey key, double p,
                                                   std::shared_ptr<const EdgeSet> support) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("EdgeStateProvider: p outside [0,1]");
  if (!support) throw std::invalid_argument("EdgeStateProvider: null support");
  EdgeStateProvider prov(Mode::Masked, p);
  prov.key_ = key;
  prov.support_ = std::move(support);
  return prov;
}

EdgeStateProvider EdgeStateProvider::bitmask(std::shared_ptr<const IndexMap> index,
                                             std::uint64_t open_bits) {
  if (!index) throw std::invalid_argument("EdgeStateProvider: null index");
  if (index->size() > 64) throw std::invalid_argument("EdgeStateProvider: bitmask supports <= 64 edges");
  EdgeStateProvider prov(Mode::Bitmask, 0.0);
  prov.index_ = std::move(index);
  prov.open_bits_ = open_bits;
  return prov;
}

bool EdgeStateProvider::open(const Edge& e) const {
  switch (mode_) {
    case Mode::Random:
      return edge_uniform(key_, e) < p_;
    case Mode::Explicit: {
      auto it = states_->find(e);
      return it != states_->end() ? it->second : open_by_default_;
    }
    case Mode::Masked:
      return support_->count(e) != 0 && edge_uniform(key_, e) < p_;
    case Mode::Bitmask: {
      auto it = index_->find(e);
      return it != index_->end() && ((open_bits_ >> it->second) & 1u) != 0;
    }
  }
  return false;
}

}  // namespace perc
