#include <doctest.h>

#include <cmath>
#include <unordered_set>

#include "perc/configuration.hpp"

using namespace perc;

namespace {
Edge unit_edge(int i) {
  // Distinct edges along Z^1 for stream tests.
  return Edge(Vertex{i}, Vertex{i + 1});
}
}  // namespace

TEST_CASE("p = 0 closes and p = 1 opens every edge") {
  ConfigKey key = derive_replica_key(42, 0);
  auto closed = EdgeStateProvider::random(key, 0.0);
  auto open = EdgeStateProvider::random(key, 1.0);
  for (int i = -50; i < 50; ++i) {
    CHECK_FALSE(closed.open(unit_edge(i)));
    CHECK(open.open(unit_edge(i)));
  }
}

TEST_CASE("p outside [0,1] is rejected") {
  ConfigKey key = derive_replica_key(1, 2);
  CHECK_THROWS_AS(EdgeStateProvider::random(key, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(EdgeStateProvider::random(key, 1.5), std::invalid_argument);
}

TEST_CASE("monotone coupling in p at a fixed key") {
  ConfigKey key = derive_replica_key(7, 3);
  auto lo = EdgeStateProvider::random(key, 0.3);
  auto hi = EdgeStateProvider::random(key, 0.7);
  for (int i = 0; i < 2000; ++i) {
    Edge e = unit_edge(i);
    if (lo.open(e)) CHECK(hi.open(e));
  }
}

TEST_CASE("determinism and replica-key stability") {
  CHECK(derive_replica_key(9, 11) == derive_replica_key(9, 11));
  ConfigKey key = derive_replica_key(9, 11);
  Edge e(Vertex{0, 0}, Vertex{0, 1});
  CHECK(edge_uniform(key, e) == edge_uniform(key, e));
}

TEST_CASE("no key collisions over 10^6 consecutive replicas") {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(1 << 21);
  for (std::uint64_t i = 0; i < 1000000; ++i) {
    ConfigKey k = derive_replica_key(123456789, i);
    CHECK(seen.insert(k.w0 ^ (k.w1 * 0x9E3779B97F4A7C15ull)).second);
  }
}

TEST_CASE("edge uniforms look uniform and Bernoulli frequencies match p") {
  // Chi-square over 16 bins for one stream of 64000 edge uniforms.
  ConfigKey key = derive_replica_key(2024, 5);
  const int bins = 16, n = 64000;
  int count[16] = {0};
  for (int i = 0; i < n; ++i) {
    double u = edge_uniform(key, unit_edge(i));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    ++count[static_cast<int>(u * bins)];
  }
  double chi2 = 0, expect = static_cast<double>(n) / bins;
  for (int b = 0; b < bins; ++b) chi2 += (count[b] - expect) * (count[b] - expect) / expect;
  CHECK(chi2 < 50.0);  // df = 15; far tail

  // Across independent replica keys one fixed edge is Bernoulli(p).
  const double p = 0.37;
  int opens = 0;
  const int reps = 100000;
  Edge e(Vertex{0}, Vertex{1});
  for (int i = 0; i < reps; ++i) {
    if (EdgeStateProvider::random(derive_replica_key(5, i), p).open(e)) ++opens;
  }
  double sigma = std::sqrt(p * (1 - p) * reps);
  CHECK(std::abs(opens - p * reps) < 4 * sigma);
}

TEST_CASE("explicit provider honours map and default") {
  EdgeStateProvider::StateMap m;
  Edge a(Vertex{0}, Vertex{1});
  Edge b(Vertex{1}, Vertex{2});
  m.emplace(a, true);
  m.emplace(b, false);
  auto prov = EdgeStateProvider::explicit_map(m, false);
  CHECK(prov.open(a));
  CHECK_FALSE(prov.open(b));
  CHECK_FALSE(prov.open(Edge(Vertex{5}, Vertex{6})));
  auto prov2 = EdgeStateProvider::explicit_map(m, true);
  CHECK(prov2.open(Edge(Vertex{5}, Vertex{6})));
}

TEST_CASE("masked provider is closed off-support, keyed on-support") {
  auto support = std::make_shared<EdgeStateProvider::EdgeSet>();
  Edge a(Vertex{0}, Vertex{1});
  support->insert(a);
  ConfigKey key = derive_replica_key(3, 1);
  auto prov = EdgeStateProvider::masked_random(key, 1.0, support);
  CHECK(prov.open(a));
  CHECK_FALSE(prov.open(Edge(Vertex{1}, Vertex{2})));
}
