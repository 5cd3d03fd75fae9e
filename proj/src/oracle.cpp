#include "perc/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <memory>
#include <thread>

namespace perc {

namespace {

struct KahanSum {
  double sum = 0, comp = 0;
  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

std::int64_t FiniteInstance::enclosing_radius(const LatticeSpec& spec) const {
  std::int64_t r = 1;
  for (const Vertex& v : vertices) r = std::max(r, shell_index(v, spec));
  return r;
}

FiniteInstance make_instance(int dim, std::vector<Edge> edges, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("make_instance: p outside [0,1]");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (static_cast<int>(edges.size()) > kEnumerationCap)
    throw std::invalid_argument("make_instance: enumeration cap exceeded");
  FiniteInstance inst;
  inst.dim = dim;
  inst.p = p;
  inst.edges = std::move(edges);
  std::vector<Vertex> verts;
  for (const Edge& e : inst.edges) {
    if (e.u.dim != dim) throw std::invalid_argument("make_instance: edge dimension mismatch");
    verts.push_back(e.u);
    verts.push_back(e.v);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  inst.vertices = std::move(verts);
  return inst;
}

double enumerate_measure(const FiniteInstance& inst, const LatticeSpec& spec,
                         const ClusterFunctional& functional, int workers) {
  const int m = static_cast<int>(inst.edges.size());
  if (m > kEnumerationCap) throw std::invalid_argument("enumerate_measure: cap exceeded");
  if (spec.dim() != inst.dim) throw std::invalid_argument("enumerate_measure: spec dimension mismatch");

  auto index = std::make_shared<EdgeStateProvider::IndexMap>();
  for (int i = 0; i < m; ++i) index->emplace(inst.edges[i], static_cast<std::uint32_t>(i));

  const std::uint64_t total = std::uint64_t{1} << m;
  ExploreLimits limits{inst.enclosing_radius(spec), std::nullopt, std::nullopt};
  const Vertex origin = Vertex::origin(inst.dim);
  const double p = inst.p;

  // Weights by open count; reused across configurations.
  std::vector<double> weight(m + 1);
  for (int k = 0; k <= m; ++k)
    weight[k] = std::pow(p, k) * std::pow(1.0 - p, m - k);

  auto chunk_sum = [&](std::uint64_t begin, std::uint64_t end) {
    KahanSum acc;
    for (std::uint64_t bits = begin; bits < end; ++bits) {
      auto provider = EdgeStateProvider::bitmask(index, bits);
      ClusterView view = explore(origin, provider, spec, limits);
      const int open_count = std::popcount(bits);
      acc.add(weight[open_count] * functional(view));
    }
    return acc.sum;
  };

  if (workers <= 1 || total < 1024) return chunk_sum(0, total);

  const int n_chunks = workers * 4;
  std::vector<double> partial(n_chunks, 0.0);
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        int c = next.fetch_add(1);
        if (c >= n_chunks) break;
        std::uint64_t begin = total * c / n_chunks;
        std::uint64_t end = total * (c + 1) / n_chunks;
        partial[c] = chunk_sum(begin, end);
      }
    });
  }
  for (auto& t : pool) t.join();
  KahanSum acc;
  for (double s : partial) acc.add(s);
  return acc.sum;
}

double exact_conditional(const FiniteInstance& inst, const LatticeSpec& spec,
                         const ClusterFunctional& event_f, const ClusterFunctional& event_e,
                         int workers) {
  double pe = enumerate_measure(inst, spec, event_e, workers);
  if (pe <= 0.0) throw std::domain_error("exact_conditional: conditioning event has probability 0");
  double pfe = enumerate_measure(
      inst, spec, [&](const ClusterView& v) { return event_f(v) * event_e(v); }, workers);
  return pfe / pe;
}

}  // namespace perc
