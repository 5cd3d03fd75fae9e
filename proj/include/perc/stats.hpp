#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace perc {

struct MeanCi {
  double mean = 0;
  double ci_halfwidth = 0;
};

/// Normal-approximation 95% CI for a sample mean.
MeanCi mean_ci(const std::vector<double>& xs);

/// 95% CI for a proportion: Wilson interval below 30 successes (or
/// failures), normal approximation otherwise. Returned as a symmetric
/// halfwidth around the point estimate successes/n.
MeanCi proportion_ci(std::int64_t successes, std::int64_t n);

/// Evaluates f(0..n-1) with a worker pool; the result vector is indexed by
/// replica, so any later reduction is independent of the worker count.
template <typename T>
std::vector<T> sample_replicas(const std::function<T(std::int64_t)>& f, std::int64_t n,
                               int workers = 1) {
  if (n < 1) throw std::invalid_argument("sample_replicas: n must be >= 1");
  std::vector<T> out(static_cast<std::size_t>(n));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(i);
    return out;
  }
  std::atomic<std::int64_t> next{0};
  const std::int64_t chunk = std::max<std::int64_t>(1, n / (workers * 16));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::int64_t begin = next.fetch_add(chunk);
        if (begin >= n) break;
        std::int64_t end = std::min(n, begin + chunk);
        for (std::int64_t i = begin; i < end; ++i) out[static_cast<std::size_t>(i)] = f(i);
      }
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace perc
