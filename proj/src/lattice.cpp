#include "perc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace perc {

namespace {

// Smallest k >= 0 with k*k >= s, i.e. ceil(sqrt(s)) for s >= 0.
std::int64_t ceil_isqrt(unsigned __int128 s) {
  if (s == 0) return 0;
  auto k = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(s)));
  while (k > 0 && static_cast<unsigned __int128>(k - 1) * static_cast<unsigned __int128>(k - 1) >= s) --k;
  while (static_cast<unsigned __int128>(k) * static_cast<unsigned __int128>(k) < s) ++k;
  return k;
}

void build_offsets(int dim, int range, std::vector<Vertex>& out) {
  Vertex cur = Vertex::origin(dim);
  const std::int64_t L = range;
  const std::int64_t L2 = L * L;
  // Enumerate the box [-L, L]^d in lexicographic order; keep 0 < ||o||_2 <= L.
  std::vector<std::int64_t> x(dim, -L);
  for (;;) {
    std::int64_t s = 0;
    bool zero = true;
    for (int i = 0; i < dim; ++i) {
      s += x[i] * x[i];
      if (x[i] != 0) zero = false;
    }
    if (!zero && s <= L2) {
      for (int i = 0; i < dim; ++i) cur.c[i] = x[i];
      out.push_back(cur);
    }
    int i = dim - 1;
    while (i >= 0 && x[i] == L) x[i--] = -L;
    if (i < 0) break;
    ++x[i];
  }
}

}  // namespace

LatticeSpec::LatticeSpec(int dim, int range, Norm cube_norm)
    : dim_(dim), range_(range), cube_norm_(cube_norm) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("LatticeSpec: dim out of range");
  if (range < 1) throw std::invalid_argument("LatticeSpec: range must be >= 1");
  build_offsets(dim_, range_, offsets_);
  std::sort(offsets_.begin(), offsets_.end());
}

std::vector<Vertex> neighbors(const Vertex& v, const LatticeSpec& spec) {
  if (v.dim != spec.dim()) throw std::invalid_argument("neighbors: dimension mismatch");
  std::vector<Vertex> out;
  out.reserve(spec.offsets().size());
  for (const Vertex& o : spec.offsets()) {
    Vertex w = v;
    for (int i = 0; i < v.dim; ++i) w.c[i] += o.c[i];
    out.push_back(w);
  }
  return out;
}

std::int64_t shell_index(const Vertex& v, const LatticeSpec& spec) {
  switch (spec.cube_norm()) {
    case Norm::L1: {
      std::int64_t s = 0;
      for (int i = 0; i < v.dim; ++i) s += std::abs(v.c[i]);
      return s;
    }
    case Norm::Linf: {
      std::int64_t m = 0;
      for (int i = 0; i < v.dim; ++i) m = std::max(m, std::abs(v.c[i]));
      return m;
    }
    case Norm::L2: {
      unsigned __int128 s = 0;
      for (int i = 0; i < v.dim; ++i) {
        auto a = static_cast<__int128>(v.c[i]);
        s += static_cast<unsigned __int128>(a * a);
      }
      return ceil_isqrt(s);
    }
  }
  throw std::logic_error("shell_index: unknown norm");
}

namespace {

// Lattice points of Z^dim with squared Euclidean norm <= s.
std::int64_t l2_count(int dim, std::int64_t s, std::map<std::pair<int, std::int64_t>, std::int64_t>& memo) {
  if (s < 0) return 0;
  if (dim == 0) return 1;
  auto key = std::make_pair(dim, s);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::int64_t rmax = ceil_isqrt(static_cast<unsigned __int128>(s));
  if (rmax * rmax > s) --rmax;
  std::int64_t total = 0;
  for (std::int64_t x = -rmax; x <= rmax; ++x) total += l2_count(dim - 1, s - x * x, memo);
  memo[key] = total;
  return total;
}

std::int64_t l1_count(int dim, std::int64_t r, std::map<std::pair<int, std::int64_t>, std::int64_t>& memo) {
  if (r < 0) return 0;
  if (dim == 0) return 1;
  auto key = std::make_pair(dim, r);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::int64_t total = 0;
  for (std::int64_t x = -r; x <= r; ++x) total += l1_count(dim - 1, r - std::abs(x), memo);
  memo[key] = total;
  return total;
}

}  // namespace

std::int64_t ball_size(int dim, std::int64_t r, Norm norm) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("ball_size: dim out of range");
  if (r < 0) return 0;
  if (r > kMaxRadius) throw std::invalid_argument("ball_size: radius exceeds cap");
  switch (norm) {
    case Norm::Linf: {
      std::int64_t total = 1;
      for (int i = 0; i < dim; ++i) total *= 2 * r + 1;
      return total;
    }
    case Norm::L1: {
      std::map<std::pair<int, std::int64_t>, std::int64_t> memo;
      return l1_count(dim, r, memo);
    }
    case Norm::L2: {
      std::map<std::pair<int, std::int64_t>, std::int64_t> memo;
      return l2_count(dim, r * r, memo);
    }
  }
  throw std::logic_error("ball_size: unknown norm");
}

}  // namespace perc
