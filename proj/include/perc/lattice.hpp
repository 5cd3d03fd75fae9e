#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace perc {

// Hard cap on the lattice dimension; coordinates are 64-bit signed and radii
// are capped at 2^31 so that squared-norm arithmetic cannot overflow.
inline constexpr int kMaxDim = 16;
inline constexpr std::int64_t kMaxRadius = std::int64_t{1} << 31;

/// A point of Z^d. Coordinates beyond `dim` are zero.
struct Vertex {
  std::array<std::int64_t, kMaxDim> c{};
  std::int32_t dim = 0;

  Vertex() = default;
  Vertex(std::initializer_list<std::int64_t> xs) {
    if (xs.size() < 1 || xs.size() > kMaxDim)
      throw std::invalid_argument("Vertex: dimension out of range");
    dim = static_cast<std::int32_t>(xs.size());
    int i = 0;
    for (auto x : xs) c[i++] = x;
  }

  static Vertex origin(int d) {
    if (d < 1 || d > kMaxDim)
      throw std::invalid_argument("Vertex: dimension out of range");
    Vertex v;
    v.dim = d;
    return v;
  }

  std::int64_t operator[](int i) const { return c[i]; }
  std::int64_t& operator[](int i) { return c[i]; }

  friend bool operator==(const Vertex& a, const Vertex& b) {
    if (a.dim != b.dim) return false;
    for (int i = 0; i < a.dim; ++i)
      if (a.c[i] != b.c[i]) return false;
    return true;
  }
  friend bool operator!=(const Vertex& a, const Vertex& b) { return !(a == b); }
  // Lexicographic order; total on vertices of equal dimension.
  friend bool operator<(const Vertex& a, const Vertex& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    for (int i = 0; i < a.dim; ++i)
      if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
  }
};

struct VertexHash {
  std::size_t operator()(const Vertex& v) const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull ^ static_cast<std::uint64_t>(v.dim);
    for (int i = 0; i < v.dim; ++i) {
      h ^= static_cast<std::uint64_t>(v.c[i]) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

/// A lattice bond, endpoints stored in canonical (lexicographically
/// increasing) order.
struct Edge {
  Vertex u, v;

  Edge() = default;
  Edge(const Vertex& a, const Vertex& b) {
    if (a == b) throw std::invalid_argument("Edge: endpoints must differ");
    if (a.dim != b.dim) throw std::invalid_argument("Edge: dimension mismatch");
    if (a < b) {
      u = a;
      v = b;
    } else {
      u = b;
      v = a;
    }
  }

  friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
  friend bool operator!=(const Edge& a, const Edge& b) { return !(a == b); }
  friend bool operator<(const Edge& a, const Edge& b) {
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  }
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const {
    VertexHash h;
    std::uint64_t a = h(e.u), b = h(e.v);
    std::uint64_t m = a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2));
    m *= 0x94D049BB133111EBull;
    return static_cast<std::size_t>(m ^ (m >> 31));
  }
};

enum class Norm { L1, L2, Linf };

/// Which lattice: Z^d with nearest-neighbour bonds (range 1) or the
/// spread-out model with Euclidean range L. Cubes Q_r and their shells are
/// measured in `cube_norm` (default Euclidean).
class LatticeSpec {
 public:
  explicit LatticeSpec(int dim, int range = 1, Norm cube_norm = Norm::L2);

  int dim() const { return dim_; }
  int range() const { return range_; }
  Norm cube_norm() const { return cube_norm_; }
  bool nearest_neighbour() const { return range_ == 1; }

  /// Neighbour offsets, sorted lexicographically.
  const std::vector<Vertex>& offsets() const { return offsets_; }

 private:
  int dim_;
  int range_;
  Norm cube_norm_;
  std::vector<Vertex> offsets_;
};

/// Lattice neighbours of v, in deterministic (lexicographic offset) order.
std::vector<Vertex> neighbors(const Vertex& v, const LatticeSpec& spec);

/// The unique k >= 0 with v in the shell dQ_k = Q_k \ Q_{k-1}, i.e.
/// k = ceil(||v||) in the spec's cube norm. Exact integer arithmetic.
std::int64_t shell_index(const Vertex& v, const LatticeSpec& spec);

/// |Q_r| for the given norm, by exact lattice-point counting.
std::int64_t ball_size(int dim, std::int64_t r, Norm norm);

}  // namespace perc
