#include <doctest.h>

#include <algorithm>
#include <set>

#include "perc/lattice.hpp"

using namespace perc;

TEST_CASE("nearest-neighbour offsets of Z^2") {
  LatticeSpec spec(2);
  auto nb = neighbors(Vertex::origin(2), spec);
  std::set<Vertex> got(nb.begin(), nb.end());
  std::set<Vertex> want{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  CHECK(got == want);
  CHECK(std::is_sorted(nb.begin(), nb.end()));
}

TEST_CASE("spread-out offsets in d=1, L=2") {
  LatticeSpec spec(1, 2);
  auto nb = neighbors(Vertex::origin(1), spec);
  REQUIRE(nb.size() == 4);
  CHECK(nb[0] == Vertex{-2});
  CHECK(nb[1] == Vertex{-1});
  CHECK(nb[2] == Vertex{1});
  CHECK(nb[3] == Vertex{2});
}

TEST_CASE("degree of Z^7 is 2d") {
  LatticeSpec spec(7);
  Vertex v{3, -1, 0, 2, 5, -4, 1};
  CHECK(neighbors(v, spec).size() == 14);
}

TEST_CASE("neighbors rejects dimension mismatch") {
  LatticeSpec spec(3);
  CHECK_THROWS_AS(neighbors(Vertex::origin(2), spec), std::invalid_argument);
}

TEST_CASE("shell_index under the Euclidean cube norm") {
  LatticeSpec spec(2);
  CHECK(shell_index(Vertex::origin(2), spec) == 0);
  CHECK(shell_index(Vertex{1, 1}, spec) == 2);  // sqrt(2) in (1,2]
  CHECK(shell_index(Vertex{3, 4}, spec) == 5);
  CHECK(shell_index(Vertex{1, 0}, spec) == 1);
}

TEST_CASE("shell_index under l1 and linf") {
  LatticeSpec l1(2, 1, Norm::L1);
  LatticeSpec li(2, 1, Norm::Linf);
  CHECK(shell_index(Vertex{3, -4}, l1) == 7);
  CHECK(shell_index(Vertex{3, -4}, li) == 4);
}

TEST_CASE("edges canonicalize and reject loops") {
  Edge e(Vertex{1, 0}, Vertex{0, 0});
  CHECK(e.u == Vertex{0, 0});
  CHECK(e.v == Vertex{1, 0});
  CHECK_THROWS_AS(Edge(Vertex{1, 0}, Vertex{1, 0}), std::invalid_argument);
}

TEST_CASE("shells partition Q_r and neighbors are symmetric") {
  LatticeSpec spec(2);
  const std::int64_t r = 6;
  std::int64_t in_ball = 0;
  std::vector<std::int64_t> shell_sizes(r + 1, 0);
  for (std::int64_t x = -r; x <= r; ++x) {
    for (std::int64_t y = -r; y <= r; ++y) {
      Vertex v{x, y};
      std::int64_t k = shell_index(v, spec);
      if (k <= r) {
        ++in_ball;
        ++shell_sizes[k];
      }
      for (const Vertex& w : neighbors(v, spec)) {
        auto back = neighbors(w, spec);
        CHECK(std::find(back.begin(), back.end(), v) != back.end());
      }
    }
  }
  std::int64_t total = 0;
  for (auto s : shell_sizes) total += s;
  CHECK(total == in_ball);
  CHECK(in_ball == ball_size(2, r, Norm::L2));
}

TEST_CASE("a j-step lattice path stays within shell j") {
  LatticeSpec spec(3);
  // Each nearest-neighbour step moves the Euclidean norm by at most 1.
  Vertex v = Vertex::origin(3);
  std::int64_t steps = 0;
  for (int i = 0; i < 40; ++i) {
    auto nb = neighbors(v, spec);
    v = nb[(i * 2654435761u) % nb.size()];
    ++steps;
    CHECK(shell_index(v, spec) <= steps);
  }
}

TEST_CASE("ball sizes for known counts") {
  CHECK(ball_size(1, 5, Norm::L2) == 11);
  CHECK(ball_size(2, 1, Norm::L2) == 5);
  CHECK(ball_size(2, 2, Norm::L2) == 13);
  CHECK(ball_size(2, 3, Norm::Linf) == 49);
  CHECK(ball_size(2, 2, Norm::L1) == 13);
}
