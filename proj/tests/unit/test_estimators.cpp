#include <doctest.h>

#include <cmath>
#include <random>

#include "perc/estimators.hpp"

using namespace perc;

TEST_CASE("mc_mean_ci of a constant is exact with zero width") {
  auto [mean, ci] = mc_mean_ci([](std::int64_t) { return 3.25; }, 1000);
  CHECK(mean == doctest::Approx(3.25));
  CHECK(ci == doctest::Approx(0.0));
}

TEST_CASE("mc_mean_ci rejects n = 0") {
  CHECK_THROWS_AS(mc_mean_ci([](std::int64_t) { return 0.0; }, 0), std::invalid_argument);
}

TEST_CASE("mc_mean_ci of a Bernoulli indicator is within 4 sigma") {
  const double p = 0.35;
  const std::int64_t n = 100000;
  auto [mean, ci] = mc_mean_ci(
      [p](std::int64_t i) {
        ConfigKey key = derive_replica_key(808, static_cast<std::uint64_t>(i));
        return edge_uniform(key, Edge(Vertex{0}, Vertex{1})) < p ? 1.0 : 0.0;
      },
      n);
  CHECK(std::abs(mean - p) < 4 * std::sqrt(p * (1 - p) / n));
  CHECK(ci > 0.0);
}

TEST_CASE("mc_mean_ci is identical across worker counts") {
  auto f = [](std::int64_t i) {
    return double(mix64(static_cast<std::uint64_t>(i))) * 0x1.0p-64;
  };
  auto a = mc_mean_ci(f, 10000, 1);
  auto b = mc_mean_ci(f, 10000, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.ci_halfwidth == b.ci_halfwidth);
}

TEST_CASE("fit_scaling recovers exact power laws") {
  FitResult fit = fit_scaling({{2, 4}, {4, 16}, {8, 64}});
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.stderr_ == doctest::Approx(0.0).epsilon(1e-9));
  FitResult cubic = fit_scaling({{2, 5 * 8.0}, {4, 5 * 64.0}, {8, 5 * 512.0}});
  CHECK(cubic.slope == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("fit_scaling on noisy r^4 lands within 0.2") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> eta(-0.05, 0.05);
  std::vector<std::pair<double, double>> pts;
  for (double r : {2.0, 4.0, 8.0, 16.0, 32.0})
    pts.emplace_back(r, std::pow(r, 4) * (1.0 + eta(rng)));
  FitResult fit = fit_scaling(pts);
  CHECK(std::abs(fit.slope - 4.0) < 0.2);
}

TEST_CASE("fit_scaling rejects degenerate input") {
  CHECK_THROWS_AS(fit_scaling({{2, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_scaling({{2, 0.0}, {4, 16}}), std::invalid_argument);
}

TEST_CASE("two_point on Z^1 matches p^k") {
  LatticeSpec spec(1);
  const double p = 0.8;
  std::vector<Vertex> xs{Vertex{1}, Vertex{2}, Vertex{3}, Vertex{4}};
  auto est = two_point(spec, p, xs, 20000, 99);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double want = std::pow(p, double(i + 1));
    CHECK(std::abs(est.points[i].mean - want) <
          4 * std::sqrt(want * (1 - want) / 20000.0) + 1e-9);
  }
}

TEST_CASE("two_point at p=1 is 1 everywhere") {
  LatticeSpec spec(2);
  auto est = two_point(spec, 1.0, {Vertex{1, 0}, Vertex{2, 0}}, 50, 3);
  for (const auto& pt : est.points) CHECK(pt.mean == doctest::Approx(1.0));
}

TEST_CASE("one_arm at p=1 and p=0") {
  LatticeSpec spec(2);
  auto ones = one_arm(spec, 1.0, {2, 4}, 50, 5);
  for (const auto& pt : ones.points) CHECK(pt.mean == doctest::Approx(1.0));
  auto zeros = one_arm(spec, 0.0, {2, 4}, 50, 5);
  for (const auto& pt : zeros.points) CHECK(pt.mean == doctest::Approx(0.0));
}

TEST_CASE("one_arm on Z^1 matches 2p^r - p^{2r}") {
  LatticeSpec spec(1);
  const double p = 0.8;
  const std::int64_t n = 40000;
  auto est = one_arm(spec, p, {2, 3, 5}, n, 21);
  std::vector<std::int64_t> rs{2, 3, 5};
  for (std::size_t i = 0; i < rs.size(); ++i) {
    double want = 2 * std::pow(p, double(rs[i])) - std::pow(p, 2.0 * double(rs[i]));
    CHECK(std::abs(est.points[i].mean - want) < 4 * std::sqrt(want * (1 - want) / double(n)));
  }
}

TEST_CASE("growth curves at p=1 in d=2 count the full ball") {
  LatticeSpec spec(2, 1, Norm::L1);
  auto est = growth_curves(spec, MeasureSpec::plain(), 1.0, GrowthObservable::Br, {2, 4, 8}, 20,
                           1);
  std::vector<std::int64_t> rs{2, 4, 8};
  for (std::size_t i = 0; i < rs.size(); ++i) {
    // |B_r| on the full lattice is the l1 ball: 2r^2 + 2r + 1.
    double want = double(2 * rs[i] * rs[i] + 2 * rs[i] + 1);
    CHECK(est.points[i].mean == doctest::Approx(want));
  }
  CHECK(est.slope_valid);
  CHECK(est.slope > 1.5);
  CHECK(est.slope < 2.5);
}

TEST_CASE("growth curves at p=0 are flat and the fit handles them") {
  LatticeSpec spec(2);
  auto est = growth_curves(spec, MeasureSpec::plain(), 0.0, GrowthObservable::Xrr, {2, 4}, 20, 1);
  for (const auto& pt : est.points) CHECK(pt.mean == doctest::Approx(1.0));
  auto boundary =
      growth_curves(spec, MeasureSpec::plain(), 0.0, GrowthObservable::BoundaryXrr, {2, 4}, 20, 1);
  for (const auto& pt : boundary.points) CHECK(pt.mean == doctest::Approx(0.0));
  CHECK_FALSE(boundary.slope_valid);  // zero means are excluded from the fit
}

TEST_CASE("tail curve of a deterministic size is a step in lambda") {
  LatticeSpec spec(2, 1, Norm::L1);
  const std::int64_t r = 4;
  const double size = double(2 * r * r + 2 * r + 1);  // 41
  auto curve = tail_curve(spec, MeasureSpec::plain(), 1.0, TailTarget::BrUpper, r,
                          {1.5, 2.0, size / double(r * r), 4.0}, 30, 9);
  CHECK(curve.points[0].mean == doctest::Approx(1.0));  // 1.5 r^2 = 24 <= 41
  CHECK(curve.points[1].mean == doctest::Approx(1.0));  // 32 <= 41
  CHECK(curve.points[2].mean == doctest::Approx(1.0));  // exactly 41
  CHECK(curve.points[3].mean == doctest::Approx(0.0));  // 64 > 41
}

TEST_CASE("tail curves are monotone along their parameter") {
  LatticeSpec spec(2);
  auto curve = tail_curve(spec, MeasureSpec::plain(), 0.5, TailTarget::BrUpper, 4,
                          {1.5, 2.0, 3.0, 5.0, 9.0}, 400, 31);
  for (std::size_t i = 1; i < curve.points.size(); ++i)
    CHECK(curve.points[i].mean <= curve.points[i - 1].mean);
  auto arm = tail_curve(spec, MeasureSpec::plain(), 0.5, TailTarget::ShortArm, 4,
                        {0.1, 0.5, 1.0, 2.0}, 400, 32);
  for (std::size_t i = 1; i < arm.points.size(); ++i)
    CHECK(arm.points[i].mean >= arm.points[i - 1].mean);
}

TEST_CASE("tail grid validation") {
  LatticeSpec spec(2);
  CHECK_THROWS_AS(tail_curve(spec, MeasureSpec::plain(), 0.5, TailTarget::BrUpper, 4, {0.5}, 10, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      tail_curve(spec, MeasureSpec::plain(), 0.5, TailTarget::ShortArm, 4, {-1.0}, 10, 1),
      std::invalid_argument);
}

TEST_CASE("dyadic closed forms satisfy their identities") {
  const double mu = 1.0;
  for (int k = 1; k <= 20; ++k) {
    const double e = 0.75;  // (1 + mu/2) / (1 + mu) at mu = 1
    CHECK(std::log2(dyadic_lambda(k, mu)) == doctest::Approx(std::pow(k, e)).epsilon(1e-12));
    CHECK(dyadic_eps(k, mu) * k == doctest::Approx(std::pow(k, e)).epsilon(1e-12));
  }
}

TEST_CASE("dyadic diagnostic flags exactly the doubled deviation") {
  std::vector<std::pair<int, double>> clean, bad, constant;
  for (int k = 1; k <= 20; ++k) {
    double rk = std::exp2(k);
    clean.emplace_back(k, std::pow(rk, 4.0));
    bad.emplace_back(k, std::pow(rk, 4.0) * std::pow(dyadic_lambda(k, 1.0), 2.0));
    constant.emplace_back(k, 7.5);
  }
  auto clean_diag = dyadic_diagnostic(clean, 4.0, DyadicSide::Upper, 1.0);
  CHECK(clean_diag.flag_count == 0);
  auto bad_diag = dyadic_diagnostic(bad, 4.0, DyadicSide::Upper, 1.0);
  CHECK(bad_diag.flag_count == 20);
  auto const_diag = dyadic_diagnostic(constant, 2.0, DyadicSide::Upper, 1.0);
  CHECK(const_diag.flag_count == 0);  // Y -> 0 stays below beta + eps_k
}

TEST_CASE("dyadic diagnostic rejects non-positive Z") {
  CHECK_THROWS_AS(dyadic_diagnostic({{1, 0.0}}, 2.0, DyadicSide::Upper, 1.0),
                  std::invalid_argument);
}

TEST_CASE("bridging inequalities hold on positive non-decreasing series") {
  // For 2^k <= r <= 2^{k+1}: Y_r <= Y_{2^{k+1}} (k+1)/k and
  // Y_r >= Y_{2^k} k/(k+1), for Z >= 1 non-decreasing.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> step(0.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> z(130, 1.0);
    for (std::size_t r = 1; r < z.size(); ++r) z[r] = z[r - 1] * (1.0 + step(rng));
    auto y = [&](std::size_t r) { return std::log(z[r]) / std::log(double(r)); };
    for (int k = 1; k <= 6; ++k) {
      for (std::size_t r = std::size_t(1) << k; r <= (std::size_t(1) << (k + 1)); ++r) {
        CHECK(y(r) <= y(std::size_t(1) << (k + 1)) * double(k + 1) / double(k) + 1e-9);
        CHECK(y(r) >= y(std::size_t(1) << k) * double(k) / double(k + 1) - 1e-9);
      }
    }
  }
}

TEST_CASE("spectral probe degenerate cases") {
  // Isolated vertex: the walk never moves, return probability 1, d_s = 0.
  LatticeSpec spec(2);
  auto lonely = explore(Vertex::origin(2), EdgeStateProvider::explicit_map({}, false), spec,
                        {2, std::nullopt, std::nullopt});
  auto res = spectral_dimension(lonely, 64, 500, 17);
  REQUIRE(res.valid);
  CHECK(res.d_s == doctest::Approx(0.0).epsilon(1e-9));
  for (const auto& pt : res.points) CHECK(pt.mean == doctest::Approx(1.0));
}

TEST_CASE("three-vertex path matches exact Markov powers") {
  // Path 0-1-2: from the middle vertex, return probabilities at even times
  // are exactly 1 at t=0 mod 2? No: P = [[0,1,0],[1/2,0,1/2],[0,1,0]] from
  // vertex 1; p_{2t}(1,1) = 1 for every t.
  LatticeSpec spec(1);
  EdgeStateProvider::StateMap m;
  m.emplace(Edge(Vertex{-1}, Vertex{0}), true);
  m.emplace(Edge(Vertex{0}, Vertex{1}), true);
  auto view = explore(Vertex::origin(1), EdgeStateProvider::explicit_map(std::move(m), false),
                      spec, {1, std::nullopt, std::nullopt});
  REQUIRE(view.dist.size() == 3);
  auto counts = walk_return_counts(view, 8, 2000, 23);
  for (std::int64_t t = 0; t <= 8; t += 2) CHECK(counts[t] == 2000);
  for (std::int64_t t = 1; t <= 8; t += 2) CHECK(counts[t] == 0);
}

TEST_CASE("walk return counts are identical across worker counts") {
  LatticeSpec spec(2);
  ConfigKey key = derive_replica_key(3, 3);
  auto view = explore(Vertex::origin(2), EdgeStateProvider::random(key, 0.7), spec,
                      {5, std::nullopt, std::nullopt});
  auto a = walk_return_counts(view, 32, 4000, 9, 1);
  auto b = walk_return_counts(view, 32, 4000, 9, 4);
  CHECK(a == b);
}

TEST_CASE("estimate_pc drives d=1 toward 1") {
  LatticeSpec spec(1);
  auto res = estimate_pc(spec, 4, 4000, 0.01, 77, 1, 3, 10);
  CHECK(res.p_c > 0.85);
}

TEST_CASE("estimators are bit-identical across repeated runs") {
  LatticeSpec spec(2);
  auto a = one_arm(spec, 0.5, {2, 4}, 2000, 4);
  auto b = one_arm(spec, 0.5, {2, 4}, 2000, 4);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].mean == b.points[i].mean);
    CHECK(a.points[i].ci_halfwidth == b.points[i].ci_halfwidth);
  }
  CHECK(a.slope == b.slope);
}
