#include "perc/estimators.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace perc {

MeanCi mean_ci(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean_ci: empty sample");
  const auto n = static_cast<double>(xs.size());
  double sum = 0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  if (xs.size() == 1) return {mean, 0.0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / (n - 1.0);
  return {mean, 1.959963984540054 * std::sqrt(var / n)};
}

MeanCi proportion_ci(std::int64_t successes, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("proportion_ci: n must be >= 1");
  if (successes < 0 || successes > n) throw std::invalid_argument("proportion_ci: bad count");
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(successes) / nn;
  const std::int64_t extreme = std::min(successes, n - successes);
  if (extreme < 30) {
    // Wilson interval; heavy tails make the normal interval fragile here.
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {phat, half};
  }
  return {phat, z * std::sqrt(phat * (1.0 - phat) / nn)};
}

MeanCi mc_mean_ci(const std::function<double(std::int64_t)>& observable, std::int64_t n,
                  int workers) {
  auto xs = sample_replicas<double>(observable, n, workers);
  return mean_ci(xs);
}

FitResult fit_scaling(const std::vector<std::pair<double, double>>& r_mean) {
  const auto n = static_cast<Eigen::Index>(r_mean.size());
  if (n < 2) throw std::invalid_argument("fit_scaling: need at least 2 points");
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& [r, mean] = r_mean[static_cast<std::size_t>(i)];
    if (r <= 0.0 || mean <= 0.0)
      throw std::invalid_argument("fit_scaling: radii and means must be positive");
    design(i, 0) = 1.0;
    design(i, 1) = std::log(r);
    y(i) = std::log(mean);
  }
  Eigen::Vector2d beta = design.colPivHouseholderQr().solve(y);
  FitResult fit;
  fit.slope = beta(1);
  if (n > 2) {
    const double rss = (design * beta - y).squaredNorm();
    const double s2 = rss / static_cast<double>(n - 2);
    const double xbar = design.col(1).mean();
    const double sxx = (design.col(1).array() - xbar).square().sum();
    fit.stderr_ = std::sqrt(s2 / sxx);
  }
  return fit;
}

namespace {

void finish_slope(ScalingEstimate& est) {
  std::vector<std::pair<double, double>> pts;
  for (const ScalingPoint& p : est.points) {
    if (p.mean > 0.0 && p.flag_rate <= 0.01) pts.emplace_back(p.x, p.mean);
  }
  if (pts.size() >= 2) {
    FitResult fit = fit_scaling(pts);
    est.slope = fit.slope;
    est.slope_stderr = fit.stderr_;
    est.slope_valid = true;
  }
}

struct Draw {
  double value = 0;
  bool flagged = false;
  bool failed = false;
  std::int64_t attempts = 1;
};

ScalingPoint reduce_point(double x, const std::vector<Draw>& draws) {
  ScalingPoint pt;
  pt.x = x;
  std::vector<double> values;
  std::int64_t flags = 0, attempts = 0;
  for (const Draw& d : draws) {
    attempts += d.attempts;
    if (d.failed) {
      ++pt.failures;
      continue;
    }
    values.push_back(d.value);
    if (d.flagged) ++flags;
  }
  pt.n = static_cast<std::int64_t>(values.size());
  if (pt.n > 0) {
    MeanCi ci = mean_ci(values);
    pt.mean = ci.mean;
    pt.ci_halfwidth = ci.ci_halfwidth;
    pt.flag_rate = static_cast<double>(flags) / static_cast<double>(pt.n);
    pt.mean_attempts = static_cast<double>(attempts) / static_cast<double>(draws.size());
  }
  return pt;
}

ScalingPoint reduce_indicator(double x, const std::vector<Draw>& draws) {
  ScalingPoint pt;
  pt.x = x;
  std::int64_t successes = 0, flags = 0, attempts = 0, accepted = 0;
  for (const Draw& d : draws) {
    attempts += d.attempts;
    if (d.failed) {
      ++pt.failures;
      continue;
    }
    ++accepted;
    if (d.value > 0.5) ++successes;
    if (d.flagged) ++flags;
  }
  pt.n = accepted;
  if (accepted > 0) {
    MeanCi ci = proportion_ci(successes, accepted);
    pt.mean = ci.mean;
    pt.ci_halfwidth = ci.ci_halfwidth;
    pt.flag_rate = static_cast<double>(flags) / static_cast<double>(accepted);
    pt.mean_attempts = static_cast<double>(attempts) / static_cast<double>(draws.size());
  }
  return pt;
}

/// One draw under the requested measure: plain exploration or a conditioned
/// sample via rejection.
Draw draw_view(const LatticeSpec& spec, const MeasureSpec& measure, double p,
               const ExploreLimits& limits, std::int64_t r_cond_default, std::uint64_t seed,
               std::uint64_t replica, const std::function<double(const ClusterView&)>& eval) {
  Draw d;
  try {
    if (measure.kind == MeasureSpec::Kind::Plain) {
      ConfigKey key = derive_replica_key(seed, replica);
      ClusterView view = explore(Vertex::origin(spec.dim()),
                                 EdgeStateProvider::random(key, p), spec, limits);
      d.value = eval(view);
      d.flagged = view.hit_extrinsic_boundary || view.hit_budget;
    } else {
      ConditioningMode mode =
          measure.kind == MeasureSpec::Kind::IicArm
              ? ConditioningMode::arm(measure.r_cond > 0 ? measure.r_cond : r_cond_default)
              : ConditioningMode::point(measure.x);
      ExploreLimits lim = limits;
      const std::int64_t need = measure.kind == MeasureSpec::Kind::IicArm
                                    ? mode.r_cond
                                    : shell_index(measure.x, spec);
      lim.extrinsic_radius = std::max(lim.extrinsic_radius, need);
      auto s = sample_conditioned(mode, p, spec, seed, replica, lim, measure.max_attempts);
      d.value = eval(s.view);
      d.flagged = s.view.hit_extrinsic_boundary || s.view.hit_budget;
      d.attempts = s.attempts;
    }
  } catch (const MaxAttemptsError& e) {
    d.failed = true;
    d.attempts = e.attempts();
  }
  return d;
}

}  // namespace

ScalingEstimate two_point(const LatticeSpec& spec, double p, const std::vector<Vertex>& xs,
                          std::int64_t n, std::uint64_t seed, int workers,
                          const MeasureSpec& measure) {
  if (xs.empty()) throw std::invalid_argument("two_point: need at least one target");
  ScalingEstimate est;
  std::uint64_t base = 0;
  for (const Vertex& x : xs) {
    const std::int64_t shell = shell_index(x, spec);
    if (shell < 1) throw std::invalid_argument("two_point: target must differ from origin");
    ExploreLimits limits{2 * shell, std::nullopt, std::nullopt};
    auto draws = sample_replicas<Draw>(
        [&](std::int64_t i) {
          return draw_view(spec, measure, p, limits, 2 * shell, seed, base + i,
                           [&](const ClusterView& v) {
                             return v.dist.count(x) != 0 ? 1.0 : 0.0;
                           });
        },
        n, workers);
    ScalingPoint pt = reduce_indicator(static_cast<double>(shell), draws);
    est.points.push_back(pt);
    base += static_cast<std::uint64_t>(n);
  }
  finish_slope(est);
  return est;
}

ScalingEstimate one_arm(const LatticeSpec& spec, double p, const std::vector<std::int64_t>& radii,
                        std::int64_t n, std::uint64_t seed, int workers) {
  if (radii.empty()) throw std::invalid_argument("one_arm: need radii");
  std::vector<std::int64_t> rs = radii;
  std::sort(rs.begin(), rs.end());
  ScalingEstimate est;

  if (spec.nearest_neighbour()) {
    // Steps change the shell index by at most 1, so one exploration at the
    // largest radius decides every smaller arm event via the maximal shell.
    const std::int64_t r_max = rs.back();
    // The exploration may stop the moment the outermost shell is reached, and
    // a generous budget bounds the rare giant cluster that never gets there;
    // a budget-stopped replica contributes its max shell so far and a flag.
    ExploreLimits limits{r_max, std::nullopt, std::int64_t{2000000}, r_max};
    auto shells = sample_replicas<std::int64_t>(
        [&](std::int64_t i) {
          ConfigKey key = derive_replica_key(seed, static_cast<std::uint64_t>(i));
          ClusterView view =
              explore(Vertex::origin(spec.dim()), EdgeStateProvider::random(key, p), spec, limits);
          return view.hit_budget ? -(view.max_shell + 1) : view.max_shell;
        },
        n, workers);
    std::int64_t flagged = 0;
    for (std::int64_t& s : shells) {
      if (s < 0) {
        ++flagged;
        s = -s - 1;
      }
    }
    for (std::int64_t r : rs) {
      std::int64_t successes = 0;
      for (std::int64_t s : shells)
        if (s >= r) ++successes;
      MeanCi ci = proportion_ci(successes, n);
      ScalingPoint pt;
      pt.x = static_cast<double>(r);
      pt.mean = ci.mean;
      pt.ci_halfwidth = ci.ci_halfwidth;
      pt.n = n;
      pt.flag_rate = static_cast<double>(flagged) / static_cast<double>(n);
      est.points.push_back(pt);
    }
  } else {
    std::uint64_t base = 0;
    for (std::int64_t r : rs) {
      ExploreLimits limits{r, std::nullopt, std::nullopt};
      auto draws = sample_replicas<Draw>(
          [&](std::int64_t i) {
            return draw_view(spec, MeasureSpec::plain(), p, limits, r, seed, base + i,
                             [&](const ClusterView& v) {
                               return observables(v, spec, r).arm_hit ? 1.0 : 0.0;
                             });
          },
          n, workers);
      est.points.push_back(reduce_indicator(static_cast<double>(r), draws));
      base += static_cast<std::uint64_t>(n);
    }
  }
  finish_slope(est);
  return est;
}

ScalingEstimate growth_curves(const LatticeSpec& spec, const MeasureSpec& measure, double p,
                              GrowthObservable observable, const std::vector<std::int64_t>& radii,
                              std::int64_t n, std::uint64_t seed, int workers) {
  if (radii.empty()) throw std::invalid_argument("growth_curves: need radii");
  ScalingEstimate est;
  std::uint64_t base = 0;
  for (std::int64_t r : radii) {
    ExploreLimits limits;
    switch (observable) {
      case GrowthObservable::Xr:
        limits = {2 * r, std::nullopt, std::nullopt};
        break;
      case GrowthObservable::Br:
        // Depth-r exploration suffices for |B_r|, but a conditioned measure
        // must see the whole view to certify its arm.
        limits = {r, measure.kind == MeasureSpec::Kind::Plain ? std::optional<std::int64_t>(r)
                                                              : std::nullopt,
                  std::nullopt};
        break;
      case GrowthObservable::Xrr:
      case GrowthObservable::BoundaryXrr:
        limits = {r, std::nullopt, std::nullopt};
        break;
    }
    auto eval = [&, r](const ClusterView& v) -> double {
      Observables obs = observables(v, spec, r);
      switch (observable) {
        case GrowthObservable::Xr:
          return static_cast<double>(obs.x_r_lower);
        case GrowthObservable::Xrr:
          return static_cast<double>(obs.x_rr);
        case GrowthObservable::Br:
          return static_cast<double>(obs.b_r);
        case GrowthObservable::BoundaryXrr:
          return static_cast<double>(obs.shell_counts.back());
      }
      return 0.0;
    };
    auto draws = sample_replicas<Draw>(
        [&](std::int64_t i) { return draw_view(spec, measure, p, limits, r, seed, base + i, eval); },
        n, workers);
    ScalingPoint pt = reduce_point(static_cast<double>(r), draws);
    // Exact observables carry no undercount flag.
    if (observable != GrowthObservable::Xr) pt.flag_rate = 0.0;
    est.points.push_back(pt);
    base += static_cast<std::uint64_t>(n);
  }
  finish_slope(est);
  return est;
}

TailCurve tail_curve(const LatticeSpec& spec, const MeasureSpec& measure, double p,
                     TailTarget target, std::int64_t r, const std::vector<double>& grid,
                     std::int64_t n, std::uint64_t seed, int workers) {
  if (grid.empty()) throw std::invalid_argument("tail_curve: need a parameter grid");
  for (double g : grid) {
    if (target == TailTarget::ShortArm) {
      if (g <= 0.0) throw std::invalid_argument("tail_curve: epsilon grid must be positive");
    } else if (g <= 1.0) {
      throw std::invalid_argument("tail_curve: lambda grid must be > 1");
    }
  }

  ExploreLimits limits{r, std::nullopt, std::nullopt};
  // |B_r| needs only depth-r exploration, but a conditioned measure must see
  // the whole view to certify its arm, so the cap applies to the plain
  // measure only.
  if ((target == TailTarget::BrUpper || target == TailTarget::BrLower) &&
      measure.kind == MeasureSpec::Kind::Plain)
    limits.intrinsic_radius = r;

  auto eval = [&, r](const ClusterView& v) -> double {
    Observables obs = observables(v, spec, r);
    switch (target) {
      case TailTarget::BrUpper:
      case TailTarget::BrLower:
        return static_cast<double>(obs.b_r);
      case TailTarget::XrrLower:
        return static_cast<double>(obs.x_rr);
      case TailTarget::ShortArm: {
        // Shortest intrinsic distance to dQ_r; infinite without an arm.
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (const auto& [x, d] : v.dist)
          if (shell_index(x, spec) == r) best = std::min(best, d);
        return best == std::numeric_limits<std::int64_t>::max()
                   ? std::numeric_limits<double>::infinity()
                   : static_cast<double>(best);
      }
    }
    return 0.0;
  };

  auto draws = sample_replicas<Draw>(
      [&](std::int64_t i) { return draw_view(spec, measure, p, limits, r, seed, i, eval); }, n,
      workers);

  const double r2 = static_cast<double>(r) * static_cast<double>(r);
  const double r4 = r2 * r2;
  TailCurve curve;
  for (double g : grid) {
    std::int64_t successes = 0, accepted = 0, attempts = 0;
    ScalingPoint pt;
    pt.x = g;
    for (const Draw& d : draws) {
      attempts += d.attempts;
      if (d.failed) {
        ++pt.failures;
        continue;
      }
      ++accepted;
      bool hit = false;
      switch (target) {
        case TailTarget::BrUpper:
          hit = d.value >= g * r2;
          break;
        case TailTarget::BrLower:
          hit = d.value <= r2 / g;
          break;
        case TailTarget::XrrLower:
          hit = d.value <= r4 / g;
          break;
        case TailTarget::ShortArm:
          hit = d.value <= std::floor(g * r2);
          break;
      }
      if (hit) ++successes;
    }
    pt.n = accepted;
    if (accepted > 0) {
      MeanCi ci = proportion_ci(successes, accepted);
      pt.mean = ci.mean;
      pt.ci_halfwidth = ci.ci_halfwidth;
      pt.mean_attempts = static_cast<double>(attempts) / static_cast<double>(n);
    }
    curve.points.push_back(pt);
  }
  return curve;
}

double dyadic_lambda(int k, double mu) {
  if (k < 1) throw std::invalid_argument("dyadic_lambda: k must be >= 1");
  if (mu <= 0.0) throw std::invalid_argument("dyadic_lambda: mu must be positive");
  const double e = (1.0 + mu / 2.0) / (1.0 + mu);
  return std::exp2(std::pow(static_cast<double>(k), e));
}

double dyadic_eps(int k, double mu) {
  if (k < 1) throw std::invalid_argument("dyadic_eps: k must be >= 1");
  if (mu <= 0.0) throw std::invalid_argument("dyadic_eps: mu must be positive");
  const double e = (1.0 + mu / 2.0) / (1.0 + mu);
  return std::pow(static_cast<double>(k), e - 1.0);
}

DyadicDiagnostic dyadic_diagnostic(const std::vector<std::pair<int, double>>& k_to_z,
                                   double exponent, DyadicSide side, double mu) {
  if (mu <= 0.0) throw std::invalid_argument("dyadic_diagnostic: mu must be positive");
  if (k_to_z.empty()) throw std::invalid_argument("dyadic_diagnostic: need entries");
  DyadicDiagnostic diag;
  diag.mu = mu;
  diag.exponent = exponent;
  diag.side = side;
  for (const auto& [k, z] : k_to_z) {
    if (k < 1) throw std::invalid_argument("dyadic_diagnostic: k must be >= 1");
    if (z <= 0.0) throw std::invalid_argument("dyadic_diagnostic: Z values must be positive");
    DyadicEntry entry;
    entry.k = k;
    entry.r_k = std::exp2(static_cast<double>(k));
    entry.lambda_k = dyadic_lambda(k, mu);
    entry.eps_k = dyadic_eps(k, mu);
    entry.y = std::log2(z) / static_cast<double>(k);
    entry.flagged = side == DyadicSide::Upper ? entry.y >= exponent + entry.eps_k
                                              : entry.y <= exponent - entry.eps_k;
    if (entry.flagged) ++diag.flag_count;
    diag.entries.push_back(entry);
  }
  return diag;
}

std::vector<std::int64_t> walk_return_counts(const ClusterView& view, std::int64_t walk_steps,
                                             std::int64_t n_walks, std::uint64_t seed,
                                             int workers) {
  if (view.dist.empty()) throw std::invalid_argument("walk_return_counts: empty cluster");
  if (walk_steps < 1 || n_walks < 1)
    throw std::invalid_argument("walk_return_counts: steps and walks must be >= 1");

  // Deterministic adjacency: vertices sorted, neighbour lists by id.
  std::vector<Vertex> verts;
  verts.reserve(view.dist.size());
  for (const auto& [v, d] : view.dist) verts.push_back(v);
  std::sort(verts.begin(), verts.end());
  std::unordered_map<Vertex, std::int32_t, VertexHash> id;
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(verts.size()); ++i) id.emplace(verts[i], i);
  std::vector<std::vector<std::int32_t>> adj(verts.size());
  for (const Edge& e : view.open_edges_used) {
    std::int32_t a = id.at(e.u), b = id.at(e.v);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  const std::int32_t start = id.at(view.origin);

  auto run_range = [&](std::int64_t begin, std::int64_t end, std::vector<std::int64_t>& counts) {
    for (std::int64_t w = begin; w < end; ++w) {
      std::uint64_t state = mix64(seed ^ mix64(static_cast<std::uint64_t>(w) ^ 0x5851F42D4C957F2Dull));
      std::int32_t pos = start;
      ++counts[0];
      for (std::int64_t t = 1; t <= walk_steps; ++t) {
        const auto& nb = adj[pos];
        if (!nb.empty()) {
          state = mix64(state);
          pos = nb[state % nb.size()];
        }
        if (pos == start) ++counts[t];
      }
    }
  };

  std::vector<std::int64_t> counts(static_cast<std::size_t>(walk_steps) + 1, 0);
  if (workers <= 1) {
    run_range(0, n_walks, counts);
    return counts;
  }
  std::vector<std::vector<std::int64_t>> local(workers,
                                               std::vector<std::int64_t>(counts.size(), 0));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    std::int64_t begin = n_walks * w / workers;
    std::int64_t end = n_walks * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] { run_range(begin, end, local[w]); });
  }
  for (auto& t : pool) t.join();
  for (const auto& lc : local)
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += lc[i];
  return counts;
}

SpectralResult spectral_from_counts(const std::vector<std::int64_t>& counts,
                                    std::int64_t n_walks) {
  SpectralResult res;
  const std::int64_t walk_steps = static_cast<std::int64_t>(counts.size()) - 1;
  std::vector<std::pair<double, double>> pts;
  for (std::int64_t r = 1; 2 * r <= walk_steps; r *= 2) {
    const std::int64_t c = counts[static_cast<std::size_t>(2 * r)];
    MeanCi ci = proportion_ci(c, n_walks);
    ScalingPoint pt;
    pt.x = static_cast<double>(r);
    pt.mean = ci.mean;
    pt.ci_halfwidth = ci.ci_halfwidth;
    pt.n = n_walks;
    res.points.push_back(pt);
    if (c > 0) pts.emplace_back(pt.x, pt.mean);
  }
  if (pts.size() >= 2) {
    FitResult fit = fit_scaling(pts);
    res.d_s = -2.0 * fit.slope;
    res.d_s_stderr = 2.0 * fit.stderr_;
    res.valid = true;
  }
  return res;
}

SpectralResult spectral_dimension(const ClusterView& view, std::int64_t walk_steps,
                                  std::int64_t n_walks, std::uint64_t seed, int workers) {
  auto counts = walk_return_counts(view, walk_steps, n_walks, seed, workers);
  return spectral_from_counts(counts, n_walks);
}

namespace {

// Per-octave log2 drop of the arm probability, with +1/2 smoothing so empty
// cells stay finite.
double octave_drop(std::int64_t hi_count, std::int64_t lo_count) {
  return std::log2((static_cast<double>(hi_count) + 0.5) / (static_cast<double>(lo_count) + 0.5));
}

}  // namespace

PcResult estimate_pc(const LatticeSpec& spec, std::int64_t r_probe, std::int64_t n,
                     double tolerance, std::uint64_t seed, int workers, int max_stages,
                     int bisect_iters) {
  if (r_probe < 4) throw std::invalid_argument("estimate_pc: r_probe must be >= 4");
  if (n < 1) throw std::invalid_argument("estimate_pc: n must be >= 1");
  if (tolerance <= 0.0) throw std::invalid_argument("estimate_pc: tolerance must be positive");
  if (max_stages < 1) throw std::invalid_argument("estimate_pc: max_stages must be >= 1");

  PcResult res;
  std::int64_t r = r_probe;
  double prev = -1.0;
  for (int stage = 0; stage < max_stages; ++stage) {
    double lo = 0.0, hi = 1.0;
    const std::int64_t R = 4 * r;
    // Supercritical clusters fill Q_R; a budget far above the critical mean
    // cluster size (which scales like R^2) keeps each probe cheap while
    // flagging only clusters of unmistakably supercritical size.
    const std::int64_t budget = 16 * R * R;
    ExploreLimits limits{R, std::nullopt, budget, R};
    // Returns the max shell reached, or -1 when the probe hit the budget.
    auto probe_shell = [&](double pm, std::uint64_t key_index) {
      ConfigKey key = derive_replica_key(seed, key_index);
      ClusterView view = explore(Vertex::origin(spec.dim()),
                                 EdgeStateProvider::random(key, pm), spec, limits);
      return view.hit_budget ? std::int64_t{-1} : view.max_shell;
    };
    for (int iter = 0; iter < bisect_iters; ++iter) {
      const double pm = 0.5 * (lo + hi);
      const std::uint64_t base =
          (static_cast<std::uint64_t>(stage) * 64 + static_cast<std::uint64_t>(iter)) *
          static_cast<std::uint64_t>(n);
      // Pilot: a budget-sized cluster has >= 16 R^2 vertices inside Q_R while
      // critical mean cluster sizes scale like R^2 in every dimension (and
      // |Q_R| itself is below the budget for d <= 2), so a majority of
      // budget hits certifies a supercritical pm without paying for the
      // full sample.
      const std::int64_t pilot = std::min<std::int64_t>(n, 48);
      std::int64_t pilot_hits = 0;
      for (std::int64_t i = 0; i < pilot; ++i)
        if (probe_shell(pm, base + static_cast<std::uint64_t>(i)) < 0) ++pilot_hits;
      if (pilot >= 32 && 2 * pilot_hits >= pilot) {
        hi = pm;
        continue;
      }
      auto shells = sample_replicas<std::int64_t>(
          [&](std::int64_t i) {
            return probe_shell(pm, base + static_cast<std::uint64_t>(i));
          },
          n, workers);
      std::int64_t s1 = 0, s2 = 0, s3 = 0, budget_hits = 0;
      for (std::int64_t s : shells) {
        if (s < 0) {
          ++budget_hits;  // truncated: excluded from the shell statistics
          continue;
        }
        if (s >= r) ++s1;
        if (s >= 2 * r) ++s2;
        if (s >= 4 * r) ++s3;
      }
      if (budget_hits >= std::max<std::int64_t>(20, n / 10)) {
        hi = pm;  // a macroscopic fraction of budget-sized clusters: supercritical
        continue;
      }
      // At criticality the per-octave decay rate of the arm probability is
      // scale-free; its drift in r separates sub- from supercritical p.
      const double drift = octave_drop(s1, s2) - octave_drop(s2, s3);
      if (s2 == 0 || drift < 0.0)
        lo = pm;  // no arms at 2r, or decay accelerating with scale: subcritical
      else
        hi = pm;
    }
    const double estimate = 0.5 * (lo + hi);
    res.stages.emplace_back(r, estimate);
    res.final_r_probe = r;
    if (prev >= 0.0) {
      // Averaging the last two probe scales damps the leading finite-size
      // bias, which tends to flip sign between successive scales.
      res.p_c = 0.5 * (estimate + prev);
      res.uncertainty = 0.5 * std::abs(estimate - prev);
      if (std::abs(estimate - prev) <= tolerance) {
        res.converged = true;
        return res;
      }
    } else {
      res.p_c = estimate;
    }
    prev = estimate;
    r *= 2;
  }
  return res;
}

}  // namespace perc
