#include "perc/iic.hpp"

#include "perc/stats.hpp"

namespace perc {

bool conditioning_holds(const ConditioningMode& mode, const ClusterView& view,
                        const LatticeSpec& spec) {
  switch (mode.kind) {
    case ConditioningMode::Kind::Arm:
      return view.max_shell >= mode.r_cond;
    case ConditioningMode::Kind::Point:
      return view.dist.count(mode.x) != 0;
  }
  return false;
}

namespace {

void check_limits(const ConditioningMode& mode, const LatticeSpec& spec,
                  const ExploreLimits& limits) {
  limits.validate();
  if (mode.kind == ConditioningMode::Kind::Arm) {
    if (limits.extrinsic_radius < mode.r_cond)
      throw std::invalid_argument("sample_conditioned: R must be >= R_cond");
  } else {
    if (mode.x == Vertex::origin(mode.x.dim))
      throw std::invalid_argument("sample_conditioned: point target must differ from origin");
    if (limits.extrinsic_radius < shell_index(mode.x, spec))
      throw std::invalid_argument("sample_conditioned: R must be >= shell_index(x)");
  }
}

}  // namespace

ConditionedSample sample_conditioned(const ConditioningMode& mode, const LatticeSpec& spec,
                                     const ProviderFactory& factory, std::uint64_t master_seed,
                                     std::uint64_t replica_index, const ExploreLimits& limits,
                                     std::int64_t max_attempts) {
  check_limits(mode, spec, limits);
  if (max_attempts < 1) throw std::invalid_argument("sample_conditioned: max_attempts must be >= 1");
  const Vertex origin = Vertex::origin(spec.dim());
  for (std::int64_t attempt = 0; attempt < max_attempts; ++attempt) {
    ConfigKey key = derive_replica_key(
        master_seed, replica_index * (std::uint64_t{1} << 32) + static_cast<std::uint64_t>(attempt));
    ClusterView view = explore(origin, factory(key), spec, limits);
    if (conditioning_holds(mode, view, spec))
      return ConditionedSample{std::move(view), attempt + 1, key};
  }
  throw MaxAttemptsError(max_attempts);
}

ConditionedSample sample_conditioned(const ConditioningMode& mode, double p,
                                     const LatticeSpec& spec, std::uint64_t master_seed,
                                     std::uint64_t replica_index, const ExploreLimits& limits,
                                     std::int64_t max_attempts) {
  return sample_conditioned(
      mode, spec, [p](ConfigKey key) { return EdgeStateProvider::random(key, p); }, master_seed,
      replica_index, limits, max_attempts);
}

std::vector<CylinderRow> cylinder_convergence(
    const std::function<bool(const ClusterView&)>& event, double p, const LatticeSpec& spec,
    const std::vector<std::int64_t>& radii, std::int64_t n, std::uint64_t master_seed,
    std::int64_t max_attempts, int workers) {
  std::vector<CylinderRow> rows;
  std::uint64_t replica_base = 0;
  for (std::int64_t r_cond : radii) {
    ConditioningMode mode = ConditioningMode::arm(r_cond);
    ExploreLimits limits{r_cond, std::nullopt, std::nullopt};
    struct Cell {
      int outcome = -1;  // -1 failure, else 0/1
      std::int64_t attempts = 0;
    };
    auto cells = sample_replicas<Cell>(
        [&](std::int64_t i) {
          Cell c;
          try {
            auto s = sample_conditioned(mode, p, spec, master_seed, replica_base + i, limits,
                                        max_attempts);
            c.outcome = event(s.view) ? 1 : 0;
            c.attempts = s.attempts;
          } catch (const MaxAttemptsError& e) {
            c.attempts = e.attempts();
          }
          return c;
        },
        n, workers);

    CylinderRow row;
    row.r_cond = r_cond;
    std::int64_t successes = 0, accepted = 0, attempts = 0;
    for (const Cell& c : cells) {
      attempts += c.attempts;
      if (c.outcome < 0) {
        ++row.failures;
        continue;
      }
      ++accepted;
      successes += c.outcome;
    }
    row.n = accepted;
    if (accepted > 0) {
      MeanCi ci = proportion_ci(successes, accepted);
      row.estimate = ci.mean;
      row.ci_halfwidth = ci.ci_halfwidth;
      row.mean_attempts = static_cast<double>(attempts) / static_cast<double>(n);
    }
    rows.push_back(row);
    replica_base += static_cast<std::uint64_t>(n);
  }
  return rows;
}

}  // namespace perc
