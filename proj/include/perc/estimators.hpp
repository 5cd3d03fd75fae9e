#pragma once

#include <optional>

#include "perc/iic.hpp"
#include "perc/stats.hpp"

namespace perc {

/// Sample mean and 95% CI over n independent replicas of a replica-indexed
/// observable. Deterministic for fixed (seed, n) regardless of worker count.
MeanCi mc_mean_ci(const std::function<double(std::int64_t)>& observable, std::int64_t n,
                  int workers = 1);

struct FitResult {
  double slope = 0;
  double stderr_ = 0;
};

/// Least-squares slope of log(mean) against log(r). Requires >= 2 points
/// with positive means.
FitResult fit_scaling(const std::vector<std::pair<double, double>>& r_mean);

struct ScalingPoint {
  double x = 0;  // radius or grid parameter
  double mean = 0;
  double ci_halfwidth = 0;
  std::int64_t n = 0;
  double flag_rate = 0;  // fraction of replicas with a truncation flag
  std::int64_t failures = 0;
  double mean_attempts = 0;
};

struct ScalingEstimate {
  std::vector<ScalingPoint> points;
  double slope = 0;
  double slope_stderr = 0;
  bool slope_valid = false;
};

/// Which measure an estimator samples under.
struct MeasureSpec {
  enum class Kind { Plain, IicArm, IicPoint };
  Kind kind = Kind::Plain;
  std::int64_t r_cond = 0;  // 0: condition at the observation radius
  Vertex x;
  std::int64_t max_attempts = 1 << 20;

  static MeasureSpec plain() { return {}; }
  static MeasureSpec iic_arm(std::int64_t r_cond = 0) {
    MeasureSpec m;
    m.kind = Kind::IicArm;
    m.r_cond = r_cond;
    return m;
  }
  static MeasureSpec iic_point(const Vertex& x) {
    MeasureSpec m;
    m.kind = Kind::IicPoint;
    m.x = x;
    return m;
  }
};

/// P_p(0 <-> x) against ||x||, with fitted log-log slope.
ScalingEstimate two_point(const LatticeSpec& spec, double p, const std::vector<Vertex>& xs,
                          std::int64_t n, std::uint64_t seed, int workers = 1,
                          const MeasureSpec& measure = MeasureSpec::plain());

/// P_p(0 <-> dQ_r) against r.
ScalingEstimate one_arm(const LatticeSpec& spec, double p, const std::vector<std::int64_t>& radii,
                        std::int64_t n, std::uint64_t seed, int workers = 1);

enum class GrowthObservable { Xr, Xrr, Br, BoundaryXrr };

/// Per-radius mean |X_r| / |X_{r,r}| / |B_r| / |dX_{r,r}| with CI and
/// fitted slope; IIC modes route through sample_conditioned. Radii whose
/// truncation-flag rate exceeds 1% are excluded from the fit (reported in
/// flag_rate).
ScalingEstimate growth_curves(const LatticeSpec& spec, const MeasureSpec& measure, double p,
                              GrowthObservable observable, const std::vector<std::int64_t>& radii,
                              std::int64_t n, std::uint64_t seed, int workers = 1);

enum class TailTarget { BrUpper, BrLower, XrrLower, ShortArm };

struct TailCurve {
  std::vector<ScalingPoint> points;  // x = lambda (or epsilon for ShortArm)
};

/// Empirical exceedance curves at fixed r:
///   BrUpper:  P(|B_r| >= lambda r^2)    BrLower:  P(|B_r| <= r^2 / lambda)
///   XrrLower: P(|X_{r,r}| <= r^4 / lambda)
///   ShortArm: P(0 <->^{<= eps r^2} dQ_r)
TailCurve tail_curve(const LatticeSpec& spec, const MeasureSpec& measure, double p,
                     TailTarget target, std::int64_t r, const std::vector<double>& grid,
                     std::int64_t n, std::uint64_t seed, int workers = 1);

struct DyadicEntry {
  int k = 0;
  double r_k = 0, lambda_k = 0, eps_k = 0;
  double y = 0;  // log_{r_k} Z_{r_k}
  bool flagged = false;
};

enum class DyadicSide { Upper, Lower };

struct DyadicDiagnostic {
  double mu = 1.0;
  double exponent = 0;
  DyadicSide side = DyadicSide::Upper;
  std::vector<DyadicEntry> entries;
  int flag_count = 0;
};

/// The dyadic-subsequence diagnostic: for samples of Z at r_k = 2^k, with
/// lambda_k = 2^{k^{(1+mu/2)/(1+mu)}} and eps_k = log_{r_k}(lambda_k), an
/// entry is flagged when Y_{r_k} = log_{r_k} Z_{r_k} deviates from the
/// exponent under test by more than eps_k on the chosen side. A summable
/// flag pattern is the empirical shadow of the almost-sure statement.
DyadicDiagnostic dyadic_diagnostic(const std::vector<std::pair<int, double>>& k_to_z,
                                   double exponent, DyadicSide side, double mu = 1.0);

/// Closed forms for the diagnostic subsequences.
double dyadic_lambda(int k, double mu);
double dyadic_eps(int k, double mu);

struct SpectralResult {
  std::vector<ScalingPoint> points;  // x = r, mean = estimated p_{2r}(0,0)
  double d_s = 0;
  double d_s_stderr = 0;
  bool valid = false;
};

/// Simple-random-walk return probabilities p_{2r}(0,0) on the open subgraph
/// of the view, over a dyadic grid of r; d_s = -2 * slope of
/// log p_{2r} vs log r.
SpectralResult spectral_dimension(const ClusterView& view, std::int64_t walk_steps,
                                  std::int64_t n_walks, std::uint64_t seed, int workers = 1);

/// Raw per-time return counts for `n_walks` walks of length `walk_steps`
/// from the origin; entry t counts walks located at the origin after t
/// steps. Lets callers pool several clusters before fitting.
std::vector<std::int64_t> walk_return_counts(const ClusterView& view, std::int64_t walk_steps,
                                             std::int64_t n_walks, std::uint64_t seed,
                                             int workers = 1);

SpectralResult spectral_from_counts(const std::vector<std::int64_t>& counts,
                                    std::int64_t n_walks);

struct PcResult {
  double p_c = 0;
  double uncertainty = 0;
  std::int64_t final_r_probe = 0;
  std::vector<std::pair<std::int64_t, double>> stages;  // (r_probe, estimate)
  bool converged = false;
};

/// Finite-size locator for the critical probability: at each probe scale the
/// arm-probability decay rate between radii (r, 2r) and (2r, 4r) is compared
/// and p is bisected on the sign of the drift; the probe radius is doubled
/// until successive estimates move less than `tolerance`.
PcResult estimate_pc(const LatticeSpec& spec, std::int64_t r_probe, std::int64_t n,
                     double tolerance, std::uint64_t seed, int workers = 1, int max_stages = 4,
                     int bisect_iters = 14);

}  // namespace perc
