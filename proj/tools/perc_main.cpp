// Command-line laboratory: one subcommand per observable family, CSV data
// files plus a JSON-lines manifest per run. Exit codes: 0 success, 1 config
// error, 2 runtime failure.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "perc/estimators.hpp"
#include "perc/io.hpp"
#include "perc/oracle.hpp"

using json = nlohmann::json;
using namespace perc;

namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kToolVersion = "0.1.0";

struct Common {
  int dim = 2;
  std::string model = "nn";
  int range = 2;
  std::string norm = "l2";
  double p = -1.0;
  bool auto_pc = false;
  std::int64_t n = 1000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out;
  std::string manifest;
  std::string mode = "plain";
  std::int64_t r_cond = 0;
  std::string point;
  std::int64_t max_attempts = 1 << 20;
  std::vector<std::int64_t> radii;
  std::vector<double> grid;
};

void add_lattice_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--dim", c.dim, "lattice dimension d");
  cmd->add_option("--model", c.model, "nn | spread")->check(CLI::IsMember({"nn", "spread"}));
  cmd->add_option("--range", c.range, "Euclidean bond range for --model spread");
  cmd->add_option("--norm", c.norm, "cube norm: l1 | l2 | linf")
      ->check(CLI::IsMember({"l1", "l2", "linf"}));
}

void add_run_flags(CLI::App* cmd, Common& c, bool with_p = true) {
  if (with_p) {
    cmd->add_option("--p", c.p, "bond probability");
    cmd->add_flag("--auto-pc", c.auto_pc, "locate p_c first and sample there");
  }
  cmd->add_option("--n", c.n, "replica count");
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--workers", c.workers, "worker threads (never affects results)");
  cmd->add_option("--out", c.out, "output CSV path (default stdout)");
  cmd->add_option("--manifest", c.manifest, "manifest path (default <out>.manifest.jsonl)");
}

void add_measure_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--mode", c.mode, "plain | iic-arm | iic-point")
      ->check(CLI::IsMember({"plain", "iic-arm", "iic-point"}));
  cmd->add_option("--r-cond", c.r_cond,
                  "conditioning radius for iic-arm (0: the observation radius)");
  cmd->add_option("--point", c.point, "conditioning vertex for iic-point, e.g. 1,0,0");
  cmd->add_option("--max-attempts", c.max_attempts, "rejection-sampling attempt cap");
}

LatticeSpec make_spec(const Common& c) {
  Norm norm = c.norm == "l1" ? Norm::L1 : c.norm == "linf" ? Norm::Linf : Norm::L2;
  int range = c.model == "nn" ? 1 : c.range;
  if (c.model == "spread" && c.range < 2)
    throw std::invalid_argument("--model spread requires --range >= 2");
  return LatticeSpec(c.dim, range, norm);
}

MeasureSpec make_measure(const Common& c) {
  if (c.mode == "plain") return MeasureSpec::plain();
  if (c.mode == "iic-arm") {
    MeasureSpec m = MeasureSpec::iic_arm(c.r_cond);
    m.max_attempts = c.max_attempts;
    return m;
  }
  if (c.point.empty()) throw std::invalid_argument("--mode iic-point requires --point");
  MeasureSpec m = MeasureSpec::iic_point(parse_vertex(c.point, c.dim));
  m.max_attempts = c.max_attempts;
  return m;
}

double resolve_p(const Common& c, const LatticeSpec& spec, json& manifest) {
  if (c.auto_pc) {
    PcResult pc = estimate_pc(spec, 4, std::max<std::int64_t>(c.n, 2000), 0.01,
                              c.seed ^ 0x9C0FFEEull, c.workers, 3, 14);
    manifest["auto_pc"] = {{"p_c", pc.p_c},
                           {"uncertainty", pc.uncertainty},
                           {"converged", pc.converged},
                           {"final_r_probe", pc.final_r_probe}};
    return pc.p_c;
  }
  if (c.p < 0.0 || c.p > 1.0)
    throw std::invalid_argument("--p must be in [0,1] (or pass --auto-pc)");
  return c.p;
}

void emit_csv(const Common& c, const std::string& x_name,
              const std::vector<ScalingPoint>& points) {
  if (c.out.empty())
    write_scaling_csv(std::cout, x_name, points);
  else
    write_scaling_csv_file(c.out, x_name, points);
}

void emit_raw(const Common& c, const std::string& body) {
  if (c.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + c.out);
    f << body;
  }
}

json base_manifest(const std::string& command, const Common& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["dim"] = c.dim;
  j["model"] = c.model;
  j["range"] = c.model == "nn" ? 1 : c.range;
  j["norm"] = c.norm;
  j["n"] = c.n;
  j["seed"] = c.seed;
  j["mode"] = c.mode;
  return j;
}

json points_manifest(const std::vector<ScalingPoint>& points) {
  json rows = json::array();
  for (const auto& pt : points)
    rows.push_back({{"x", pt.x},
                    {"mean", pt.mean},
                    {"ci", pt.ci_halfwidth},
                    {"n", pt.n},
                    {"flag_rate", pt.flag_rate},
                    {"failures", pt.failures},
                    {"mean_attempts", pt.mean_attempts}});
  return rows;
}

void emit_manifest(const Common& c, const json& j) {
  std::string path = c.manifest;
  if (path.empty()) {
    if (c.out.empty()) return;  // stdout runs carry no manifest
    path = c.out + ".manifest.jsonl";
  }
  std::ofstream f(path, std::ios::binary | std::ios::app);
  if (!f) throw std::runtime_error("cannot open manifest file: " + path);
  f << j.dump() << "\n";
}

// ---- subcommands ----------------------------------------------------------

struct OracleArgs {
  std::string instance;
  std::string target;
  std::string given;
  std::int64_t r = -1;
};

int run_oracle(const Common& c, const OracleArgs& a) {
  if (c.p < 0.0 || c.p > 1.0) throw std::invalid_argument("--p must be in [0,1]");
  FiniteInstance inst = load_instance(a.instance, c.p);
  LatticeSpec spec(inst.dim);
  std::int64_t r = a.r >= 0 ? a.r : inst.enclosing_radius(spec);

  std::string body = "observable,value\n";
  auto row = [&](const std::string& name, double v) {
    body += name + "," + format_double(v) + "\n";
  };
  row("normalization", enumerate_measure(inst, spec, [](const ClusterView&) { return 1.0; },
                                         c.workers));
  row("mean_x_rr", enumerate_measure(
                       inst, spec,
                       [&](const ClusterView& v) { return double(observables(v, spec, r).x_rr); },
                       c.workers));
  row("mean_b_r", enumerate_measure(
                      inst, spec,
                      [&](const ClusterView& v) { return double(observables(v, spec, r).b_r); },
                      c.workers));
  if (!a.target.empty()) {
    Vertex x = parse_vertex(a.target, inst.dim);
    auto hit = [x](const ClusterView& v) { return v.dist.count(x) ? 1.0 : 0.0; };
    if (a.given.empty()) {
      row("connect", enumerate_measure(inst, spec, hit, c.workers));
    } else {
      Vertex y = parse_vertex(a.given, inst.dim);
      auto cond = [y](const ClusterView& v) { return v.dist.count(y) ? 1.0 : 0.0; };
      row("connect_given", exact_conditional(inst, spec, hit, cond, c.workers));
    }
  }
  emit_raw(c, body);

  json j = base_manifest("oracle", c);
  j["p"] = c.p;
  j["instance"] = a.instance;
  j["edges"] = inst.edges.size();
  j["r"] = r;
  emit_manifest(c, j);
  return 0;
}

int run_sample(const Common& c, std::int64_t r) {
  LatticeSpec spec = make_spec(c);
  json j = base_manifest("sample", c);
  double p = resolve_p(c, spec, j);
  ExploreLimits limits{r, std::nullopt, std::nullopt};

  std::string body = "replica,x_rr,b_r,max_shell,arm,flagged\n";
  for (std::int64_t i = 0; i < c.n; ++i) {
    ConfigKey key = derive_replica_key(c.seed, static_cast<std::uint64_t>(i));
    ClusterView view =
        explore(Vertex::origin(c.dim), EdgeStateProvider::random(key, p), spec, limits);
    Observables obs = observables(view, spec, r);
    bool flagged = view.hit_intrinsic_cap || view.hit_budget;
    body += std::to_string(i) + "," + std::to_string(obs.x_rr) + "," + std::to_string(obs.b_r) +
            "," + std::to_string(view.max_shell) + "," + (obs.arm_hit ? "1" : "0") + "," +
            (flagged ? "1" : "0") + "\n";
  }
  emit_raw(c, body);
  j["p"] = p;
  j["r"] = r;
  emit_manifest(c, j);
  return 0;
}

int run_arm(const Common& c) {
  if (c.radii.empty()) throw std::invalid_argument("--radii is required");
  LatticeSpec spec = make_spec(c);
  json j = base_manifest("arm", c);
  double p = resolve_p(c, spec, j);
  ScalingEstimate est = one_arm(spec, p, c.radii, c.n, c.seed, c.workers);
  emit_csv(c, "r", est.points);
  j["p"] = p;
  j["radii"] = c.radii;
  j["slope"] = est.slope;
  j["slope_stderr"] = est.slope_stderr;
  j["slope_valid"] = est.slope_valid;
  j["points"] = points_manifest(est.points);
  emit_manifest(c, j);
  return 0;
}

int run_growth(const Common& c, const std::string& observable) {
  if (c.radii.empty()) throw std::invalid_argument("--radii is required");
  GrowthObservable obs = observable == "xr"         ? GrowthObservable::Xr
                         : observable == "xrr"      ? GrowthObservable::Xrr
                         : observable == "br"       ? GrowthObservable::Br
                                                    : GrowthObservable::BoundaryXrr;
  LatticeSpec spec = make_spec(c);
  json j = base_manifest("growth", c);
  double p = resolve_p(c, spec, j);
  ScalingEstimate est =
      growth_curves(spec, make_measure(c), p, obs, c.radii, c.n, c.seed, c.workers);
  emit_csv(c, "r", est.points);
  j["p"] = p;
  j["observable"] = observable;
  j["radii"] = c.radii;
  j["slope"] = est.slope;
  j["slope_stderr"] = est.slope_stderr;
  j["slope_valid"] = est.slope_valid;
  j["points"] = points_manifest(est.points);
  emit_manifest(c, j);
  return 0;
}

int run_tails(const Common& c, const std::string& target, std::int64_t r) {
  if (c.grid.empty()) throw std::invalid_argument("--grid is required");
  TailTarget t = target == "br-upper"    ? TailTarget::BrUpper
                 : target == "br-lower"  ? TailTarget::BrLower
                 : target == "xrr-lower" ? TailTarget::XrrLower
                                         : TailTarget::ShortArm;
  LatticeSpec spec = make_spec(c);
  json j = base_manifest("tails", c);
  double p = resolve_p(c, spec, j);
  TailCurve curve = tail_curve(spec, make_measure(c), p, t, r, c.grid, c.n, c.seed, c.workers);
  emit_csv(c, t == TailTarget::ShortArm ? "eps" : "lambda", curve.points);
  j["p"] = p;
  j["target"] = target;
  j["r"] = r;
  j["grid"] = c.grid;
  j["points"] = points_manifest(curve.points);
  emit_manifest(c, j);
  return 0;
}

int run_dimension(const Common& c, const std::string& observable, int kmax, double beta, double mu,
                  const std::string& side) {
  if (kmax < 1) throw std::invalid_argument("--kmax must be >= 1");
  GrowthObservable obs = observable == "xr"    ? GrowthObservable::Xr
                         : observable == "xrr" ? GrowthObservable::Xrr
                                               : GrowthObservable::Br;
  LatticeSpec spec = make_spec(c);
  json j = base_manifest("dimension", c);
  double p = resolve_p(c, spec, j);
  std::vector<std::int64_t> radii;
  for (int k = 1; k <= kmax; ++k) radii.push_back(std::int64_t{1} << k);
  ScalingEstimate est =
      growth_curves(spec, make_measure(c), p, obs, radii, c.n, c.seed, c.workers);

  std::vector<std::pair<int, double>> kz;
  for (int k = 1; k <= kmax; ++k)
    if (est.points[k - 1].mean > 0.0) kz.emplace_back(k, est.points[k - 1].mean);
  DyadicDiagnostic diag = dyadic_diagnostic(
      kz, beta, side == "lower" ? DyadicSide::Lower : DyadicSide::Upper, mu);

  std::string body = "k,r,y,eps,flagged\n";
  for (const auto& e : diag.entries)
    body += std::to_string(e.k) + "," + format_double(e.r_k) + "," + format_double(e.y) + "," +
            format_double(e.eps_k) + "," + (e.flagged ? "1" : "0") + "\n";
  emit_raw(c, body);

  j["p"] = p;
  j["observable"] = observable;
  j["kmax"] = kmax;
  j["beta"] = beta;
  j["mu"] = mu;
  j["side"] = side;
  j["slope"] = est.slope;
  j["slope_valid"] = est.slope_valid;
  j["flag_count"] = diag.flag_count;
  j["points"] = points_manifest(est.points);
  emit_manifest(c, j);
  return 0;
}

int run_iic(const Common& c, std::int64_t event_r, const std::string& event_point) {
  if (c.radii.empty()) throw std::invalid_argument("--radii is required");
  LatticeSpec spec = make_spec(c);
  json j = base_manifest("iic", c);
  double p = resolve_p(c, spec, j);

  std::function<bool(const ClusterView&)> event;
  if (!event_point.empty()) {
    Vertex x = parse_vertex(event_point, c.dim);
    event = [x](const ClusterView& v) { return v.dist.count(x) > 0; };
  } else {
    event = [event_r](const ClusterView& v) { return v.max_shell >= event_r; };
  }
  auto rows = cylinder_convergence(event, p, spec, c.radii, c.n, c.seed, c.max_attempts,
                                   c.workers);
  std::vector<ScalingPoint> points;
  for (const auto& row : rows) {
    ScalingPoint pt;
    pt.x = double(row.r_cond);
    pt.mean = row.estimate;
    pt.ci_halfwidth = row.ci_halfwidth;
    pt.n = row.n;
    pt.failures = row.failures;
    pt.mean_attempts = row.mean_attempts;
    points.push_back(pt);
  }
  emit_csv(c, "R", points);
  j["p"] = p;
  j["radii"] = c.radii;
  j["event_r"] = event_r;
  if (!event_point.empty()) j["event_point"] = event_point;
  j["points"] = points_manifest(points);
  emit_manifest(c, j);
  return 0;
}

int run_spectral(const Common& c, std::int64_t r, std::int64_t walk_steps, std::int64_t walks) {
  LatticeSpec spec = make_spec(c);
  json j = base_manifest("spectral", c);
  double p = resolve_p(c, spec, j);
  ExploreLimits limits{r, std::nullopt, std::nullopt};

  std::vector<std::int64_t> totals(static_cast<std::size_t>(walk_steps) + 1, 0);
  std::int64_t clusters = 0, failures = 0;
  double attempts = 0;
  for (std::int64_t i = 0; i < c.n; ++i) {
    ClusterView view;
    if (c.mode == "iic-arm") {
      std::int64_t r_cond = c.r_cond > 0 ? c.r_cond : r;
      try {
        auto s = sample_conditioned(ConditioningMode::arm(r_cond), p, spec, c.seed,
                                    static_cast<std::uint64_t>(i), limits, c.max_attempts);
        attempts += double(s.attempts);
        view = std::move(s.view);
      } catch (const MaxAttemptsError&) {
        ++failures;
        continue;
      }
    } else {
      ConfigKey key = derive_replica_key(c.seed, static_cast<std::uint64_t>(i));
      view = explore(Vertex::origin(c.dim), EdgeStateProvider::random(key, p), spec, limits);
    }
    auto counts = walk_return_counts(view, walk_steps, walks,
                                     mix64(c.seed) + static_cast<std::uint64_t>(i), c.workers);
    for (std::size_t t = 0; t < counts.size(); ++t) totals[t] += counts[t];
    ++clusters;
  }
  if (clusters == 0) throw std::runtime_error("spectral: no cluster accepted");
  SpectralResult res = spectral_from_counts(totals, clusters * walks);
  emit_csv(c, "r", res.points);

  j["p"] = p;
  j["r"] = r;
  j["walk_steps"] = walk_steps;
  j["walks_per_cluster"] = walks;
  j["clusters"] = clusters;
  j["failures"] = failures;
  j["mean_attempts"] = clusters > 0 ? attempts / double(clusters) : 0.0;
  j["d_s"] = res.d_s;
  j["d_s_stderr"] = res.d_s_stderr;
  j["d_s_valid"] = res.valid;
  j["points"] = points_manifest(res.points);
  emit_manifest(c, j);
  return 0;
}

int run_pc(const Common& c, std::int64_t r_probe, double tolerance, int stages, int iters) {
  LatticeSpec spec = make_spec(c);
  PcResult res = estimate_pc(spec, r_probe, c.n, tolerance, c.seed, c.workers, stages, iters);
  std::vector<ScalingPoint> points;
  for (const auto& [r, est] : res.stages) {
    ScalingPoint pt;
    pt.x = double(r);
    pt.mean = est;
    pt.n = c.n;
    points.push_back(pt);
  }
  emit_csv(c, "r_probe", points);
  json j = base_manifest("pc", c);
  j["r_probe"] = r_probe;
  j["tolerance"] = tolerance;
  j["p_c"] = res.p_c;
  j["uncertainty"] = res.uncertainty;
  j["final_r_probe"] = res.final_r_probe;
  j["converged"] = res.converged;
  emit_manifest(c, j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo laboratory for critical bond percolation on Z^d"};
  app.require_subcommand(1);
  Common c;

  auto* oracle_cmd = app.add_subcommand("oracle", "exact enumeration on a finite instance");
  OracleArgs oa;
  oracle_cmd->add_option("--instance", oa.instance, "instance file")->required();
  oracle_cmd->add_option("--p", c.p, "bond probability")->required();
  oracle_cmd->add_option("--target", oa.target, "report P(0 <-> target)");
  oracle_cmd->add_option("--given", oa.given, "condition on {0 <-> given}");
  oracle_cmd->add_option("--r", oa.r, "observable radius (default: enclosing radius)");
  oracle_cmd->add_option("--workers", c.workers, "worker threads");
  oracle_cmd->add_option("--out", c.out, "output CSV path");
  oracle_cmd->add_option("--manifest", c.manifest, "manifest path");

  auto* sample_cmd = app.add_subcommand("sample", "raw per-replica observables at one radius");
  std::int64_t sample_r = 8;
  add_lattice_flags(sample_cmd, c);
  add_run_flags(sample_cmd, c);
  sample_cmd->add_option("--r", sample_r, "exploration radius");

  auto* arm_cmd = app.add_subcommand("arm", "one-arm probabilities over radii");
  add_lattice_flags(arm_cmd, c);
  add_run_flags(arm_cmd, c);
  arm_cmd->add_option("--radii", c.radii, "radii")->delimiter(',');

  auto* growth_cmd = app.add_subcommand("growth", "cluster growth curves over radii");
  std::string growth_obs = "br";
  add_lattice_flags(growth_cmd, c);
  add_run_flags(growth_cmd, c);
  add_measure_flags(growth_cmd, c);
  growth_cmd->add_option("--radii", c.radii, "radii")->delimiter(',');
  growth_cmd->add_option("--observable", growth_obs, "xr | xrr | br | boundary")
      ->check(CLI::IsMember({"xr", "xrr", "br", "boundary"}));

  auto* tails_cmd = app.add_subcommand("tails", "exceedance curves at a fixed radius");
  std::string tails_target = "br-upper";
  std::int64_t tails_r = 16;
  add_lattice_flags(tails_cmd, c);
  add_run_flags(tails_cmd, c);
  add_measure_flags(tails_cmd, c);
  tails_cmd->add_option("--target", tails_target, "br-upper | br-lower | xrr-lower | short-arm")
      ->check(CLI::IsMember({"br-upper", "br-lower", "xrr-lower", "short-arm"}));
  tails_cmd->add_option("--r", tails_r, "radius");
  tails_cmd->add_option("--grid", c.grid, "lambda / epsilon grid")->delimiter(',');

  auto* dim_cmd = app.add_subcommand("dimension", "power-law fit with dyadic diagnostic");
  std::string dim_obs = "xr";
  int dim_kmax = 4;
  double dim_beta = 4.0, dim_mu = 1.0;
  std::string dim_side = "upper";
  add_lattice_flags(dim_cmd, c);
  add_run_flags(dim_cmd, c);
  add_measure_flags(dim_cmd, c);
  dim_cmd->add_option("--observable", dim_obs, "xr | xrr | br")
      ->check(CLI::IsMember({"xr", "xrr", "br"}));
  dim_cmd->add_option("--kmax", dim_kmax, "dyadic radii 2^1 .. 2^kmax");
  dim_cmd->add_option("--beta", dim_beta, "exponent under test");
  dim_cmd->add_option("--mu", dim_mu, "diagnostic parameter mu");
  dim_cmd->add_option("--side", dim_side, "upper | lower")
      ->check(CLI::IsMember({"upper", "lower"}));

  auto* iic_cmd = app.add_subcommand("iic", "cylinder-event convergence along arm conditioning");
  std::int64_t iic_event_r = 1;
  std::string iic_event_point;
  add_lattice_flags(iic_cmd, c);
  add_run_flags(iic_cmd, c);
  iic_cmd->add_option("--radii", c.radii, "conditioning radii R_i")->delimiter(',');
  iic_cmd->add_option("--event-r", iic_event_r, "cylinder event {0 <-> dQ_r}");
  iic_cmd->add_option("--event-point", iic_event_point, "cylinder event {0 <-> x}");
  iic_cmd->add_option("--max-attempts", c.max_attempts, "rejection-sampling attempt cap");

  auto* spectral_cmd = app.add_subcommand("spectral", "random-walk return-probability exponent");
  std::int64_t spectral_r = 16, spectral_steps = 256, spectral_walks = 200;
  add_lattice_flags(spectral_cmd, c);
  add_run_flags(spectral_cmd, c);
  add_measure_flags(spectral_cmd, c);
  spectral_cmd->add_option("--r", spectral_r, "exploration radius");
  spectral_cmd->add_option("--walk-steps", spectral_steps, "walk length");
  spectral_cmd->add_option("--walks", spectral_walks, "walks per cluster");

  auto* pc_cmd = app.add_subcommand("pc", "finite-size critical-probability locator");
  std::int64_t pc_r = 4;
  double pc_tol = 0.01;
  int pc_stages = 4, pc_iters = 14;
  add_lattice_flags(pc_cmd, c);
  add_run_flags(pc_cmd, c, /*with_p=*/false);
  pc_cmd->add_option("--r-probe", pc_r, "initial probe radius");
  pc_cmd->add_option("--tolerance", pc_tol, "stage-to-stage convergence tolerance");
  pc_cmd->add_option("--stages", pc_stages, "maximum probe-doubling stages");
  pc_cmd->add_option("--bisect-iters", pc_iters, "bisection iterations per stage");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(oracle_cmd)) return run_oracle(c, oa);
    if (app.got_subcommand(sample_cmd)) return run_sample(c, sample_r);
    if (app.got_subcommand(arm_cmd)) return run_arm(c);
    if (app.got_subcommand(growth_cmd)) return run_growth(c, growth_obs);
    if (app.got_subcommand(tails_cmd)) return run_tails(c, tails_target, tails_r);
    if (app.got_subcommand(dim_cmd))
      return run_dimension(c, dim_obs, dim_kmax, dim_beta, dim_mu, dim_side);
    if (app.got_subcommand(iic_cmd)) return run_iic(c, iic_event_r, iic_event_point);
    if (app.got_subcommand(spectral_cmd))
      return run_spectral(c, spectral_r, spectral_steps, spectral_walks);
    if (app.got_subcommand(pc_cmd)) return run_pc(c, pc_r, pc_tol, pc_stages, pc_iters);
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime failure: " << e.what() << "\n";
    return 2;
  }
}
