// subfrac command line front end.
//
// Subcommands: simulate, density, ml, solve, verify, reproduce-all.
// Global flags: --seed, --out, --format {csv,json}, --threads.
// Exit codes: 0 = all checks pass, 1 = a check failed, 2 = usage error,
// 3 = numerical failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <subfrac/subfrac.hpp>

#include "reproduce.hpp"

namespace {

using namespace subfrac;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string out;             // empty = stdout
  std::string format = "csv";  // csv | json
  unsigned threads = 0;        // 0 = SUBFRAC_THREADS or hardware default
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

std::string fmt_list(const std::vector<double>& vs) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? " " : "") << vs[i];
  return os.str();
}

RunConfig make_config(const GlobalOpts& g, std::string command,
                      std::map<std::string, std::string> params) {
  RunConfig cfg;
  cfg.command = std::move(command);
  cfg.params = std::move(params);
  cfg.seed = g.seed;
  cfg.output_path = g.out;
  cfg.format = g.format;
  return cfg;
}

// Writes one report in the selected format.  The JSON envelope carries the
// same table under results.columns/results.rows, so both formats round-trip.
void emit(const GlobalOpts& g, const RunConfig& cfg, nlohmann::json extra_results,
          const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
          std::int64_t wall_ms) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!g.out.empty()) {
    file.open(g.out);
    if (!file) throw evaluation_error("cannot open output path " + g.out);
    os = &file;
  }
  if (g.format == "json") {
    ReportEnvelope env;
    env.config_echo = cfg;
    env.results = std::move(extra_results);
    env.results["columns"] = columns;
    env.results["rows"] = rows;
    env.wall_time_ms = wall_ms;
    *os << to_json_string(env);
    return;
  }
  write_csv(*os, cfg, columns, rows);
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOpts {
  std::string kind;
  double alpha = 1.5;
  double beta = 0.5;
  double t = 1.0;
  std::size_t n = 1000;
  std::size_t steps = 256;
  double z0 = 0.0;
  std::string outer = "brownian";
  double outer_alpha = 1.5;
};

int run_simulate(const GlobalOpts& g, const SimulateOpts& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const RngStream stream{g.seed, 0};
  std::map<std::string, std::string> params{{"kind", o.kind}, {"t", fmt(o.t)}};

  OuterProcess outer;
  if (o.outer == "stable") {
    outer.kind = OuterProcess::Kind::symmetric_stable;
    outer.alpha = o.outer_alpha;
  } else if (o.outer != "brownian") {
    throw parameter_error("simulate: --outer must be brownian or stable");
  }

  std::vector<double> samples;
  SamplePath path;
  bool is_path = false;
  if (o.kind == "gaussian") {
    samples = sample_gaussian(o.n, stream);
  } else if (o.kind == "symmetric-stable") {
    params["alpha"] = fmt(o.alpha);
    samples = sample_symmetric_stable(o.alpha, o.t, o.n, stream);
  } else if (o.kind == "subordinator") {
    params["beta"] = fmt(o.beta);
    samples = sample_stable_subordinator(o.beta, o.t, o.n, stream);
  } else if (o.kind == "inverse-subordinator") {
    params["beta"] = fmt(o.beta);
    samples = sample_inverse_subordinator(o.beta, o.t, o.n, stream);
  } else if (o.kind == "brownian-time") {
    samples = sample_subordinated(BrownianTimeClock{}, outer, o.t, o.n, stream);
  } else if (o.kind == "inverse-stable") {
    params["beta"] = fmt(o.beta);
    samples = sample_subordinated(InverseStableClock{o.beta}, outer, o.t, o.n, stream);
  } else if (o.kind == "alpha-time") {
    params["alpha"] = fmt(o.alpha);
    samples = sample_subordinated(AlphaTimeClock{o.alpha}, outer, o.t, o.n, stream);
  } else if (o.kind == "iterated-bm") {
    params["z0"] = fmt(o.z0);
    samples = sample_subordinated(IteratedBmClock{o.z0}, outer, o.t, o.n, stream);
  } else if (o.kind == "path-brownian" || o.kind == "path-subordinator" ||
             o.kind == "path-stable") {
    is_path = true;
    params["steps"] = std::to_string(o.steps);
    const auto grid = TimeGrid::uniform(o.t, o.steps);
    PathKind pk = BrownianKind{};
    if (o.kind == "path-subordinator") {
      params["beta"] = fmt(o.beta);
      pk = SubordinatorKind{o.beta};
    } else if (o.kind == "path-stable") {
      params["alpha"] = fmt(o.alpha);
      pk = SymmetricStableKind{o.alpha};
    }
    path = simulate_path(pk, grid, stream);
  } else {
    throw parameter_error("simulate: unknown kind \"" + o.kind + "\"");
  }
  if (!is_path) params["n"] = std::to_string(o.n);
  if (o.outer == "stable") params["outer_alpha"] = fmt(o.outer_alpha);

  const auto cfg = make_config(g, "simulate", std::move(params));
  std::vector<std::vector<double>> rows;
  std::vector<std::string> columns;
  if (is_path) {
    columns = {"index", "time", "value"};
    for (std::size_t i = 0; i < path.values.size(); ++i)
      rows.push_back({static_cast<double>(i), path.grid.nodes[i], path.values[i]});
  } else {
    columns = {"index", "value"};
    for (std::size_t i = 0; i < samples.size(); ++i)
      rows.push_back({static_cast<double>(i), samples[i]});
  }
  const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  emit(g, cfg, {}, columns, rows, wall);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// density

struct DensityOpts {
  std::string which;
  double alpha = 1.5;
  double beta = 0.5;
  double t = 1.0;
  double min = 0.01;
  double max = 4.0;
  std::size_t points = 200;
};

int run_density(const GlobalOpts& g, const DensityOpts& o) {
  const auto t0 = std::chrono::steady_clock::now();
  if (o.points < 2) throw parameter_error("density: need at least 2 points");
  if (!(o.min < o.max)) throw parameter_error("density: need min < max");
  std::map<std::string, std::string> params{{"which", o.which},
                                            {"t", fmt(o.t)},
                                            {"min", fmt(o.min)},
                                            {"max", fmt(o.max)},
                                            {"points", std::to_string(o.points)}};
  auto eval = [&](double x) -> double {
    if (o.which == "subordinator") {
      // Self-similarity maps the time-t density onto the time-1 curve.
      const double scale = std::pow(o.t, -1.0 / o.beta);
      return scale * stable_subordinator_density(o.beta, x * scale);
    }
    if (o.which == "inverse-subordinator") return inverse_subordinator_density(o.beta, o.t, x);
    if (o.which == "symmetric-stable") return symmetric_stable_density(o.alpha, o.t, x);
    throw parameter_error("density: unknown curve \"" + o.which + "\"");
  };
  if (o.which == "symmetric-stable")
    params["alpha"] = fmt(o.alpha);
  else
    params["beta"] = fmt(o.beta);

  std::vector<std::vector<double>> rows;
  const double step = (o.max - o.min) / static_cast<double>(o.points - 1);
  for (std::size_t i = 0; i < o.points; ++i) {
    const double x = o.min + step * static_cast<double>(i);
    rows.push_back({x, eval(x)});
  }
  const auto cfg = make_config(g, "density", std::move(params));
  const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  emit(g, cfg, {}, {"x", "density"}, rows, wall);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// ml

struct MlOpts {
  double beta = 0.5;
  std::vector<double> zs;
};

int run_ml(const GlobalOpts& g, const MlOpts& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> zs = o.zs.empty() ? std::vector<double>{-1.0} : o.zs;
  std::vector<std::vector<double>> rows;
  for (const double z : zs) rows.push_back({z, mittag_leffler(o.beta, z)});
  const auto cfg = make_config(
      g, "ml", {{"beta", fmt(o.beta)}, {"z", fmt_list(zs)}});
  const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  emit(g, cfg, {}, {"z", "value"}, rows, wall);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOpts {
  std::string method;
  std::string spec = "eigenfunction";
  double beta = 0.5;
  double alpha = 1.0;
  double lambda = -1.0;
  double sym_alpha = 1.2;
  bool direct = false;
  std::vector<double> ts;
  std::vector<double> xs;
};

SemigroupSpec build_spec(const SolveOpts& o) {
  if (o.spec == "eigenfunction") {
    if (!(o.lambda < 0.0)) throw parameter_error("solve: --lambda must be negative");
    return make_heat_eigenfunction(std::sqrt(-o.lambda));
  }
  const SpatialGrid grid{-16.0 * kPi, 16.0 * kPi, 256};
  auto bump = [](double x) { return std::exp(-0.25 * x * x); };
  if (o.spec == "heat-kernel") return HeatKernelSpec::from_function(grid, bump);
  if (o.spec == "fourier-multiplier")
    return FourierMultiplierSpec::from_function(o.sym_alpha, grid, bump);
  throw parameter_error("solve: unknown spec \"" + o.spec + "\"");
}

int run_solve(const GlobalOpts& g, const SolveOpts& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> ts = o.ts.empty() ? std::vector<double>{1.0} : o.ts;
  const std::vector<double> xs = o.xs.empty() ? std::vector<double>{0.0} : o.xs;
  const SemigroupSpec spec = build_spec(o);

  auto solve_at = [&](double t, double x) -> SolutionValue {
    if (o.method == "brownian-time") return solve_brownian_time(spec, t, x);
    if (o.method == "fractional")
      return o.direct ? solve_fractional_subordination_direct(spec, o.beta, t, x)
                      : solve_fractional_subordination(spec, o.beta, t, x);
    if (o.method == "alpha-time") return solve_alpha_time(spec, o.alpha, t, x);
    throw parameter_error("solve: unknown method \"" + o.method + "\"");
  };

  std::map<std::string, std::string> params{{"method", o.method},
                                            {"spec", o.spec},
                                            {"t", fmt_list(ts)},
                                            {"x", fmt_list(xs)}};
  if (o.method == "fractional") {
    params["beta"] = fmt(o.beta);
    params["route"] = o.direct ? "direct" : "inverse-density";
  }
  if (o.method == "alpha-time") params["alpha"] = fmt(o.alpha);
  if (o.spec == "eigenfunction") params["lambda"] = fmt(o.lambda);
  if (o.spec == "fourier-multiplier") params["sym_alpha"] = fmt(o.sym_alpha);

  std::vector<std::vector<double>> rows;
  for (const double t : ts)
    for (const double x : xs) {
      const auto r = solve_at(t, x);
      rows.push_back({t, x, r.value, r.est_error});
    }
  const auto cfg = make_config(g, "solve", std::move(params));
  const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  emit(g, cfg, {}, {"t", "x", "u", "est_error"}, rows, wall);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOpts {
  std::string check;
  double beta = 0.5;
  double alpha = 0.0;  // 0 = per-check default
  int n_order = 3;
  double lambda = -1.0;
  double x = 0.0;
  std::vector<double> ts;
  std::size_t n = 100000;
};

tools::CheckResult verify_residual_check(const VerifyOpts& o) {
  tools::CheckResult c{o.check, 0.0};
  if (!(o.lambda < 0.0)) throw parameter_error("verify: --lambda must be negative");
  const SemigroupSpec eig = make_heat_eigenfunction(std::sqrt(-o.lambda));
  const std::vector<double> ts = o.ts.empty() ? std::vector<double>{0.5, 1.0, 2.0} : o.ts;

  if (o.check == "ibm-pde") {
    const auto bt = residual_ibm_pde(eig, ts, o.x, IbmRoute::brownian_time);
    c.add_below("ibm_brownian_route", bt.max_rel_residual, 1e-5);
    const auto fr = residual_ibm_pde(eig, ts, o.x, IbmRoute::fractional_half);
    c.add_below("ibm_fractional_route", fr.max_rel_residual, 1e-5);
    const auto planted =
        residual_ibm_pde(eig, ts, o.x, IbmRoute::brownian_time, PdeSolution::planted_exponential);
    c.add("planted_rejected", planted.max_rel_residual, 0.05, planted.max_rel_residual > 0.05);
    return c;
  }
  if (o.check == "fractional-pde") {
    const auto fine = residual_fractional(eig, o.beta, ts, o.x);
    c.add_below("fractional_caputo", fine.max_rel_residual, 1e-3);
    const auto coarse = residual_fractional(eig, o.beta, ts, o.x, PdeSolution::from_solver, 512);
    const double order =
        std::log(coarse.max_rel_residual / fine.max_rel_residual) / std::log(4.0);
    c.add("l1_refinement_order", order, 1.4, order >= 1.4);
    const auto planted =
        residual_fractional(eig, o.beta, ts, o.x, PdeSolution::planted_exponential);
    c.add("planted_rejected", planted.max_rel_residual, 0.05, planted.max_rel_residual > 0.05);
    return c;
  }
  if (o.check == "n-order") {
    const auto r = residual_n_order(eig, o.n_order, ts, o.x);
    c.add_below("n_order_residual", r.max_rel_residual, 1e-4);
    // Diagnostic block: both exponent conventions at the discriminating
    // lattice (lambda = -4, t != 1; the conventions coincide at t = 1).
    const SemigroupSpec eig4 = make_heat_eigenfunction(2.0);
    const std::vector<double> ts_off{0.5, 2.0};
    const auto kept = residual_n_order(eig4, o.n_order, ts_off, o.x);
    c.add_below("diag_exponent_jn_minus_one", kept.max_rel_residual, 1e-4);
    const auto printed = residual_n_order(eig4, o.n_order, ts_off, o.x,
                                          DriftExponentConvention::one_minus_jn);
    c.add("diag_exponent_one_minus_jn", printed.max_rel_residual, 0.05,
          printed.max_rel_residual > 0.05);
    const auto planted = residual_n_order(eig, o.n_order, ts, o.x,
                                          DriftExponentConvention::jn_minus_one,
                                          PdeSolution::planted_exponential);
    c.add("planted_rejected", planted.max_rel_residual, 0.05, planted.max_rel_residual > 0.05);
    return c;
  }
  if (o.check == "alpha-time-pde") {
    const double alpha = o.alpha == 0.0 ? 1.0 : o.alpha;
    const double threshold = alpha == 1.0 ? 1e-4 : 1e-3;
    const auto r = residual_alpha_time_pde(eig, alpha, ts, o.x);
    c.add_below("alpha_time_residual", r.max_rel_residual, threshold);
    const auto planted =
        residual_alpha_time_pde(eig, alpha, ts, o.x, PdeSolution::planted_exponential);
    c.add("planted_rejected", planted.max_rel_residual, 0.05, planted.max_rel_residual > 0.05);
    return c;
  }
  if (o.check == "kernel-pde") {
    const double t = ts.front();
    const auto k11 = stable_kernel_pde_residual(1, 1, t, 0.5);
    c.add_below("kernel_alpha1", k11.max_rel_residual, 1e-8);
    const auto k12 = stable_kernel_pde_residual(1, 2, t, 0.0);
    c.add_below("kernel_half", k12.max_rel_residual, 1e-6);
    return c;
  }
  throw parameter_error("verify: unknown check \"" + o.check + "\"");
}

int run_verify(const GlobalOpts& g, const VerifyOpts& o) {
  const auto t0 = std::chrono::steady_clock::now();
  tools::SuiteParams sp;
  sp.seed = g.seed;
  sp.threads = g.threads;
  sp.n_ks_override = o.n;
  sp.n_tail_override = o.n;

  tools::CheckResult result;
  if (o.check == "corollary-ks") {
    result = tools::run_ks_check("corollary-ks", BrownianTimeClock{}, InverseStableClock{0.5},
                                 tools::streams::kCorollary, false, sp);
  } else if (o.check == "noneq-ks") {
    const double alpha = o.alpha == 0.0 ? 1.5 : o.alpha;
    if (!(alpha > 1.0) || alpha > 2.0)
      throw parameter_error("verify: noneq-ks needs alpha in (1, 2]");
    result = tools::run_ks_check("noneq-ks", InverseStableClock{1.0 - 1.0 / alpha},
                                 AlphaTimeClock{alpha}, tools::streams::kNoneq, true, sp);
  } else if (o.check == "tails") {
    result = tools::check_tails(sp);
  } else {
    result = verify_residual_check(o);
  }

  std::map<std::string, std::string> params{{"check", o.check}};
  if (!o.ts.empty()) params["t"] = fmt_list(o.ts);
  if (o.check == "corollary-ks" || o.check == "noneq-ks" || o.check == "tails")
    params["n"] = std::to_string(o.n);
  const auto cfg = make_config(g, "verify", std::move(params));

  nlohmann::json extra;
  extra["check"] = result.name;
  extra["pass"] = result.pass;
  nlohmann::json items = nlohmann::json::array();
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    items.push_back(
        {{"name", r.name}, {"value", r.value}, {"threshold", r.threshold}, {"pass", r.pass}});
    rows.push_back({static_cast<double>(i), r.value, r.threshold, r.pass ? 1.0 : 0.0});
  }
  extra["measurements"] = items;
  const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  RunConfig named = cfg;
  for (std::size_t i = 0; i < result.rows.size(); ++i)
    named.params["row " + std::to_string(i)] = result.rows[i].name;
  emit(g, named, std::move(extra), {"row", "value", "threshold", "pass"}, rows, wall);
  return result.pass ? kExitPass : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// reproduce-all

int run_reproduce(const GlobalOpts& g, bool quick, const std::string& out_dir) {
  tools::SuiteParams sp;
  sp.quick = quick;
  sp.seed = g.seed;
  sp.threads = g.threads;
  auto cfg = make_config(g, "reproduce-all",
                         {{"mode", quick ? "quick" : "full"}, {"out_dir", out_dir}});
  cfg.output_path = out_dir;
  const auto env = tools::reproduce_all(sp, out_dir, cfg);
  std::cout << to_json_string(env);
  return env.results.at("all_pass").get<bool>() ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subordinated stochastic processes: sampling, densities, PDE solvers, checks"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "base RNG seed")->capture_default_str();
  app.add_option("--out", g.out, "output path (reproduce-all: output directory)");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = auto)")->capture_default_str();

  SimulateOpts sim;
  auto* c_sim = app.add_subcommand("simulate", "draw samples or a path");
  c_sim->add_option("--kind", sim.kind,
                    "gaussian | symmetric-stable | subordinator | inverse-subordinator | "
                    "brownian-time | inverse-stable | alpha-time | iterated-bm | "
                    "path-brownian | path-subordinator | path-stable")
      ->required();
  c_sim->add_option("--alpha", sim.alpha, "stable index")->capture_default_str();
  c_sim->add_option("--beta", sim.beta, "subordinator index")->capture_default_str();
  c_sim->add_option("--t", sim.t, "time (or path horizon)")->capture_default_str();
  c_sim->add_option("--n", sim.n, "sample count")->capture_default_str();
  c_sim->add_option("--steps", sim.steps, "path steps")->capture_default_str();
  c_sim->add_option("--z0", sim.z0, "iterated-bm start point")->capture_default_str();
  c_sim->add_option("--outer", sim.outer, "outer process: brownian | stable")
      ->capture_default_str();
  c_sim->add_option("--outer-alpha", sim.outer_alpha, "outer stable index")
      ->capture_default_str();

  DensityOpts den;
  auto* c_den = app.add_subcommand("density", "evaluate a density on a grid");
  c_den->add_option("--which", den.which,
                    "subordinator | inverse-subordinator | symmetric-stable")
      ->required();
  c_den->add_option("--alpha", den.alpha, "stable index")->capture_default_str();
  c_den->add_option("--beta", den.beta, "subordinator index")->capture_default_str();
  c_den->add_option("--t", den.t, "time")->capture_default_str();
  c_den->add_option("--min", den.min, "grid start")->capture_default_str();
  c_den->add_option("--max", den.max, "grid end")->capture_default_str();
  c_den->add_option("--points", den.points, "grid points")->capture_default_str();

  MlOpts ml;
  auto* c_ml = app.add_subcommand("ml", "evaluate the Mittag-Leffler function");
  c_ml->add_option("--beta", ml.beta, "order in (0, 1]")->capture_default_str();
  c_ml->add_option("--z", ml.zs, "argument(s); default -1");

  SolveOpts sol;
  auto* c_sol = app.add_subcommand("solve", "evaluate a time-changed solution u(t, x)");
  c_sol->add_option("--method", sol.method, "brownian-time | fractional | alpha-time")
      ->required();
  c_sol->add_option("--spec", sol.spec, "eigenfunction | heat-kernel | fourier-multiplier")
      ->capture_default_str();
  c_sol->add_option("--beta", sol.beta, "fractional order")->capture_default_str();
  c_sol->add_option("--alpha", sol.alpha, "alpha-time index")->capture_default_str();
  c_sol->add_option("--lambda", sol.lambda, "eigenvalue (negative)")->capture_default_str();
  c_sol->add_option("--sym-alpha", sol.sym_alpha, "multiplier symbol exponent")
      ->capture_default_str();
  c_sol->add_flag("--direct", sol.direct, "fractional: use the direct subordinator route");
  c_sol->add_option("--t", sol.ts, "time(s); default 1");
  c_sol->add_option("--x", sol.xs, "position(s); default 0");

  VerifyOpts ver;
  auto* c_ver = app.add_subcommand("verify", "run a named check; exit 0 iff it passes");
  c_ver->add_option("--check", ver.check,
                    "ibm-pde | fractional-pde | n-order | alpha-time-pde | kernel-pde | "
                    "corollary-ks | noneq-ks | tails")
      ->required();
  c_ver->add_option("--beta", ver.beta, "fractional order")->capture_default_str();
  c_ver->add_option("--alpha", ver.alpha, "stable index (0 = per-check default)")
      ->capture_default_str();
  c_ver->add_option("--n-order", ver.n_order, "PDE order n in {2, 3, 4}")
      ->capture_default_str();
  c_ver->add_option("--lambda", ver.lambda, "eigenvalue (negative)")->capture_default_str();
  c_ver->add_option("--x", ver.x, "evaluation position")->capture_default_str();
  c_ver->add_option("--t", ver.ts, "evaluation time(s); default 0.5 1 2");
  c_ver->add_option("--n", ver.n, "Monte Carlo sample count")->capture_default_str();

  bool quick = false;
  auto* c_rep = app.add_subcommand("reproduce-all", "run the full acceptance suite");
  c_rep->add_flag("--quick", quick, "reduced Monte Carlo budgets, same verdicts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*c_sim) return run_simulate(g, sim);
    if (*c_den) return run_density(g, den);
    if (*c_ml) return run_ml(g, ml);
    if (*c_sol) return run_solve(g, sol);
    if (*c_ver) return run_verify(g, ver);
    if (*c_rep) return run_reproduce(g, quick, g.out.empty() ? "reproduce-out" : g.out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
