#pragma once
// Acceptance-suite drivers behind `verify` and `reproduce-all`: each check
// returns named measurements plus an artifact table, and the reproduce driver
// writes one CSV per check, plot data, a gnuplot script, and summary.json.
//
// Stream layout: every Monte Carlo consumer owns a disjoint stream_id block,
// and batched draws advance one stream per 65536-sample batch.  The batch
// decomposition is fixed, so results do not depend on the thread count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <subfrac/subfrac.hpp>

namespace subfrac::tools {

struct MeasurementRow {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = true;
};

struct CheckResult {
  std::string name;
  double budget_s = 0.0;
  bool pass = true;
  std::int64_t wall_ms = 0;
  std::vector<MeasurementRow> rows;
  std::vector<std::string> columns;          // per-check CSV artifact
  std::vector<std::vector<double>> table;

  CheckResult() = default;
  CheckResult(std::string check_name, double budget)
      : name(std::move(check_name)), budget_s(budget) {}

  void add(std::string row_name, double value, double threshold, bool ok) {
    rows.push_back({std::move(row_name), value, threshold, ok});
    pass = pass && ok;
  }
  void add_below(std::string row_name, double value, double threshold) {
    add(std::move(row_name), value, threshold, value < threshold);
  }
};

struct SuiteParams {
  bool quick = false;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 = default_thread_count()
  // Nonzero overrides let `verify` honor an explicit --n.
  std::size_t n_ks_override = 0;
  std::size_t n_mc_override = 0;
  std::size_t n_lt_override = 0;
  std::size_t n_tail_override = 0;

  unsigned resolved_threads() const { return threads == 0 ? default_thread_count() : threads; }
  // Quick mode shrinks each Monte Carlo budget only as far as the verdicts
  // stay where the full run puts them; the KS checks keep n = 5e4 because the
  // non-equivalence distance (~0.017) needs the critical value well below it.
  std::size_t n_ks() const { return n_ks_override ? n_ks_override : (quick ? 50'000 : 100'000); }
  std::size_t n_mc() const { return n_mc_override ? n_mc_override : (quick ? 50'000 : 1'000'000); }
  std::size_t n_lt() const { return n_lt_override ? n_lt_override : (quick ? 50'000 : 1'000'000); }
  std::size_t n_tail() const {
    return n_tail_override ? n_tail_override : (quick ? 200'000 : 1'000'000);
  }
};

namespace streams {
// stream_id bases; spacing 256 dominates the 16 batches a 1e6 draw needs.
inline constexpr std::uint64_t kCorollary = 0x40000;
inline constexpr std::uint64_t kNoneq = 0x50000;
inline constexpr std::uint64_t kLaplace = 0x60000;
inline constexpr std::uint64_t kTails = 0x70000;
inline constexpr std::uint64_t kMc = 0x80000;
inline constexpr std::uint64_t kPlots = 0x90000;
}  // namespace streams

inline constexpr std::size_t kSampleBatch = 65536;

// Fn: (RngStream, count) -> std::vector<double>.  Batch b draws from
// stream_base + b regardless of which thread runs it.
template <class Fn>
std::vector<double> sample_batched(std::size_t n, std::uint64_t seed, std::uint64_t stream_base,
                                   unsigned threads, Fn&& fn) {
  std::vector<double> out(n);
  parallel_batches(n, kSampleBatch, threads, [&](std::size_t bidx, std::size_t off, std::size_t cnt) {
    const auto v = fn(RngStream{seed, stream_base + bidx}, cnt);
    std::copy(v.begin(), v.end(), out.begin() + off);
  });
  return out;
}

inline std::vector<double> sample_clock_batched(const SubordinationKind& kind, double t,
                                                std::size_t n, std::uint64_t seed,
                                                std::uint64_t stream_base, unsigned threads) {
  return sample_batched(n, seed, stream_base, threads, [&](RngStream s, std::size_t cnt) {
    return sample_subordinated(kind, OuterProcess{}, t, cnt, s);
  });
}

struct MeanEstimate {
  double mean = 0.0;
  double sd_of_mean = 0.0;
};

inline MeanEstimate mc_mean(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double var = 0.0;
  for (const double x : xs) var += (x - mean) * (x - mean);
  var /= (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

namespace detail_suite {

inline std::vector<std::pair<std::string, SemigroupSpec>> theorem_specs() {
  const SpatialGrid grid{-16.0 * kPi, 16.0 * kPi, 256};
  auto bump = [](double x) { return std::exp(-0.25 * x * x); };
  std::vector<std::pair<std::string, SemigroupSpec>> specs;
  specs.emplace_back("eigen_lambda_-1", make_heat_eigenfunction(1.0));
  specs.emplace_back("eigen_lambda_-4", make_heat_eigenfunction(2.0));
  specs.emplace_back("heat_kernel", HeatKernelSpec::from_function(grid, bump));
  specs.emplace_back("fourier_multiplier",
                     FourierMultiplierSpec::from_function(1.2, grid, bump));
  return specs;
}

// Residual table rows: (check_id, t, relative residual per evaluation point).
inline void append_report(CheckResult& c, double check_id, const ResidualReport& r) {
  for (std::size_t i = 0; i < r.residuals.size(); ++i)
    c.table.push_back({check_id, r.eval_points[i].first, std::fabs(r.residuals[i]) / r.scale});
}

}  // namespace detail_suite

inline CheckResult check_theorem1(const SuiteParams&) {
  CheckResult c{"theorem1-equality", 10.0};
  c.columns = {"spec", "t", "x", "u_brownian_time", "u_fractional_half", "abs_diff"};
  double max_diff = 0.0;
  const auto specs = detail_suite::theorem_specs();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (const double t : {0.1, 1.0, 10.0}) {
      for (const double x : {0.0, 1.0}) {
        const double a = solve_brownian_time(specs[i].second, t, x).value;
        const double b = solve_fractional_subordination(specs[i].second, 0.5, t, x).value;
        const double diff = std::fabs(a - b);
        max_diff = std::max(max_diff, diff);
        c.table.push_back({static_cast<double>(i), t, x, a, b, diff});
      }
    }
  }
  c.add_below("max_abs_diff", max_diff, 1e-8);
  return c;
}

inline CheckResult check_ml_oracle(const SuiteParams&) {
  CheckResult c{"ml-oracle", 5.0};
  c.columns = {"beta", "lambda", "t", "u_solver", "ml_reference", "abs_diff"};
  double max_diff = 0.0;
  for (const double beta : {1.0 / 3.0, 0.5, 2.0 / 3.0}) {
    for (const double lambda : {-1.0, -4.0}) {
      const SemigroupSpec eig = make_heat_eigenfunction(std::sqrt(-lambda));
      for (const double t : {0.1, 1.0, 2.0}) {
        const double u = solve_fractional_subordination(eig, beta, t, 0.0).value;
        const double ref = mittag_leffler(beta, lambda * std::pow(t, beta));
        const double diff = std::fabs(u - ref);
        max_diff = std::max(max_diff, diff);
        c.table.push_back({beta, lambda, t, u, ref, diff});
      }
    }
  }
  c.add_below("max_abs_diff_vs_ml", max_diff, 1e-6);

  // The beta = 1/2, lambda = -1, t = 1 point against two closed-form routes,
  // plus two reference values frozen from an independent multiprecision run.
  const SemigroupSpec eig1 = make_heat_eigenfunction(1.0);
  const SemigroupSpec eig2 = make_heat_eigenfunction(2.0);
  const double u_half = solve_fractional_subordination(eig1, 0.5, 1.0, 0.0).value;
  c.add_below("half_point_vs_erfc", std::fabs(u_half - std::exp(1.0) * std::erfc(1.0)), 1e-6);
  c.add_below("half_point_vs_spectral", std::fabs(u_half - mittag_leffler(0.5, -1.0)), 1e-6);
  const double u_third = solve_fractional_subordination(eig2, 1.0 / 3.0, 2.0, 0.0).value;
  c.add_below("frozen_third", std::fabs(u_third - 0.132145620657795536), 1e-6);
  const double u_two_thirds = solve_fractional_subordination(eig2, 2.0 / 3.0, 2.0, 0.0).value;
  c.add_below("frozen_two_thirds", std::fabs(u_two_thirds - 0.064577136213631231), 1e-6);
  return c;
}

inline CheckResult check_residuals(const SuiteParams&) {
  CheckResult c{"pde-residuals", 60.0};
  c.columns = {"check_id", "t", "rel_residual"};
  const SemigroupSpec eig1 = make_heat_eigenfunction(1.0);
  const SemigroupSpec eig2 = make_heat_eigenfunction(2.0);
  const std::vector<double> ts_wide{0.1, 1.0, 10.0};
  const std::vector<double> ts_mid{0.5, 1.0, 2.0};
  const std::vector<double> ts_half{0.5, 1.0};
  const std::vector<double> ts_off{0.5, 2.0};

  const auto ibm_bt = residual_ibm_pde(eig1, ts_wide, 0.0, IbmRoute::brownian_time);
  detail_suite::append_report(c, 1, ibm_bt);
  c.add_below("ibm_brownian_route", ibm_bt.max_rel_residual, 1e-5);
  const auto ibm_fr = residual_ibm_pde(eig1, ts_wide, 0.0, IbmRoute::fractional_half);
  detail_suite::append_report(c, 2, ibm_fr);
  c.add_below("ibm_fractional_route", ibm_fr.max_rel_residual, 1e-5);

  const auto frac_half = residual_fractional(eig1, 0.5, ts_half, 0.0);
  detail_suite::append_report(c, 3, frac_half);
  c.add_below("fractional_caputo_half", frac_half.max_rel_residual, 1e-3);
  const auto frac_coarse =
      residual_fractional(eig1, 0.5, ts_half, 0.0, PdeSolution::from_solver, 512);
  const double order =
      std::log(frac_coarse.max_rel_residual / frac_half.max_rel_residual) / std::log(4.0);
  c.add("fractional_l1_order", order, 1.4, order >= 1.4);
  const auto frac_third = residual_fractional(eig1, 1.0 / 3.0, ts_mid, 0.0);
  detail_suite::append_report(c, 4, frac_third);
  c.add_below("fractional_caputo_third", frac_third.max_rel_residual, 1e-3);

  const auto n3 = residual_n_order(eig1, 3, ts_mid, 0.0);
  detail_suite::append_report(c, 5, n3);
  c.add_below("n_order_3", n3.max_rel_residual, 1e-4);
  // Exponent diagnostic: the drift term printed with t^{1-j/n} instead of
  // t^{j/n-1} must fail visibly away from t = 1 (they coincide there), and
  // the discriminating case needs lambda = -4: at lambda = -1 the j = 1 and
  // j = 2 mismatches nearly cancel.
  const auto n3_alt =
      residual_n_order(eig2, 3, ts_off, 0.0, DriftExponentConvention::one_minus_jn);
  c.add("n_order_3_printed_exponent", n3_alt.max_rel_residual, 0.05,
        n3_alt.max_rel_residual > 0.05);
  const auto n3_ours = residual_n_order(eig2, 3, ts_off, 0.0);
  c.add_below("n_order_3_kept_exponent", n3_ours.max_rel_residual, 1e-4);

  const auto at1 = residual_alpha_time_pde(eig1, 1.0, ts_mid, 0.0);
  detail_suite::append_report(c, 6, at1);
  c.add_below("alpha_time_1", at1.max_rel_residual, 1e-4);
  const auto at_half = residual_alpha_time_pde(eig1, 0.5, ts_mid, 0.0);
  detail_suite::append_report(c, 7, at_half);
  c.add_below("alpha_time_half", at_half.max_rel_residual, 1e-3);

  const auto k11 = stable_kernel_pde_residual(1, 1, 1.0, 0.5);
  detail_suite::append_report(c, 8, k11);
  c.add_below("kernel_pde_alpha1", k11.max_rel_residual, 1e-8);
  const auto k12 = stable_kernel_pde_residual(1, 2, 1.0, 0.0);
  detail_suite::append_report(c, 9, k12);
  c.add_below("kernel_pde_half", k12.max_rel_residual, 1e-6);

  // Every residual operator must reject a planted classical exponential.
  const auto planted = [](const ResidualReport& r) { return r.max_rel_residual; };
  c.add("planted_ibm",
        planted(residual_ibm_pde(eig1, ts_wide, 0.0, IbmRoute::brownian_time,
                                 PdeSolution::planted_exponential)),
        0.05, true);
  c.add("planted_fractional",
        planted(residual_fractional(eig1, 0.5, ts_half, 0.0, PdeSolution::planted_exponential)),
        0.05, true);
  c.add("planted_n_order",
        planted(residual_n_order(eig1, 3, ts_mid, 0.0, DriftExponentConvention::jn_minus_one,
                                 PdeSolution::planted_exponential)),
        0.05, true);
  c.add("planted_alpha_time_1",
        planted(residual_alpha_time_pde(eig1, 1.0, ts_mid, 0.0,
                                        PdeSolution::planted_exponential)),
        0.05, true);
  c.add("planted_alpha_time_half",
        planted(residual_alpha_time_pde(eig1, 0.5, ts_mid, 0.0,
                                        PdeSolution::planted_exponential)),
        0.05, true);
  // Kernel plant: feed the alpha = 1.2 kernel into the alpha = 1 equation by
  // mismatching the two Fourier routes.
  {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-11;
    const double space = -subfrac::detail::stable_fourier_integral<61>(1.0, 1.0, 0.5, 2, cfg).value / kPi;
    const double time = subfrac::detail::stable_fourier_integral<15>(1.2, 1.0, 0.5, 2, cfg).value / kPi;
    const double scale = std::max(std::fabs(space), std::fabs(time));
    c.add("planted_kernel", std::fabs(space + time) / scale, 0.05, true);
  }
  // The planted rows' pass flags were deferred: enforce them all at once.
  for (auto& row : c.rows)
    if (row.name.rfind("planted_", 0) == 0) {
      row.pass = row.value > row.threshold;
      c.pass = c.pass && row.pass;
    }
  return c;
}

inline CheckResult run_ks_check(const char* name, const SubordinationKind& ka,
                                const SubordinationKind& kb, std::uint64_t stream_base,
                                bool expect_reject, const SuiteParams& sp) {
  CheckResult c{name, 30.0};
  c.columns = {"pair", "distance", "critical_5pct", "reject"};
  const std::size_t n = sp.n_ks();
  const unsigned threads = sp.resolved_threads();
  int rejects = 0;
  for (int p = 0; p < 10; ++p) {
    auto a = sample_clock_batched(ka, 1.0, n, sp.seed, stream_base + 256u * p, threads);
    auto b = sample_clock_batched(kb, 1.0, n, sp.seed, stream_base + 256u * p + 128u, threads);
    const auto r =
        ks_statistic(EmpiricalDistribution(std::move(a)), EmpiricalDistribution(std::move(b)));
    rejects += r.reject_5pct ? 1 : 0;
    c.table.push_back({static_cast<double>(p), r.distance, r.critical_5pct,
                       r.reject_5pct ? 1.0 : 0.0});
  }
  if (expect_reject)
    c.add("rejects_of_10", rejects, 10.0, rejects == 10);
  else
    c.add("rejects_of_10", rejects, 1.0, rejects <= 1);
  return c;
}

inline CheckResult check_corollary_ks(const SuiteParams& sp) {
  return run_ks_check("corollary-ks", BrownianTimeClock{}, InverseStableClock{0.5},
                      streams::kCorollary, false, sp);
}

// Non-equivalence pairs X(E_1) at beta = 1 - 1/alpha with X(|Y_1|), Y
// symmetric alpha-stable; the distributions differ and KS must say so.
inline CheckResult check_noneq_ks(const SuiteParams& sp) {
  return run_ks_check("noneq-ks", InverseStableClock{1.0 / 3.0}, AlphaTimeClock{1.5},
                      streams::kNoneq, true, sp);
}

inline CheckResult check_transforms(const SuiteParams& sp) {
  CheckResult c{"transform-identities", 60.0};
  c.columns = {"beta", "s", "empirical_lt", "reference", "z_score"};
  const std::size_t n = sp.n_lt();
  const unsigned threads = sp.resolved_threads();
  const std::vector<double> betas{1.0 / 3.0, 0.5, 2.0 / 3.0};

  double max_z = 0.0;
  for (std::size_t bi = 0; bi < betas.size(); ++bi) {
    const double beta = betas[bi];
    const auto draws =
        sample_batched(n, sp.seed, streams::kLaplace + 4096u * bi, threads,
                       [&](RngStream s, std::size_t cnt) {
                         return sample_stable_subordinator(beta, 1.0, cnt, s);
                       });
    for (const double s : {0.5, 1.0, 2.0, 4.0}) {
      std::vector<double> lt(draws.size());
      for (std::size_t i = 0; i < draws.size(); ++i) lt[i] = std::exp(-s * draws[i]);
      const auto est = mc_mean(lt);
      const double ref = std::exp(-std::pow(s, beta));
      const double z = std::fabs(est.mean - ref) / est.sd_of_mean;
      max_z = std::max(max_z, z);
      c.table.push_back({beta, s, est.mean, ref, z});
    }
  }
  c.add_below("empirical_lt_max_z", max_z, 4.0);

  QuadratureConfig cfg;
  double max_lt_err = 0.0, max_mass_err = 0.0;
  for (const double beta : betas) {
    const double cutoff = stable_subordinator_tail_cutoff(beta, 1e-8);
    for (const double s : {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
      const auto r = integrate_semi_infinite(
          [&](double u) { return std::exp(-s * u) * stable_subordinator_density(beta, u); },
          cutoff, cfg);
      const double ref = (s == 0.0) ? 1.0 : std::exp(-std::pow(s, beta));
      const double err = std::fabs(r.value - ref);
      if (s == 0.0)
        max_mass_err = std::max(max_mass_err, err);
      else
        max_lt_err = std::max(max_lt_err, err);
    }
  }
  c.add_below("quadrature_lt_max_err", max_lt_err, 1e-6);
  c.add_below("gbeta_mass_err", max_mass_err, 1e-6);

  double max_inv_mass_err = 0.0;
  for (const double beta : betas) {
    for (const double t : {1.0, 2.0}) {
      const double cutoff = inverse_subordinator_tail_cutoff(beta, t, 1e-8);
      const auto r = integrate_semi_infinite(
          [&](double x) { return inverse_subordinator_density(beta, t, x); }, cutoff, cfg);
      max_inv_mass_err = std::max(max_inv_mass_err, std::fabs(r.value - 1.0));
    }
  }
  c.add_below("inverse_density_mass_err", max_inv_mass_err, 1e-6);
  return c;
}

inline CheckResult check_tails(const SuiteParams& sp) {
  CheckResult c{"tail-exponents", 60.0};
  c.columns = {"alpha", "k", "estimate", "ci_low", "ci_high"};
  const std::size_t n = sp.n_tail();
  const unsigned threads = sp.resolved_threads();

  struct Pick {
    double alpha;
    std::size_t k_full, k_quick;
  };
  // k per alpha: the alpha = 1.8 tail turns on later, so its usable order
  // statistics are fewer before second-order bias exceeds 10%.
  const std::vector<Pick> picks{{1.2, 5000, 2000}, {1.5, 5000, 2000}, {1.8, 1000, 400}};
  // Hill needs 10k positive samples and only about half the draws are; the
  // n/25 cap keeps an explicit small --n inside that constraint.
  const std::size_t k_cap = std::max<std::size_t>(50, n / 25);
  std::size_t idx = 0;
  for (const auto& pick : picks) {
    const auto draws = sample_batched(n, sp.seed, streams::kTails + 4096u * idx++, threads,
                                      [&](RngStream s, std::size_t cnt) {
                                        return sample_symmetric_stable(pick.alpha, 1.0, cnt, s);
                                      });
    const std::size_t k = std::min(sp.quick ? pick.k_quick : pick.k_full, k_cap);
    const auto fit = tail_exponent(EmpiricalDistribution(draws), k);
    const double rel = std::fabs(fit.estimated_index - pick.alpha) / pick.alpha;
    c.table.push_back({pick.alpha, static_cast<double>(k), fit.estimated_index, fit.ci_low,
                       fit.ci_high});
    std::ostringstream name;
    name << "hill_rel_err_alpha_" << pick.alpha;
    c.add_below(name.str(), rel, 0.10);
  }

  // Half-normal side: inverse-subordinator samples at beta = 1/2 must fail a
  // power-law fit (the Hill estimate drifts with k), while a genuine stable
  // tail stays consistent under the same test.
  const std::size_t k_small = std::min(sp.quick ? std::size_t{500} : std::size_t{1000},
                                       std::max<std::size_t>(50, n / 200));
  const std::size_t k_large = std::min(sp.quick ? std::size_t{4000} : std::size_t{8000},
                                       std::max<std::size_t>(100, n / 25));
  {
    const auto e = sample_batched(n, sp.seed, streams::kTails + 4096u * 8u, threads,
                                  [&](RngStream s, std::size_t cnt) {
                                    return sample_inverse_subordinator(0.5, 1.0, cnt, s);
                                  });
    const auto drift = power_law_drift(EmpiricalDistribution(e), k_small, k_large);
    c.table.push_back({-1.0, static_cast<double>(k_small), drift.small_k.estimated_index,
                       drift.small_k.ci_low, drift.small_k.ci_high});
    c.table.push_back({-1.0, static_cast<double>(k_large), drift.large_k.estimated_index,
                       drift.large_k.ci_low, drift.large_k.ci_high});
    c.add("half_normal_powerlaw_rejected", drift.consistent ? 0.0 : 1.0, 1.0, !drift.consistent);
  }
  {
    const auto s15 = sample_batched(n, sp.seed, streams::kTails + 4096u * 9u, threads,
                                    [&](RngStream s, std::size_t cnt) {
                                      return sample_symmetric_stable(1.5, 1.0, cnt, s);
                                    });
    const auto drift = power_law_drift(EmpiricalDistribution(s15), k_small, k_large);
    c.add("stable_drift_consistent", drift.consistent ? 1.0 : 0.0, 1.0, drift.consistent);
  }
  return c;
}

inline CheckResult check_mc_vs_quadrature(const SuiteParams& sp) {
  CheckResult c{"mc-vs-quadrature", 60.0};
  c.columns = {"kind", "mc_mean", "solver_value", "z_score"};
  const std::size_t n = sp.n_mc();
  const unsigned threads = sp.resolved_threads();
  const SemigroupSpec eig = make_heat_eigenfunction(1.0);

  struct Case {
    const char* label;
    SubordinationKind kind;
    double solver_value;
  };
  const std::vector<Case> cases{
      {"brownian_time", BrownianTimeClock{}, solve_brownian_time(eig, 1.0, 0.0).value},
      {"inverse_stable", InverseStableClock{0.5},
       solve_fractional_subordination(eig, 0.5, 1.0, 0.0).value},
      {"alpha_time", AlphaTimeClock{1.0}, solve_alpha_time(eig, 1.0, 1.0, 0.0).value},
      {"iterated_bm", IteratedBmClock{0.0}, solve_brownian_time(eig, 1.0, 0.0).value},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto z = sample_clock_batched(cases[i].kind, 1.0, n, sp.seed,
                                        streams::kMc + 256u * i, threads);
    std::vector<double> cosz(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) cosz[j] = std::cos(z[j]);
    const auto est = mc_mean(cosz);
    const double zscore = std::fabs(est.mean - cases[i].solver_value) / est.sd_of_mean;
    c.table.push_back({static_cast<double>(i), est.mean, cases[i].solver_value, zscore});
    std::ostringstream name;
    name << "mc_z_" << cases[i].label;
    c.add_below(name.str(), zscore, 4.0);
  }
  return c;
}

inline std::vector<CheckResult> run_acceptance_suite(const SuiteParams& sp) {
  using Clock = std::chrono::steady_clock;
  std::vector<CheckResult> checks;
  const std::vector<CheckResult (*)(const SuiteParams&)> runners{
      &check_theorem1,     &check_ml_oracle, &check_residuals,
      &check_corollary_ks, &check_noneq_ks,  &check_transforms,
      &check_tails,        &check_mc_vs_quadrature};
  for (const auto runner : runners) {
    const auto t0 = Clock::now();
    CheckResult c = runner(sp);
    c.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    const double wall_s = static_cast<double>(c.wall_ms) / 1000.0;
    c.add("runtime_s", wall_s, c.budget_s, wall_s < c.budget_s);
    checks.push_back(std::move(c));
  }
  return checks;
}

inline nlohmann::json suite_to_json(const std::vector<CheckResult>& checks, bool quick) {
  nlohmann::json out;
  out["mode"] = quick ? "quick" : "full";
  bool all_pass = true;
  nlohmann::json items = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : c.rows)
      rows.push_back({{"name", r.name},
                      {"value", r.value},
                      {"threshold", r.threshold},
                      {"pass", r.pass}});
    items.push_back({{"name", c.name},
                     {"pass", c.pass},
                     {"wall_ms", c.wall_ms},
                     {"budget_s", c.budget_s},
                     {"rows", rows}});
    all_pass = all_pass && c.pass;
  }
  out["checks"] = items;
  out["all_pass"] = all_pass;
  return out;
}

namespace detail_suite {

inline void write_check_csv(const std::filesystem::path& path, const RunConfig& base,
                            const CheckResult& c) {
  RunConfig cfg = base;
  cfg.command = "reproduce-all:" + c.name;
  std::ofstream os(path);
  if (!os) throw evaluation_error("reproduce-all: cannot open " + path.string());
  if (!c.table.empty()) {
    write_csv(os, cfg, c.columns, c.table);
    return;
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < c.rows.size(); ++i)
    rows.push_back({static_cast<double>(i), c.rows[i].value, c.rows[i].threshold,
                    c.rows[i].pass ? 1.0 : 0.0});
  RunConfig named = cfg;
  for (std::size_t i = 0; i < c.rows.size(); ++i)
    named.params["row " + std::to_string(i)] = c.rows[i].name;
  write_csv(os, named, {"row", "value", "threshold", "pass"}, rows);
}

inline void write_plot_data(const std::filesystem::path& dir, const RunConfig& base,
                            const SuiteParams& sp) {
  // Subordinator density curves.
  {
    RunConfig cfg = base;
    cfg.command = "reproduce-all:plot-gbeta";
    std::vector<std::vector<double>> rows;
    for (double u = 0.05; u <= 6.0 + 1e-9; u += 0.05) {
      rows.push_back({u, stable_subordinator_density(1.0 / 3.0, u),
                      stable_subordinator_density(0.5, u),
                      stable_subordinator_density(2.0 / 3.0, u)});
    }
    std::ofstream os(dir / "density_gbeta.csv");
    write_csv(os, cfg, {"u", "g_third", "g_half", "g_two_thirds"}, rows);
  }
  // ECDF overlay for the corollary pair.
  {
    RunConfig cfg = base;
    cfg.command = "reproduce-all:plot-ecdf";
    const std::size_t n = 20000;
    auto a = sample_clock_batched(BrownianTimeClock{}, 1.0, n, sp.seed, streams::kPlots,
                                  sp.resolved_threads());
    auto b = sample_clock_batched(InverseStableClock{0.5}, 1.0, n, sp.seed,
                                  streams::kPlots + 128u, sp.resolved_threads());
    const EmpiricalDistribution da(std::move(a)), db(std::move(b));
    std::vector<std::vector<double>> rows;
    for (double x = -6.0; x <= 6.0 + 1e-9; x += 0.05)
      rows.push_back({x, da.ecdf(x), db.ecdf(x)});
    std::ofstream os(dir / "ecdf_corollary.csv");
    write_csv(os, cfg, {"x", "ecdf_brownian_time", "ecdf_inverse_half"}, rows);
  }
  // Stable tail counter-CDF on a log grid.
  {
    RunConfig cfg = base;
    cfg.command = "reproduce-all:plot-tail";
    const std::size_t n = 200000;
    auto s = sample_batched(n, sp.seed, streams::kPlots + 512u, sp.resolved_threads(),
                            [&](RngStream st, std::size_t cnt) {
                              return sample_symmetric_stable(1.5, 1.0, cnt, st);
                            });
    const EmpiricalDistribution d(std::move(s));
    std::vector<std::vector<double>> rows;
    for (double lx = 0.0; lx <= 3.0 + 1e-9; lx += 0.05) {
      const double x = std::pow(10.0, lx);
      rows.push_back({x, 1.0 - d.ecdf(x)});
    }
    std::ofstream os(dir / "tail_ccdf.csv");
    write_csv(os, cfg, {"x", "ccdf"}, rows);
  }
}

inline void write_plot_script(const std::filesystem::path& dir) {
  std::ofstream os(dir / "plots.gp");
  os << "# gnuplot script for the reproduce-all artifacts; run from this directory.\n"
        "set datafile separator ','\n"
        "set datafile commentschars '#'\n"
        "set terminal pngcairo size 900,600\n"
        "\n"
        "set output 'density_gbeta.png'\n"
        "set xlabel 'u'\n"
        "set ylabel 'g_beta(u)'\n"
        "plot 'density_gbeta.csv' using 1:2 with lines title 'beta=1/3', \\\n"
        "     '' using 1:3 with lines title 'beta=1/2', \\\n"
        "     '' using 1:4 with lines title 'beta=2/3'\n"
        "\n"
        "set output 'ecdf_corollary.png'\n"
        "set xlabel 'x'\n"
        "set ylabel 'ECDF'\n"
        "plot 'ecdf_corollary.csv' using 1:2 with lines title 'X(|Y_1|)', \\\n"
        "     '' using 1:3 with lines title 'X(E_1), beta=1/2'\n"
        "\n"
        "set output 'tail_ccdf.png'\n"
        "set logscale xy\n"
        "set xlabel 'x'\n"
        "set ylabel 'P[S_1 > x]'\n"
        "plot 'tail_ccdf.csv' using 1:2 with lines title 'alpha=1.5 tail'\n";
}

}  // namespace detail_suite

// Runs the suite, writes per-check CSVs, plot data and script, plus
// summary.json into out_dir.  Returns the envelope echoed on stdout.
inline ReportEnvelope reproduce_all(const SuiteParams& sp, const std::string& out_dir,
                                    RunConfig base_cfg) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  const auto checks = run_acceptance_suite(sp);
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto path = dir / ("c" + std::to_string(i + 1) + "_" + checks[i].name + ".csv");
    detail_suite::write_check_csv(path, base_cfg, checks[i]);
  }
  detail_suite::write_plot_data(dir, base_cfg, sp);
  detail_suite::write_plot_script(dir);

  ReportEnvelope env;
  env.config_echo = std::move(base_cfg);
  env.results = suite_to_json(checks, sp.quick);
  env.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
  std::ofstream os(dir / "summary.json");
  os << to_json_string(env);
  return env;
}

}  // namespace subfrac::tools
