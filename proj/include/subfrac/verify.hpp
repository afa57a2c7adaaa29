#pragma once
// Verification instruments: the L1 Caputo derivative, residual checks that
// confirm solver output satisfies the governing equations, and statistical
// tests (two-sample Kolmogorov-Smirnov, Hill tail-index estimation).
//
// Residual checks are restricted to eigenfunction specs, where the generator
// action is closed form and the solution factors as u(t, x) = h(t) f(x);
// every time derivative then probes only quadrature output, not grid
// transforms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "subfrac/density.hpp"
#include "subfrac/errors.hpp"
#include "subfrac/quadrature.hpp"
#include "subfrac/semigroup.hpp"
#include "subfrac/solver.hpp"

namespace subfrac {

// L1 scheme for the Caputo derivative of order beta on the uniform grid
// values[i] = u(i dt), dt = t_max / (values.size() - 1).  At node n:
//   D^beta u = dt^{-beta}/Gamma(2-beta) sum_{j=0}^{n-1} b_j (u_{n-j} - u_{n-j-1}),
//   b_j = (j+1)^{1-beta} - j^{1-beta}.
// Order 2 - beta in dt for smooth profiles; exact on affine profiles.
inline double caputo_derivative(std::span<const double> values, double t_max, double beta,
                                double t) {
  if (!(beta > 0.0) || !(beta < 1.0))
    throw parameter_error("caputo_derivative: beta must lie in (0, 1)");
  if (values.size() < 64) throw parameter_error("caputo_derivative: need at least 64 grid nodes");
  if (!(t_max > 0.0)) throw domain_error("caputo_derivative: t_max must be positive");
  const std::size_t n_steps = values.size() - 1;
  const double dt = t_max / static_cast<double>(n_steps);
  const double ratio = t / dt;
  const auto n = static_cast<std::size_t>(std::llround(ratio));
  if (n < 1 || n > n_steps || std::fabs(ratio - static_cast<double>(n)) > 1e-8 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg << "caputo_derivative: t = " << t << " must coincide with a grid node in (0, " << t_max
        << "]";
    throw domain_error(msg.str());
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double bj =
        std::pow(static_cast<double>(j) + 1.0, 1.0 - beta) - std::pow(static_cast<double>(j), 1.0 - beta);
    acc += bj * (values[n - j] - values[n - j - 1]);
  }
  return acc / (std::tgamma(2.0 - beta) * std::pow(dt, beta));
}

// Convenience wrapper sampling a callable profile on [0, t].
template <class F>
double caputo_derivative_of(F&& u, double beta, double t, std::size_t n_steps = 2048) {
  if (!(t > 0.0)) throw domain_error("caputo_derivative_of: t must be positive");
  if (n_steps < 64) throw parameter_error("caputo_derivative_of: need at least 64 steps");
  std::vector<double> values(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i)
    values[i] = u(t * static_cast<double>(i) / static_cast<double>(n_steps));
  return caputo_derivative(values, t, beta, t);
}

struct ResidualReport {
  std::string pde_name;
  std::vector<std::pair<double, double>> eval_points;  // (t, x)
  std::vector<double> residuals;
  // Magnitude of the largest participating PDE term; the fallback 1.0 keeps
  // relative residuals meaningful when every term vanishes (constant data).
  double scale = 1.0;
  double max_rel_residual = 0.0;
};

// What to differentiate: genuine solver output, or a planted classical
// exponential h(t) = exp(lambda t) that satisfies the ordinary heat flow but
// none of the time-changed equations.  Residual checks must reject it.
enum class PdeSolution { from_solver, planted_exponential };

// Which solver route feeds the Brownian-time residual; both must pass.
enum class IbmRoute { brownian_time, fractional_half };

// Time-power convention of the lower-order drift terms in the n-th order
// equation.  jn_minus_one is the consistent exponent t^{j/n - 1}; the
// alternate one_minus_jn (t^{1 - j/n}) is kept for diagnostic comparison and
// produces order-one residuals.
enum class DriftExponentConvention { jn_minus_one, one_minus_jn };

namespace detail {

inline const EigenfunctionSpec& require_eigen(const SemigroupSpec& spec, const char* op) {
  if (const auto* e = std::get_if<EigenfunctionSpec>(&spec)) {
    e->validate();
    return *e;
  }
  std::ostringstream msg;
  msg << op << ": residual checks require an eigenfunction spec (closed-form generator action)";
  throw parameter_error(msg.str());
}

inline void require_times(std::span<const double> ts, const char* op) {
  if (ts.empty()) {
    std::ostringstream msg;
    msg << op << ": need at least one evaluation time";
    throw parameter_error(msg.str());
  }
  for (double t : ts) {
    if (!(t > 0.0)) {
      std::ostringstream msg;
      msg << op << ": evaluation times must be positive";
      throw domain_error(msg.str());
    }
  }
}

inline void finalize_report(ResidualReport& rep, double max_term, double max_abs_res) {
  rep.scale = (max_term > 1e-13) ? max_term : 1.0;
  rep.max_rel_residual = max_abs_res / rep.scale;
}

}  // namespace detail

// Residual of the time-fractional equation D^beta_t u = L u, with the
// Caputo derivative taken by the L1 scheme on solver output.
inline ResidualReport residual_fractional(const SemigroupSpec& spec, double beta,
                                          std::span<const double> ts, double x,
                                          PdeSolution solution = PdeSolution::from_solver,
                                          std::size_t caputo_steps = 2048) {
  const auto& eig = detail::require_eigen(spec, "residual_fractional");
  detail::require_beta(beta, "residual_fractional");
  detail::require_times(ts, "residual_fractional");
  const double fx = initial_value(spec, x);
  ResidualReport rep;
  rep.pde_name = "fractional_caputo";
  double max_term = 0.0;
  double max_abs_res = 0.0;
  for (const double t : ts) {
    std::vector<double> u(caputo_steps + 1);
    u[0] = fx;
    for (std::size_t i = 1; i <= caputo_steps; ++i) {
      const double s = t * static_cast<double>(i) / static_cast<double>(caputo_steps);
      u[i] = (solution == PdeSolution::planted_exponential)
                 ? std::exp(eig.lambda * s) * fx
                 : solve_fractional_subordination(spec, beta, s, x).value;
    }
    const double cap = caputo_derivative(u, t, beta, t);
    const double lu = eig.lambda * u[caputo_steps];
    const double res = cap - lu;
    rep.eval_points.emplace_back(t, x);
    rep.residuals.push_back(res);
    max_term = std::max({max_term, std::fabs(cap), std::fabs(lu)});
    max_abs_res = std::max(max_abs_res, std::fabs(res));
  }
  detail::finalize_report(rep, max_term, max_abs_res);
  return rep;
}

// Residual of the Brownian-time equation
//   du/dt = L f(x) / sqrt(pi t) + L^2 u,
// with du/dt by central differences on solver output.
inline ResidualReport residual_ibm_pde(const SemigroupSpec& spec, std::span<const double> ts,
                                       double x, IbmRoute route = IbmRoute::brownian_time,
                                       PdeSolution solution = PdeSolution::from_solver) {
  const auto& eig = detail::require_eigen(spec, "residual_ibm_pde");
  detail::require_times(ts, "residual_ibm_pde");
  const double fx = initial_value(spec, x);
  auto u_at = [&](double s) -> double {
    if (solution == PdeSolution::planted_exponential) return std::exp(eig.lambda * s) * fx;
    if (route == IbmRoute::brownian_time) return solve_brownian_time(spec, s, x).value;
    return solve_fractional_subordination(spec, 0.5, s, x).value;
  };
  ResidualReport rep;
  rep.pde_name = "brownian_time";
  double max_term = 0.0;
  double max_abs_res = 0.0;
  for (const double t : ts) {
    const double h = std::min(1e-4 * std::max(t, 1.0), 0.4 * t);
    const double dudt = (u_at(t + h) - u_at(t - h)) / (2.0 * h);
    const double drift = eig.lambda * fx / std::sqrt(kPi * t);
    const double l2u = eig.lambda * eig.lambda * u_at(t);
    const double res = dudt - drift - l2u;
    rep.eval_points.emplace_back(t, x);
    rep.residuals.push_back(res);
    max_term = std::max({max_term, std::fabs(dudt), std::fabs(drift), std::fabs(l2u)});
    max_abs_res = std::max(max_abs_res, std::fabs(res));
  }
  detail::finalize_report(rep, max_term, max_abs_res);
  return rep;
}

// Residual of the n-th order heat-type equation (n = 1/beta, n in {2, 3, 4}):
//   du/dt = sum_{j=1}^{n-1} c_j(t) L^j f(x) + L^n u,
//   c_j(t) = t^{j/n - 1} / Gamma(j/n).
inline ResidualReport residual_n_order(
    const SemigroupSpec& spec, int n, std::span<const double> ts, double x,
    DriftExponentConvention convention = DriftExponentConvention::jn_minus_one,
    PdeSolution solution = PdeSolution::from_solver) {
  const auto& eig = detail::require_eigen(spec, "residual_n_order");
  if (n < 2 || n > 4) throw parameter_error("residual_n_order: supported orders are n in {2, 3, 4}");
  detail::require_times(ts, "residual_n_order");
  const double beta = 1.0 / static_cast<double>(n);
  const double fx = initial_value(spec, x);
  auto u_at = [&](double s) -> double {
    if (solution == PdeSolution::planted_exponential) return std::exp(eig.lambda * s) * fx;
    return solve_fractional_subordination(spec, beta, s, x).value;
  };
  ResidualReport rep;
  rep.pde_name = "n_order_heat_type";
  double max_term = 0.0;
  double max_abs_res = 0.0;
  for (const double t : ts) {
    const double h = std::min(1e-4 * std::max(t, 1.0), 0.4 * t);
    const double dudt = (u_at(t + h) - u_at(t - h)) / (2.0 * h);
    double drift = 0.0;
    double max_drift = 0.0;
    for (int j = 1; j < n; ++j) {
      const double frac = static_cast<double>(j) / static_cast<double>(n);
      const double expo = (convention == DriftExponentConvention::jn_minus_one) ? frac - 1.0 : 1.0 - frac;
      const double term = std::pow(t, expo) / std::tgamma(frac) * std::pow(eig.lambda, j) * fx;
      drift += term;
      max_drift = std::max(max_drift, std::fabs(term));
    }
    const double lnu = std::pow(eig.lambda, n) * u_at(t);
    const double res = dudt - drift - lnu;
    rep.eval_points.emplace_back(t, x);
    rep.residuals.push_back(res);
    max_term = std::max({max_term, std::fabs(dudt), max_drift, std::fabs(lnu)});
    max_abs_res = std::max(max_abs_res, std::fabs(res));
  }
  detail::finalize_report(rep, max_term, max_abs_res);
  return rep;
}

// Residual of the alpha-time equations for the supported clocks:
//   alpha = 1 (l = m = 1):    d^2u/dt^2 + 2 p_t(0,0) L f(x) + L^2 u = 0,
//                             p_t(0,0) = 1/(pi t);
//   alpha = 1/2 (l = 1, m = 2): d^4u/dt^4 + 2 p_t(0,0) L f(x) + L^2 u = 0,
//                             p_t(0,0) = Gamma(3)/(pi t^2).
// The origin values p_t(0,0) come from the density module.
inline ResidualReport residual_alpha_time_pde(const SemigroupSpec& spec, double alpha,
                                              std::span<const double> ts, double x,
                                              PdeSolution solution = PdeSolution::from_solver) {
  const auto& eig = detail::require_eigen(spec, "residual_alpha_time_pde");
  if (alpha != 1.0 && alpha != 0.5)
    throw parameter_error("residual_alpha_time_pde: supported clocks are alpha = 1 and alpha = 1/2");
  detail::require_times(ts, "residual_alpha_time_pde");
  const double fx = initial_value(spec, x);
  QuadratureConfig tight;
  tight.rel_tol = 1e-12;
  tight.abs_tol = 1e-14;
  auto u_at = [&](double s) -> double {
    if (solution == PdeSolution::planted_exponential) return std::exp(eig.lambda * s) * fx;
    return solve_alpha_time(spec, alpha, s, x, tight).value;
  };
  ResidualReport rep;
  rep.pde_name = "alpha_time";
  double max_term = 0.0;
  double max_abs_res = 0.0;
  for (const double t : ts) {
    double deriv = 0.0;
    if (alpha == 1.0) {
      const double h = std::min(2e-3 * std::max(t, 1.0), 0.3 * t);
      deriv = (u_at(t + h) - 2.0 * u_at(t) + u_at(t - h)) / (h * h);
    } else {
      // Fourth derivative: 5-point stencil at steps h and h/2 with one
      // Richardson step; the stencil noise floor sets the step size.
      const double h = std::min(0.05 * std::max(t, 1.0), 0.2 * t);
      auto d4 = [&](double step) {
        return (u_at(t - 2.0 * step) - 4.0 * u_at(t - step) + 6.0 * u_at(t) -
                4.0 * u_at(t + step) + u_at(t + 2.0 * step)) /
               (step * step * step * step);
      };
      const double coarse = d4(h);
      const double fine = d4(0.5 * h);
      deriv = (4.0 * fine - coarse) / 3.0;
    }
    const double p00 = symmetric_stable_density(alpha, t, 0.0);
    const double drift = 2.0 * p00 * eig.lambda * fx;
    const double l2u = eig.lambda * eig.lambda * u_at(t);
    const double res = deriv + drift + l2u;
    rep.eval_points.emplace_back(t, x);
    rep.residuals.push_back(res);
    max_term = std::max({max_term, std::fabs(deriv), std::fabs(drift), std::fabs(l2u)});
    max_abs_res = std::max(max_abs_res, std::fabs(res));
  }
  detail::finalize_report(rep, max_term, max_abs_res);
  return rep;
}

// Residual of the kernel equation ((d/ds)^{2l} + (-1)^{l+1} (d/dt)^{2m}) p = 0
// satisfied by the symmetric stable kernel p_t^{l/m}(0, s).  Both derivative
// routes reduce to quadratures of xi^{2l} cos(s xi) exp(-t xi^{l/m}) with
// opposite signs; they are evaluated by two independent rules and summed.
inline ResidualReport stable_kernel_pde_residual(int l, int m, double t, double s) {
  if (!((l == 1 && m == 1) || (l == 1 && m == 2)))
    throw parameter_error("stable_kernel_pde_residual: supported (l, m) pairs are (1,1) and (1,2)");
  if (!(t > 0.0)) throw domain_error("stable_kernel_pde_residual: t must be positive");
  const double alpha = static_cast<double>(l) / static_cast<double>(m);
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-11;
  // Space route: (d/ds)^2 p = -(1/pi) int xi^2 cos(s xi) exp(-t xi^alpha).
  const auto space_route = detail::stable_fourier_integral<61>(alpha, t, s, 2, cfg);
  // Time route: (-1)^{l+1} (d/dt)^{2m} p = +(1/pi) int of the same integrand,
  // via (-xi^alpha)^{2m} = xi^{2l}; evaluated under the independent
  // lower-order node set.
  const auto time_route = detail::stable_fourier_integral<15>(alpha, t, s, 2, cfg);
  const double a = -space_route.value / kPi;
  const double b = time_route.value / kPi;
  ResidualReport rep;
  rep.pde_name = "stable_kernel";
  rep.eval_points.emplace_back(t, s);
  rep.residuals.push_back(a + b);
  const double max_term = std::max(std::fabs(a), std::fabs(b));
  detail::finalize_report(rep, max_term, std::fabs(a + b));
  return rep;
}

// ---------------------------------------------------------------------------
// Statistics.

class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.size() < 2) throw parameter_error("EmpiricalDistribution: need at least 2 samples");
    for (const double v : sorted_) {
      if (!std::isfinite(v))
        throw parameter_error("EmpiricalDistribution: samples must be finite");
    }
    std::sort(sorted_.begin(), sorted_.end());
  }

  // Right-continuous empirical CDF P[X <= x].
  double ecdf(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
  }

  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted_samples() const { return sorted_; }
  bool degenerate() const { return sorted_.front() == sorted_.back(); }

 private:
  std::vector<double> sorted_;
};

struct KsResult {
  double distance = 0.0;
  double critical_5pct = 0.0;
  bool reject_5pct = false;
  bool degenerate = false;
};

// Two-sample Kolmogorov-Smirnov statistic with the asymptotic 5% critical
// value 1.358 sqrt((n_a + n_b)/(n_a n_b)).
inline KsResult ks_statistic(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  if (a.size() < 100 || b.size() < 100)
    throw parameter_error("ks_statistic: need at least 100 samples on each side");
  const auto& va = a.sorted_samples();
  const auto& vb = b.sorted_samples();
  const double na = static_cast<double>(va.size());
  const double nb = static_cast<double>(vb.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < va.size() && j < vb.size()) {
    const double v = std::min(va[i], vb[j]);
    while (i < va.size() && va[i] <= v) ++i;
    while (j < vb.size() && vb[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult r;
  r.distance = d;
  r.critical_5pct = 1.358 * std::sqrt((na + nb) / (na * nb));
  r.reject_5pct = d > r.critical_5pct;
  r.degenerate = a.degenerate() || b.degenerate();
  return r;
}

struct TailFitReport {
  double estimated_index = 0.0;
  std::size_t k_order_statistics = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Hill estimator on the k largest positive samples:
//   1/alpha_hat = (1/k) sum_{i=1}^{k} ln(X_{(n-i+1)} / X_{(n-k)}),
// with the asymptotic 95% interval alpha_hat (1 -+ 1.96/sqrt(k)).
inline TailFitReport tail_exponent(const EmpiricalDistribution& d, std::size_t k) {
  if (k < 50) throw parameter_error("tail_exponent: k must be at least 50");
  const auto& s = d.sorted_samples();
  const auto first_pos = std::upper_bound(s.begin(), s.end(), 0.0);
  const auto n_pos = static_cast<std::size_t>(s.end() - first_pos);
  if (n_pos < 10 * k) {
    std::ostringstream msg;
    msg << "tail_exponent: k = " << k << " requires at least " << 10 * k
        << " positive samples, have " << n_pos;
    throw parameter_error(msg.str());
  }
  const std::size_t n = s.size();
  const double threshold = s[n - k - 1];
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(s[n - 1 - i] / threshold);
  const double hill = acc / static_cast<double>(k);
  TailFitReport r;
  r.estimated_index = 1.0 / hill;
  r.k_order_statistics = k;
  const double half = 1.96 * r.estimated_index / std::sqrt(static_cast<double>(k));
  r.ci_low = r.estimated_index - half;
  r.ci_high = r.estimated_index + half;
  return r;
}

struct PowerLawDriftReport {
  TailFitReport small_k;
  TailFitReport large_k;
  // True when the two interval estimates overlap, as a genuine power tail
  // produces; lighter tails drift upward with k and separate.
  bool consistent = false;
};

inline PowerLawDriftReport power_law_drift(const EmpiricalDistribution& d, std::size_t k_small,
                                           std::size_t k_large) {
  if (k_small >= k_large) throw parameter_error("power_law_drift: need k_small < k_large");
  PowerLawDriftReport r;
  r.small_k = tail_exponent(d, k_small);
  r.large_k = tail_exponent(d, k_large);
  r.consistent = r.small_k.ci_low <= r.large_k.ci_high && r.large_k.ci_low <= r.small_k.ci_high;
  return r;
}

}  // namespace subfrac
