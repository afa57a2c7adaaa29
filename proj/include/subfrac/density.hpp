#pragma once
// Closed-form and numerically evaluated densities of stable subordinators,
// their inverses, and symmetric stable laws, plus the Mittag-Leffler
// function.  Every evaluator switches between a convergent series regime and
// an integral-representation regime; the switch points are chosen so the two
// regimes overlap with several digits to spare, and the overlap is exercised
// by the test suite.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "subfrac/errors.hpp"
#include "subfrac/quadrature.hpp"

namespace subfrac {

inline constexpr double kPi = 3.14159265358979323846;

namespace detail {

inline void require_beta(double beta, const char* where) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    std::ostringstream msg;
    msg << where << ": beta must lie in (0, 1), got " << beta;
    throw parameter_error(msg.str());
  }
}

// Reciprocal gamma, valid for any real argument; returns 0 at the poles.
inline double rgamma(double x) {
  if (x > 0.5) return 1.0 / std::tgamma(x);
  // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi.
  return std::sin(kPi * x) * std::tgamma(1.0 - x) / kPi;
}

struct SeriesOutcome {
  double value = 0.0;
  bool converged = false;
  // Largest term magnitude relative to the sum; large values flag
  // cancellation-dominated evaluations.
  double cancellation = 0.0;
};

// Per-beta coefficients of the g_beta series (signed, and unsigned for
// convergence monitoring), cached because solvers evaluate the density
// thousands of times per run.
struct GbetaCoefficients {
  std::vector<double> signed_c;  // (-1)^{k+1} Gamma(k b + 1)/k! sin(pi k b)/pi
  std::vector<double> abs_c;     // Gamma(k b + 1)/k! / pi
};

inline const GbetaCoefficients& gbeta_coefficients(double beta, int n_terms) {
  thread_local std::map<std::pair<double, int>, GbetaCoefficients> cache;
  const auto key = std::make_pair(beta, n_terms);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  GbetaCoefficients c;
  c.signed_c.assign(n_terms + 1, 0.0);
  c.abs_c.assign(n_terms + 1, 0.0);
  for (int k = 1; k <= n_terms; ++k) {
    const double kb = k * beta;
    const double mag = std::exp(std::lgamma(kb + 1.0) - std::lgamma(k + 1.0)) / kPi;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    c.abs_c[k] = mag;
    c.signed_c[k] = sign * std::sin(kPi * kb) * mag;
  }
  return cache.emplace(key, std::move(c)).first->second;
}

// Series for the density g_beta(u) of a standard beta-stable subordinator at
// time 1 (Laplace transform exp(-s^beta)):
//   g_beta(u) = (1/pi) sum_{k>=1} (-1)^{k+1} Gamma(k beta + 1)/k!
//               sin(pi k beta) u^{-k beta - 1}.
// Convergent for every u > 0 but cancellation-dominated as u -> 0.
inline SeriesOutcome gbeta_series(double beta, double u, int max_terms) {
  const auto& coef = gbeta_coefficients(beta, max_terms);
  const double q = std::pow(u, -beta);
  const double inv_u = 1.0 / u;
  double qk = 1.0;
  double sum = 0.0;
  double max_mag = 0.0;
  int small_run = 0;
  bool converged = false;
  for (int k = 1; k <= max_terms; ++k) {
    qk *= q;
    if (!(qk < 1e290)) break;  // prefactor overflow; cancellation flag decides below
    const double mag = coef.abs_c[k] * qk * inv_u;
    sum += coef.signed_c[k] * qk * inv_u;
    max_mag = std::max(max_mag, mag);
    // sin(pi k beta) vanishes periodically for rational beta, so convergence
    // is judged on several consecutive small magnitudes, not a single term.
    if (mag <= 1e-17 * std::max(std::fabs(sum), 1e-300)) {
      if (++small_run >= 4 && k >= 12) {
        converged = true;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  SeriesOutcome out;
  out.value = sum;
  out.converged = converged;
  out.cancellation = max_mag / std::max(std::fabs(sum), 1e-300);
  return out;
}

// Leading exponent of the left tail: log g_beta(u) ~ -E(u) with
// E(u) = (1-beta) beta^{beta/(1-beta)} u^{-beta/(1-beta)}.
inline double gbeta_tail_exponent(double beta, double u) {
  return (1.0 - beta) * std::pow(beta, beta / (1.0 - beta)) *
         std::pow(u, -beta / (1.0 - beta));
}

// Saddle-point form of the left tail,
//   g_beta(u) ~ beta^{1/(2-2b)} / sqrt(2 pi (1-b)) u^{-(2-b)/(2-2b)} exp(-E(u)).
// Exact for beta = 1/2; relative error below 1% for E(u) >= 8 (checked against
// the series summed in extended precision), shrinking like 1/E deeper in.
// Kept as the fallback of last resort should the contour-integral quadrature
// ever fail to converge.
inline double gbeta_saddle(double beta, double u) {
  const double e = gbeta_tail_exponent(beta, u);
  if (e > 745.0) return 0.0;
  const double pre = std::pow(beta, 0.5 / (1.0 - beta)) / std::sqrt(2.0 * kPi * (1.0 - beta));
  return pre * std::pow(u, -(2.0 - beta) / (2.0 - 2.0 * beta)) * std::exp(-e);
}

// Fixed-Talbot inversion of the Laplace transform exp(-s^beta) with M nodes.
// Abate-Valko contour: s(theta) = r theta (cot theta + i), r = 2M/(5u).
// For beta > 1/2 the transform grows like exp(|s|^beta |cos(beta theta)|) on
// the back of the contour, so small u eventually overflows double range; the
// short-circuit below reports that as +inf instead of summing infinities
// into a NaN.  Callers must gate on gbeta_talbot_trust_limit: truncation
// error past that limit grows smoothly, with no internal warning sign.
inline double gbeta_talbot(double beta, double u, int m_nodes = 48) {
  const double r = 2.0 * m_nodes / (5.0 * u);
  double acc = 0.5 * std::exp(r * u - std::pow(r, beta));
  for (int k = 1; k < m_nodes; ++k) {
    const double theta = k * kPi / m_nodes;
    const double cot = std::cos(theta) / std::sin(theta);
    const std::complex<double> s(r * theta * cot, r * theta);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    const std::complex<double> w = s * u - std::pow(s, beta);
    if (w.real() > 700.0) return std::numeric_limits<double>::infinity();
    const std::complex<double> term = std::exp(w) * std::complex<double>(1.0, sigma);
    acc += term.real();
  }
  return acc * r / m_nodes;
}

// Largest left-tail exponent E(u) at which the 48-node fixed-Talbot contour
// still beats 1e-9, fit against the alternating series summed in extended
// precision.  Past the limit, contour truncation error grows without any
// internal warning; below a limit of 2 there is no usable window at all
// (beta near 1), so callers should skip Talbot entirely.
inline double gbeta_talbot_trust_limit(double beta) {
  const double e = 60.0 * std::pow((1.0 - beta) / beta, 1.4);
  return std::min(e, 50.0);
}

// Integral form of the density on the deformed (steepest-descent style)
// contour, the classical Zolotarev representation:
//   g_beta(u) = beta/((1-beta) pi) u^{-1} int_0^pi W(phi) exp(-W(phi)) d phi,
//   W(phi) = u^{-beta/(1-beta)} sin(beta phi)^{beta/(1-beta)}
//            sin((1-beta) phi) / sin(phi)^{1/(1-beta)}.
// W decreases to E(u) at phi = 0 (where the integrand is smooth, not
// singular), so every sample is positive: no cancellation at any depth, in
// contrast to both the series and the Talbot sum.  Evaluating W in log space
// and pulling exp(-E) out of the integral keeps the arithmetic inside double
// range down to the E ~ 740 underflow horizon.  Each call costs a few
// hundred integrand samples, so the cheap series and Talbot routes are
// preferred where they hold.
inline double gbeta_zolotarev(double beta, double u) {
  const double rho = beta / (1.0 - beta);
  const double log_x = -rho * std::log(u);
  const double e_tail = (1.0 - beta) * std::pow(beta, rho) * std::exp(log_x);
  auto integrand = [&](double phi) {
    if (phi < 1e-12) return e_tail;  // limit W(0) = E(u), exp(E - W) = 1
    const double log_w = log_x + rho * std::log(std::sin(beta * phi)) +
                         std::log(std::sin((1.0 - beta) * phi)) -
                         (rho + 1.0) * std::log(std::sin(phi));
    const double w = std::exp(log_w);
    return std::exp(log_w + e_tail - w);
  };
  // exp(E - W) carries relative noise ~ E * eps near phi = 0, so asking for
  // much below 1e-9 makes the adaptive refinement chase roundoff at large E.
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-9;
  cfg.abs_tol = 1e-300;
  const auto r = integrate_adaptive(integrand, 0.0, kPi, cfg);
  const double log_pre = std::log(beta / ((1.0 - beta) * kPi)) - std::log(u);
  return std::exp(log_pre + std::log(r.value) - e_tail);
}

// Series term count needed for the magnitudes to fall `slack` e-folds below
// the largest term, from a cheap lgamma scan.  Terms first grow when u is
// below the series' comfortable range, so a fixed cap misbehaves for beta
// near 1; the scan sizes the retry instead.  Bucketed to powers of two so
// the coefficient cache stays small.
inline int gbeta_terms_needed(double beta, double u, double slack) {
  const double lu = std::log(u);
  double max_lt = -1e300;
  for (int k = 1; k <= (1 << 18); k = (k < 64 ? k + 1 : k + k / 16)) {
    const double lt = std::lgamma(k * beta + 1.0) - std::lgamma(k + 1.0) - (k * beta + 1.0) * lu;
    max_lt = std::max(max_lt, lt);
    if (lt < max_lt - slack) {
      int n = 64;
      while (n < k) n *= 2;
      return n;
    }
  }
  return 1 << 18;
}

// int_0^inf xi^p cos(s xi) exp(-t xi^alpha) d xi by adaptive quadrature.
// For alpha < 1 the substitution xi = v^{1/alpha} removes the cusp of the
// stretched exponential at 0 and makes the envelope exactly exponential.
// Points selects the Gauss-Kronrod rule, letting callers run the same
// integral under two independent node sets.
template <int Points>
inline QuadratureResult stable_fourier_integral(double alpha, double t, double s, int p,
                                                const QuadratureConfig& cfg) {
  double xi_max = std::pow(60.0 / t, 1.0 / alpha);
  for (int it = 0; it < 3; ++it)
    xi_max = std::pow((60.0 + p * std::log(std::max(xi_max, 1.0))) / t, 1.0 / alpha);
  if (std::fabs(s) * xi_max > 6.5e6) {
    std::ostringstream msg;
    msg << "stable_fourier_integral: oscillation count out of reach (alpha = " << alpha
        << ", t = " << t << ", s = " << s << ")";
    throw evaluation_error(msg.str());
  }
  if (alpha < 1.0) {
    const double v_max = std::pow(xi_max, alpha);
    auto transformed = [&](double v) {
      const double xi = std::pow(v, 1.0 / alpha);
      const double jac = xi / (alpha * v);  // (1/alpha) v^{1/alpha - 1}
      return std::pow(xi, p) * std::cos(s * xi) * std::exp(-t * v) * jac;
    };
    return detail::gk_integrate<Points>(transformed, 0.0, v_max, cfg);
  }
  auto direct = [&](double xi) {
    return std::pow(xi, p) * std::cos(s * xi) * std::exp(-t * std::pow(xi, alpha));
  };
  return detail::gk_integrate<Points>(direct, 0.0, xi_max, cfg);
}

}  // namespace detail

struct StableDensityParams {
  double beta = 0.5;
  enum class Method { automatic, series, closed_form_half, laplace_inversion };
  Method method = Method::automatic;
  int series_terms = 400;
  // Series/inversion switch point; <= 0 selects the built-in default.
  double crossover_t = 0.0;

  void validate() const {
    detail::require_beta(beta, "StableDensityParams");
    if (series_terms < 32)
      throw parameter_error("StableDensityParams: series_terms must be >= 32");
    if (method == Method::closed_form_half && beta != 0.5)
      throw parameter_error("StableDensityParams: closed form requires beta == 1/2");
  }
};

// Default series/inversion switch for g_beta, stated as a target left-tail
// exponent E_xo and converted to u through E(u) = c u^{-beta/(1-beta)},
// c = (1-beta) beta^{beta/(1-beta)}.  At E = 8 the series has lost ~8 digits
// to cancellation while still carrying ~8, so both sides of the switch agree
// to ~1e-8; for beta near 1 the Talbot trust region ends before E = 8, and
// the switch retreats to 3/4 of the trust limit so the overlap check still
// has a two-sided window.  Chosen empirically per beta by that check.
inline double default_gbeta_crossover(double beta) {
  const double c = (1.0 - beta) * std::pow(beta, beta / (1.0 - beta));
  const double e_xo = std::min(8.0, 0.75 * detail::gbeta_talbot_trust_limit(beta));
  return std::pow(c / e_xo, (1.0 - beta) / beta);
}

// Density at u of the standard beta-stable subordinator at time 1.
inline double stable_subordinator_density(const StableDensityParams& p, double u) {
  p.validate();
  if (!(u > 0.0)) {
    std::ostringstream msg;
    msg << "stable_subordinator_density: u must be positive, got " << u;
    throw domain_error(msg.str());
  }
  using Method = StableDensityParams::Method;
  switch (p.method) {
    case Method::closed_form_half:
      // g_{1/2}(u) = u^{-3/2} exp(-1/(4u)) / (2 sqrt(pi)).
      return 0.5 / std::sqrt(kPi) * std::exp(-0.25 / u - 1.5 * std::log(u));
    case Method::series: {
      const auto out = detail::gbeta_series(p.beta, u, p.series_terms);
      if (!out.converged || out.cancellation > 1e13) {
        std::ostringstream msg;
        msg << "stable_subordinator_density: series breakdown at u = " << u
            << " (cancellation ratio " << out.cancellation
            << "); use laplace_inversion for small u";
        throw evaluation_error(msg.str());
      }
      return std::max(out.value, 0.0);
    }
    case Method::laplace_inversion: {
      const double limit = detail::gbeta_talbot_trust_limit(p.beta);
      const double e_tail = detail::gbeta_tail_exponent(p.beta, u);
      if (limit < 2.0 || e_tail > limit) {
        std::ostringstream msg;
        msg << "stable_subordinator_density: Talbot contour untrustworthy at u = " << u
            << " for beta = " << p.beta << " (tail exponent " << e_tail
            << " past trust limit " << limit
            << "); the automatic method switches to the contour integral there";
        throw evaluation_error(msg.str());
      }
      const double tal = detail::gbeta_talbot(p.beta, u);
      if (!std::isfinite(tal)) {
        std::ostringstream msg;
        msg << "stable_subordinator_density: Talbot contour overflows at u = " << u
            << " for beta = " << p.beta;
        throw evaluation_error(msg.str());
      }
      return std::max(tal, 0.0);
    }
    case Method::automatic:
      break;
  }
  if (p.beta == 0.5)
    return 0.5 / std::sqrt(kPi) * std::exp(-0.25 / u - 1.5 * std::log(u));
  const double e_tail = detail::gbeta_tail_exponent(p.beta, u);
  // Below exp(-740) the contour integral's prefactor underflows along with
  // the density itself; the exact answer to every representable digit is 0.
  if (e_tail > 740.0) return 0.0;
  const double crossover = p.crossover_t > 0.0 ? p.crossover_t : default_gbeta_crossover(p.beta);
  if (u >= crossover) {
    auto out = detail::gbeta_series(p.beta, u, p.series_terms);
    if (!out.converged) {
      // Term magnitudes rise before they fall once beta is close to 1; rerun
      // sized by the scan.  60 e-folds of slack keeps the tail of the rerun
      // below the convergence detector's threshold even with ~4 digits lost
      // to cancellation.
      const int needed = detail::gbeta_terms_needed(p.beta, u, 60.0);
      if (needed > p.series_terms) out = detail::gbeta_series(p.beta, u, needed);
    }
    if (out.converged && out.cancellation <= 1e9) return std::max(out.value, 0.0);
  }
  // Talbot is an order of magnitude cheaper than the contour integral, so it
  // keeps the region where it is known to hold 1e-9.
  const double limit = detail::gbeta_talbot_trust_limit(p.beta);
  if (limit >= 2.0 && e_tail <= limit) {
    const double tal = detail::gbeta_talbot(p.beta, u);
    if (std::isfinite(tal) && tal > 0.0) return tal;
  }
  try {
    return detail::gbeta_zolotarev(p.beta, u);
  } catch (const evaluation_error&) {
    return detail::gbeta_saddle(p.beta, u);
  }
}

inline double stable_subordinator_density(double beta, double u) {
  StableDensityParams p;
  p.beta = beta;
  return stable_subordinator_density(p, u);
}

// Upper tail P[D_1 > s] of the standard subordinator, by the convergent
// series (1/pi) sum (-1)^{k+1} Gamma(k beta)/k! sin(pi k beta) s^{-k beta}.
// Accurate for s above the density crossover.
inline double stable_subordinator_tail(double beta, double s) {
  detail::require_beta(beta, "stable_subordinator_tail");
  if (!(s > 0.0)) throw domain_error("stable_subordinator_tail: s must be positive");
  const double log_s = std::log(s);
  double sum = 0.0;
  int small_run = 0;
  for (int k = 1; k <= 400; ++k) {
    const double kb = k * beta;
    const double mag = std::exp(std::lgamma(kb) - std::lgamma(k + 1.0) - kb * log_s);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    sum += sign * std::sin(kPi * kb) * mag;
    if (mag <= 1e-17 * std::max(std::fabs(sum), 1e-300)) {
      if (++small_run >= 4 && k >= 12) break;
    } else {
      small_run = 0;
    }
  }
  return std::min(1.0, std::max(sum / kPi, 0.0));
}

// Point S with P[D_1 > S] <= mass, from the leading tail term with a safety
// factor.
inline double stable_subordinator_tail_cutoff(double beta, double mass) {
  detail::require_beta(beta, "stable_subordinator_tail_cutoff");
  if (!(mass > 0.0) || !(mass < 0.5))
    throw parameter_error("stable_subordinator_tail_cutoff: mass must lie in (0, 0.5)");
  const double lead = std::tgamma(beta) * std::sin(kPi * beta) / kPi;
  return std::max(4.0, std::pow(1.4 * lead / mass, 1.0 / beta));
}

// Density of the inverse subordinator E_t = inf{x > 0 : D(x) > t}:
//   f_{E_t}(x) = (t/beta) x^{-1-1/beta} g_beta(t x^{-1/beta}).
inline double inverse_subordinator_density(double beta, double t, double x) {
  detail::require_beta(beta, "inverse_subordinator_density");
  if (!(t > 0.0)) throw domain_error("inverse_subordinator_density: t must be positive");
  if (!(x > 0.0)) throw domain_error("inverse_subordinator_density: x must be positive");
  const double arg = t * std::pow(x, -1.0 / beta);
  // As x -> 0 the subordinator argument explodes while the prefactor
  // vanishes; the product tends to the finite limit t^{-beta}/Gamma(1-beta),
  // with relative error O(arg^{-beta}) at the threshold below.
  if (!std::isfinite(arg) || arg > 1e15)
    return std::pow(t, -beta) / std::tgamma(1.0 - beta);
  return (t / beta) * std::pow(x, -1.0 - 1.0 / beta) * stable_subordinator_density(beta, arg);
}

// Point S with P[E_t > S] <= mass.  Uses the lower-tail asymptotic
// log P[D_1 < eps] ~ -c2 eps^{-beta/(1-beta)}, c2 = (1-beta) beta^{beta/(1-beta)}.
inline double inverse_subordinator_tail_cutoff(double beta, double t, double mass) {
  detail::require_beta(beta, "inverse_subordinator_tail_cutoff");
  if (!(t > 0.0)) throw domain_error("inverse_subordinator_tail_cutoff: t must be positive");
  if (!(mass > 0.0) || !(mass < 0.5))
    throw parameter_error("inverse_subordinator_tail_cutoff: mass must lie in (0, 0.5)");
  const double c2 = (1.0 - beta) * std::pow(beta, beta / (1.0 - beta));
  const double big_l = std::log(2.0 / mass);
  const double eps = std::pow(c2 / big_l, (1.0 - beta) / beta);
  const double mean = std::pow(t, beta) / std::tgamma(1.0 + beta);
  return std::max(1.25 * std::pow(t / eps, beta), 4.0 * mean);
}

// Density at s of the symmetric alpha-stable law with characteristic
// function exp(-t |xi|^alpha).  Cauchy (alpha = 1) stays on the generic
// series/quadrature path; the Gaussian endpoint (alpha = 2) is closed form
// because its power-tail series vanishes identically.
inline double symmetric_stable_density(double alpha, double t, double s,
                                       const QuadratureConfig& cfg = {}) {
  if (!(alpha > 0.0) || alpha > 2.0) {
    std::ostringstream msg;
    msg << "symmetric_stable_density: alpha must lie in (0, 2], got " << alpha;
    throw parameter_error(msg.str());
  }
  if (!(t > 0.0)) throw domain_error("symmetric_stable_density: t must be positive");
  s = std::fabs(s);
  if (alpha == 2.0) return std::exp(-s * s / (4.0 * t)) / std::sqrt(4.0 * kPi * t);

  // Tail series (1/pi) sum (-1)^{k+1} Gamma(alpha k + 1)/k! sin(pi alpha k/2)
  // t^k s^{-alpha k - 1}: convergent for alpha < 1 (usable until cancellation
  // bites), asymptotic for alpha > 1 (usable while terms shrink fast).
  if (s > 0.0 && t * std::pow(s, -alpha) <= (alpha < 1.0 ? 3.0 : 0.4)) {
    const double log_t = std::log(t);
    const double log_s = std::log(s);
    double sum = 0.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    double max_mag = 0.0;
    double trunc_mag = std::numeric_limits<double>::infinity();
    int small_run = 0;
    bool usable = false;
    for (int k = 1; k <= 300; ++k) {
      const double ak = alpha * k;
      const double mag = std::exp(std::lgamma(ak + 1.0) - std::lgamma(k + 1.0) + k * log_t -
                                  (ak + 1.0) * log_s);
      if (alpha > 1.0 && mag > prev_mag) {
        // Asymptotic regime: stop at the smallest term, which bounds the
        // truncation error.
        trunc_mag = prev_mag;
        usable = true;
        break;
      }
      const double sign = (k % 2 == 1) ? 1.0 : -1.0;
      sum += sign * std::sin(kPi * ak / 2.0) * mag;
      prev_mag = mag;
      max_mag = std::max(max_mag, mag);
      if (mag <= 1e-17 * std::max(std::fabs(sum), 1e-300)) {
        if (++small_run >= 4 && k >= 8) {
          trunc_mag = mag;
          usable = true;
          break;
        }
      } else {
        small_run = 0;
      }
    }
    const double floor = std::max(std::fabs(sum), 1e-300);
    if (usable && trunc_mag <= 1e-10 * floor && max_mag <= 1e4 * floor)
      return std::max(sum / kPi, 0.0);
  }

  // Fourier inversion p = (1/pi) int_0^inf cos(s xi) exp(-t xi^alpha) d xi.
  QuadratureConfig local = cfg;
  local.rel_tol = std::min(cfg.rel_tol, 1e-10);
  const auto r = detail::stable_fourier_integral<61>(alpha, t, s, 0, local);
  return std::max(r.value / kPi, 0.0);
}

// Point S with P[|S_t| > S] <= mass for the symmetric alpha-stable law.
inline double symmetric_stable_abs_tail_cutoff(double alpha, double t, double mass) {
  if (!(alpha > 0.0) || alpha > 2.0)
    throw parameter_error("symmetric_stable_abs_tail_cutoff: alpha must lie in (0, 2]");
  if (!(t > 0.0)) throw domain_error("symmetric_stable_abs_tail_cutoff: t must be positive");
  if (!(mass > 0.0) || !(mass < 0.5))
    throw parameter_error("symmetric_stable_abs_tail_cutoff: mass must lie in (0, 0.5)");
  if (alpha == 2.0)
    return 2.0 * std::sqrt(t) * (std::sqrt(std::log(2.0 / mass)) + 1.0);
  // Two-sided tail ~ (2/pi) Gamma(alpha) sin(pi alpha/2) t s^{-alpha}.
  const double lead = 2.0 * std::tgamma(alpha) * std::sin(kPi * alpha / 2.0) * t / kPi;
  return std::max(4.0 * std::pow(t, 1.0 / alpha), std::pow(1.4 * lead / mass, 1.0 / alpha));
}

struct MittagLefflerParams {
  double beta = 0.5;
  int series_terms = 256;
  // |z| above which the power series is abandoned.  The effective switch is
  // min(asymptotic_threshold, safe series bound); the series cannot be
  // pushed past |z| ~ (9 ln 10)^beta without losing more than 9 digits to
  // cancellation, whatever the caller asks for.
  double asymptotic_threshold = 5.0;

  void validate() const {
    if (!(beta > 0.0) || beta > 1.0)
      throw parameter_error("MittagLefflerParams: beta must lie in (0, 1]");
    if (series_terms < 16)
      throw parameter_error("MittagLefflerParams: series_terms must be >= 16");
    if (!(asymptotic_threshold > 0.0))
      throw parameter_error("MittagLefflerParams: asymptotic_threshold must be positive");
  }
};

// One-parameter Mittag-Leffler function E_beta(z) for beta in (0, 1].
inline double mittag_leffler(const MittagLefflerParams& p, double z) {
  p.validate();
  const double beta = p.beta;
  if (z == 0.0) return 1.0;
  if (beta == 1.0) {
    if (z > 709.0) {
      std::ostringstream msg;
      msg << "mittag_leffler: exp(" << z << ") overflows";
      throw std::range_error(msg.str());
    }
    return std::exp(z);
  }
  const double series_safe = std::pow(9.0 * std::log(10.0), beta);
  const double threshold = std::min(p.asymptotic_threshold, series_safe);

  if (std::fabs(z) <= threshold) {
    const double log_az = std::log(std::fabs(z));
    double sum = 1.0;
    int small_run = 0;
    bool converged = false;
    for (int k = 1; k <= p.series_terms; ++k) {
      const double mag = std::exp(k * log_az - std::lgamma(beta * k + 1.0));
      sum += (z < 0.0 && k % 2 == 1) ? -mag : mag;
      if (mag <= 1e-17 * std::max(std::fabs(sum), 1e-300)) {
        if (++small_run >= 3) {
          converged = true;
          break;
        }
      } else {
        small_run = 0;
      }
    }
    if (!converged) {
      std::ostringstream msg;
      msg << "mittag_leffler: series did not converge within " << p.series_terms
          << " terms at z = " << z;
      throw evaluation_error(msg.str());
    }
    return sum;
  }

  if (z < 0.0) {
    // Spectral representation of the completely monotone branch:
    //   E_beta(-x) = (sin(pi beta)/(pi beta))
    //                int_0^inf exp(-x^{1/beta} y^{1/beta})
    //                          / (y^2 + 2 y cos(pi beta) + 1) dy.
    // y^{1/beta} has a cusp at 0 whenever 1/beta is not an even integer, so
    // the head [0, 1] runs under tanh-sinh; past the head the exponential is
    // already below e^{-x^{1/beta}} and a short Gauss-Kronrod stretch
    // finishes the job.
    const double theta = kPi * beta;
    const double big_x = std::pow(-z, 1.0 / beta);
    const double cos_theta = std::cos(theta);
    auto integrand = [&](double y) {
      return std::exp(-big_x * std::pow(y, 1.0 / beta)) / (y * y + 2.0 * y * cos_theta + 1.0);
    };
    boost::math::quadrature::tanh_sinh<double> head_rule;
    double head_err = 0.0;
    const double head = head_rule.integrate(integrand, 0.0, 1.0, 1e-12, &head_err);
    if (!std::isfinite(head) || head_err > 1e-9 * std::max(std::fabs(head), 1e-8))
      throw evaluation_error("mittag_leffler: spectral head integral did not converge");
    const double tail_end = std::max(2.0, std::pow(45.0 / big_x, beta));
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-15;
    const double tail = integrate_adaptive(integrand, 1.0, tail_end, cfg).value;
    return std::sin(theta) / (kPi * beta) * (head + tail);
  }

  // Large positive z: exponential asymptotic with an algebraic correction.
  const double w = std::pow(z, 1.0 / beta);
  if (w > 700.0) {
    std::ostringstream msg;
    msg << "mittag_leffler: E_" << beta << "(" << z << ") overflows";
    throw std::range_error(msg.str());
  }
  double corr = 0.0;
  double prev_mag = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 40; ++k) {
    const double term = std::pow(z, -double(k)) * detail::rgamma(1.0 - beta * k);
    if (std::fabs(term) > prev_mag) break;
    corr += term;
    prev_mag = std::fabs(term);
  }
  return std::exp(w) / beta - corr;
}

inline double mittag_leffler(double beta, double z) {
  MittagLefflerParams p;
  p.beta = beta;
  return mittag_leffler(p, z);
}

}  // namespace subfrac
