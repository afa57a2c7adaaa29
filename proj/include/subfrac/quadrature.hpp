#pragma once
// Adaptive quadrature on finite and semi-infinite intervals.
//
// Backed by Gauss-Kronrod rules from boost::math; the wrappers add node
// accounting, failure detection, and the substitution s = e^y - 1 that turns
// polynomially decaying tails into exponentially decaying integrands.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "subfrac/errors.hpp"

namespace subfrac {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  // Bisection budget; the adaptive rule may split the interval into at most
  // this many pieces.  The default is generous because integrands with
  // exponential turn-on regions (subordinator densities near 0) need deep
  // local refinement that costs only a handful of panels per level.
  int max_subdivisions = 1 << 21;
  // Mass allowed beyond the truncation point of a semi-infinite integral.
  double truncation_quantile = 1.0 - 1e-12;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw parameter_error("QuadratureConfig: tolerances must be positive");
    if (max_subdivisions < 1)
      throw parameter_error("QuadratureConfig: max_subdivisions must be >= 1");
    if (!(truncation_quantile > 0.5) || !(truncation_quantile < 1.0))
      throw parameter_error("QuadratureConfig: truncation_quantile must lie in (0.5, 1)");
  }

  // Mass assumed lost to truncation of a semi-infinite integral.
  double truncation_mass() const { return 1.0 - truncation_quantile; }
};

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;
  long nodes_used = 0;
};

namespace detail {

inline unsigned depth_from_subdivisions(int max_subdivisions) {
  unsigned depth = 1;
  while ((1 << depth) < max_subdivisions && depth < 26) ++depth;
  return depth;
}

template <int Points, class F>
QuadratureResult gk_integrate(F&& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(b > a)) throw parameter_error("integrate: need b > a");
  long count = 0;
  auto counted = [&](double x) {
    ++count;
    return f(x);
  };
  double err = 0.0;
  const unsigned depth = depth_from_subdivisions(cfg.max_subdivisions);
  const double value = boost::math::quadrature::gauss_kronrod<double, Points>::integrate(
      counted, a, b, depth, cfg.rel_tol, &err);
  QuadratureResult r{value, err, count};
  const double tolerated = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(value));
  if (!std::isfinite(value) || err > 1e3 * std::max(tolerated, 1e-14)) {
    std::ostringstream msg;
    msg << "quadrature failed to converge: estimated error " << err << " after " << count
        << " evaluations on [" << a << ", " << b << "]";
    throw evaluation_error(msg.str());
  }
  return r;
}

}  // namespace detail

// General-purpose adaptive rule (15-point Gauss-Kronrod).
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  return detail::gk_integrate<15>(std::forward<F>(f), a, b, cfg);
}

// Higher-order rule for oscillatory integrands (61-point Gauss-Kronrod).
template <class F>
QuadratureResult integrate_oscillatory(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  return detail::gk_integrate<61>(std::forward<F>(f), a, b, cfg);
}

// Integral of f over (0, upper_cutoff] through the substitution s = e^y - 1.
// Heavy polynomial tails of f become exponentially decaying in y, so huge
// cutoffs (10^30 and beyond) cost only a logarithmic interval length.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double upper_cutoff,
                                         const QuadratureConfig& cfg = {}) {
  if (!(upper_cutoff > 0.0)) throw parameter_error("integrate_semi_infinite: cutoff must be positive");
  auto transformed = [&](double y) {
    const double s = std::expm1(y);
    return f(s) * (s + 1.0);
  };
  return integrate_adaptive(transformed, 0.0, std::log1p(upper_cutoff), cfg);
}

}  // namespace subfrac
