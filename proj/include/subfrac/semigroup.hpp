#pragma once
// Base-process semigroups T(s) = exp(s L) and generator powers L^j.
//
// Three spec variants share one interface:
//  - EigenfunctionSpec: f with L f = lambda f; T(s) and L^j are closed form.
//  - HeatKernelSpec: periodic initial data on a uniform grid, evolved
//    spectrally under L = Laplacian (multiplier exp(-s xi^2)).
//  - FourierMultiplierSpec: same, under the symmetric-stable multiplier
//    exp(-s |xi|^alpha_sym).
// Grid data is treated as one period of a periodic function; evaluation at
// arbitrary x uses trigonometric interpolation, which is exact for
// band-limited data.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <variant>
#include <vector>

#include "subfrac/errors.hpp"

namespace subfrac {

struct SpatialGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n_points = 0;

  void validate() const {
    if (!(x_max > x_min)) throw parameter_error("SpatialGrid: need x_max > x_min");
    if (n_points < 16) throw parameter_error("SpatialGrid: need at least 16 points");
  }
  double period() const { return x_max - x_min; }
  double spacing() const { return period() / static_cast<double>(n_points); }
  double node(std::size_t i) const { return x_min + spacing() * static_cast<double>(i); }
};

enum class EigenProfile { cosine, sine, complex_exponential };

// Known eigenpair of the generator: L f = lambda f with
// f(x) = cos(k x), sin(k x), or Re exp(i k x) (tracked by its real part).
struct EigenfunctionSpec {
  double lambda = -1.0;
  double wave_number = 1.0;
  EigenProfile profile = EigenProfile::cosine;

  void validate() const {
    if (lambda > 0.0) throw parameter_error("EigenfunctionSpec: lambda must be non-positive");
  }
};

inline EigenfunctionSpec make_heat_eigenfunction(double wave_number,
                                                 EigenProfile profile = EigenProfile::cosine) {
  return EigenfunctionSpec{-wave_number * wave_number, wave_number, profile};
}

inline EigenfunctionSpec make_stable_eigenfunction(double wave_number, double alpha_sym,
                                                   EigenProfile profile = EigenProfile::cosine) {
  if (!(alpha_sym > 0.0) || alpha_sym > 2.0)
    throw parameter_error("make_stable_eigenfunction: alpha_sym must lie in (0, 2]");
  return EigenfunctionSpec{-std::pow(std::fabs(wave_number), alpha_sym), wave_number, profile};
}

namespace detail {

// Real trigonometric interpolant of one period of grid data, with
// per-mode multipliers applied at evaluation time.
struct FourierSeries {
  double x_min = 0.0;
  double omega0 = 0.0;            // fundamental frequency 2 pi / period
  std::vector<double> cos_coef;   // index m = 0 .. n/2
  std::vector<double> sin_coef;

  static FourierSeries analyze(const SpatialGrid& grid, const std::vector<double>& values) {
    grid.validate();
    if (values.size() != grid.n_points)
      throw parameter_error("semigroup: initial data size must match the grid");
    const std::size_t n = grid.n_points;
    const std::size_t m_max = n / 2;
    FourierSeries fs;
    fs.x_min = grid.x_min;
    fs.omega0 = 2.0 * 3.14159265358979323846 / grid.period();
    fs.cos_coef.assign(m_max + 1, 0.0);
    fs.sin_coef.assign(m_max + 1, 0.0);
    for (std::size_t m = 0; m <= m_max; ++m) {
      double ac = 0.0, as = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double phase = 2.0 * 3.14159265358979323846 *
                             static_cast<double>(m) * static_cast<double>(j) /
                             static_cast<double>(n);
        ac += values[j] * std::cos(phase);
        as += values[j] * std::sin(phase);
      }
      const bool shared = (m == 0) || (2 * m == n);
      const double w = (shared ? 1.0 : 2.0) / static_cast<double>(n);
      fs.cos_coef[m] = w * ac;
      fs.sin_coef[m] = shared ? 0.0 : w * as;
    }
    return fs;
  }

  double omega(std::size_t m) const { return omega0 * static_cast<double>(m); }

  // Evaluates sum_m phi(m) [a_m cos(omega_m (x - x_min)) + b_m sin(...)].
  template <class Phi>
  double evaluate(double x, Phi&& phi) const {
    const double xr = x - x_min;
    double acc = 0.0;
    for (std::size_t m = 0; m < cos_coef.size(); ++m) {
      const double p = phi(m);
      if (p == 0.0 && cos_coef[m] == 0.0 && sin_coef[m] == 0.0) continue;
      const double w = omega(m) * xr;
      acc += p * (cos_coef[m] * std::cos(w) + sin_coef[m] * std::sin(w));
    }
    return acc;
  }
};

}  // namespace detail

// Periodic heat semigroup data: generator L = d^2/dx^2, multiplier exp(-s xi^2).
class HeatKernelSpec {
 public:
  HeatKernelSpec(SpatialGrid grid, std::vector<double> initial_data)
      : grid_(grid),
        initial_data_(std::move(initial_data)),
        series_(detail::FourierSeries::analyze(grid_, initial_data_)) {}

  template <class F>
  static HeatKernelSpec from_function(const SpatialGrid& grid, F&& f) {
    grid.validate();
    std::vector<double> v(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) v[i] = f(grid.node(i));
    return HeatKernelSpec(grid, std::move(v));
  }

  const SpatialGrid& grid() const { return grid_; }
  const std::vector<double>& initial_data() const { return initial_data_; }
  const detail::FourierSeries& series() const { return series_; }
  double symbol(double omega) const { return omega * omega; }

 private:
  SpatialGrid grid_;
  std::vector<double> initial_data_;
  detail::FourierSeries series_;
};

// Periodic symmetric-stable semigroup data: multiplier exp(-s |xi|^alpha_sym).
class FourierMultiplierSpec {
 public:
  FourierMultiplierSpec(double alpha_sym, SpatialGrid grid, std::vector<double> initial_data)
      : alpha_sym_(alpha_sym),
        grid_(grid),
        initial_data_(std::move(initial_data)),
        series_(detail::FourierSeries::analyze(grid_, initial_data_)) {
    if (!(alpha_sym_ > 0.0) || alpha_sym_ > 2.0)
      throw parameter_error("FourierMultiplierSpec: alpha_sym must lie in (0, 2]");
  }

  template <class F>
  static FourierMultiplierSpec from_function(double alpha_sym, const SpatialGrid& grid, F&& f) {
    grid.validate();
    std::vector<double> v(grid.n_points);
    for (std::size_t i = 0; i < grid.n_points; ++i) v[i] = f(grid.node(i));
    return FourierMultiplierSpec(alpha_sym, grid, std::move(v));
  }

  double alpha_sym() const { return alpha_sym_; }
  const SpatialGrid& grid() const { return grid_; }
  const std::vector<double>& initial_data() const { return initial_data_; }
  const detail::FourierSeries& series() const { return series_; }
  double symbol(double omega) const { return std::pow(std::fabs(omega), alpha_sym_); }

 private:
  double alpha_sym_;
  SpatialGrid grid_;
  std::vector<double> initial_data_;
  detail::FourierSeries series_;
};

using SemigroupSpec = std::variant<EigenfunctionSpec, HeatKernelSpec, FourierMultiplierSpec>;

namespace detail {

inline double eigen_profile_value(const EigenfunctionSpec& e, double x) {
  switch (e.profile) {
    case EigenProfile::sine:
      return std::sin(e.wave_number * x);
    case EigenProfile::cosine:
    case EigenProfile::complex_exponential:
      return std::cos(e.wave_number * x);
  }
  throw parameter_error("EigenfunctionSpec: unknown profile");
}

// Noise amplification guard: applying L^j multiplies coefficient-level
// rounding error by symbol(omega_max)^j.
template <class Spec>
void require_resolvable_power(const Spec& spec, int j) {
  const double omega_max = spec.series().omega(spec.series().cos_coef.size() - 1);
  const double amplification = std::pow(spec.symbol(omega_max), j);
  if (amplification * 2.2e-16 > 1e-6) {
    std::ostringstream msg;
    msg << "apply_generator_power: order " << j
        << " is not resolvable on this grid (noise amplification " << amplification
        << "); refine the grid or lower j";
    throw accuracy_error(msg.str());
  }
}

}  // namespace detail

// f(x) itself.
inline double initial_value(const SemigroupSpec& spec, double x) {
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EigenfunctionSpec>) {
          s.validate();
          return detail::eigen_profile_value(s, x);
        } else {
          return s.series().evaluate(x, [](std::size_t) { return 1.0; });
        }
      },
      spec);
}

// (T(s) f)(x).  s = 0 returns f(x) exactly.
inline double apply_semigroup(const SemigroupSpec& spec, double s, double x) {
  if (s < 0.0) throw domain_error("apply_semigroup: s must be non-negative");
  if (s == 0.0) return initial_value(spec, x);
  return std::visit(
      [&](const auto& sp) -> double {
        using T = std::decay_t<decltype(sp)>;
        if constexpr (std::is_same_v<T, EigenfunctionSpec>) {
          sp.validate();
          return std::exp(sp.lambda * s) * detail::eigen_profile_value(sp, x);
        } else {
          const auto& fs = sp.series();
          return fs.evaluate(
              x, [&](std::size_t m) { return std::exp(-s * sp.symbol(fs.omega(m))); });
        }
      },
      spec);
}

// (L^j f)(x) for j >= 1.
inline double apply_generator_power(const SemigroupSpec& spec, int j, double x) {
  if (j < 1) throw parameter_error("apply_generator_power: j must be >= 1");
  return std::visit(
      [&](const auto& sp) -> double {
        using T = std::decay_t<decltype(sp)>;
        if constexpr (std::is_same_v<T, EigenfunctionSpec>) {
          sp.validate();
          return std::pow(sp.lambda, j) * detail::eigen_profile_value(sp, x);
        } else {
          detail::require_resolvable_power(sp, j);
          const auto& fs = sp.series();
          return fs.evaluate(x, [&](std::size_t m) {
            const double sym = sp.symbol(fs.omega(m));
            double p = 1.0;
            for (int i = 0; i < j; ++i) p *= -sym;
            return p;
          });
        }
      },
      spec);
}

// Replaces grid-backed initial data by T(r) f; enables composing semigroup
// steps.  Closed-form eigenfunction specs do not need it and are rejected.
inline SemigroupSpec evolve(const SemigroupSpec& spec, double r) {
  if (r < 0.0) throw domain_error("evolve: r must be non-negative");
  return std::visit(
      [&](const auto& sp) -> SemigroupSpec {
        using T = std::decay_t<decltype(sp)>;
        if constexpr (std::is_same_v<T, EigenfunctionSpec>) {
          throw parameter_error(
              "evolve: eigenfunction specs evolve in closed form; evolve() is for grid-backed specs");
        } else {
          const auto& g = sp.grid();
          const auto& fs = sp.series();
          std::vector<double> v(g.n_points);
          for (std::size_t i = 0; i < g.n_points; ++i)
            v[i] = fs.evaluate(g.node(i),
                               [&](std::size_t m) { return std::exp(-r * sp.symbol(fs.omega(m))); });
          if constexpr (std::is_same_v<T, HeatKernelSpec>) {
            return HeatKernelSpec(g, std::move(v));
          } else {
            return FourierMultiplierSpec(sp.alpha_sym(), g, std::move(v));
          }
        }
      },
      spec);
}

}  // namespace subfrac
