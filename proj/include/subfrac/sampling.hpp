#pragma once
// Exact samplers for stable laws, subordinators and their inverses, path
// simulation, and composed (subordinated) processes.
//
// Conventions: Brownian motion has generator L = Laplacian, so increments
// over dt have variance 2 dt.  Symmetric stable laws have characteristic
// function exp(-t |xi|^alpha); subordinators have Laplace transform
// exp(-t s^beta).  Self-similarity gives S_t = t^{1/alpha} S_1 and
// D_t = t^{1/beta} D_1 in distribution.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <variant>
#include <vector>

#include "subfrac/errors.hpp"
#include "subfrac/grid.hpp"
#include "subfrac/rng.hpp"

namespace subfrac {

namespace detail {

inline constexpr double kPiSampling = 3.14159265358979323846;

// Substream tags; user-level stream ids stay disjoint from these splits.
inline constexpr std::uint64_t kTagInnerClock = 0x494E4E4552ull;
inline constexpr std::uint64_t kTagOuterPos = 0x4F55544552ull;
inline constexpr std::uint64_t kTagOuterNeg = 0x4E45474154ull;

inline void require_alpha(double alpha, const char* where) {
  if (!(alpha > 0.0) || alpha > 2.0) {
    std::ostringstream msg;
    msg << where << ": alpha must lie in (0, 2], got " << alpha;
    throw parameter_error(msg.str());
  }
}

inline void require_beta_open(double beta, const char* where) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    std::ostringstream msg;
    msg << where << ": beta must lie in (0, 1), got " << beta;
    throw parameter_error(msg.str());
  }
}

// Chambers-Mallows-Stuck: one standard symmetric alpha-stable variate
// (characteristic function exp(-|xi|^alpha)).
inline double symmetric_stable_variate(double alpha, Rng& rng) {
  const double u = kPiSampling * (rng.u01() - 0.5);
  if (alpha == 1.0) return std::tan(u);
  const double w = rng.exponential();
  return std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha) *
         std::pow(std::cos((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
}

// Kanter: one standard beta-stable subordinator variate (Laplace transform
// exp(-s^beta)).  Evaluated in log space; the exponent cap trades an
// invisible bias at the ~1e-13 quantile for guaranteed finite output.
inline double stable_subordinator_variate(double beta, Rng& rng) {
  const double theta = kPiSampling * rng.u01();
  const double w = rng.exponential();
  const double ratio = (1.0 - beta) / beta;
  double log_v = std::log(std::sin(beta * theta)) +
                 ratio * std::log(std::sin((1.0 - beta) * theta)) -
                 std::log(std::sin(theta)) / beta - ratio * std::log(w);
  if (log_v > 700.0) log_v = 700.0;
  return std::exp(log_v);
}

}  // namespace detail

// n independent standard normals.
inline std::vector<double> sample_gaussian(std::size_t n, RngStream stream) {
  if (n == 0) throw parameter_error("sample_gaussian: empty request (n = 0)");
  Rng rng(stream);
  std::vector<double> out(n);
  for (auto& v : out) v = rng.gaussian();
  return out;
}

// n draws of S_t, symmetric alpha-stable at time t.
inline std::vector<double> sample_symmetric_stable(double alpha, double t, std::size_t n,
                                                   RngStream stream) {
  detail::require_alpha(alpha, "sample_symmetric_stable");
  if (!(t > 0.0)) throw domain_error("sample_symmetric_stable: t must be positive");
  if (n == 0) throw parameter_error("sample_symmetric_stable: empty request (n = 0)");
  Rng rng(stream);
  const double scale = std::pow(t, 1.0 / alpha);
  std::vector<double> out(n);
  for (auto& v : out) v = scale * detail::symmetric_stable_variate(alpha, rng);
  return out;
}

// n draws of D_t, the beta-stable subordinator at time t.
inline std::vector<double> sample_stable_subordinator(double beta, double t, std::size_t n,
                                                      RngStream stream) {
  detail::require_beta_open(beta, "sample_stable_subordinator");
  if (!(t > 0.0)) throw domain_error("sample_stable_subordinator: t must be positive");
  if (n == 0) throw parameter_error("sample_stable_subordinator: empty request (n = 0)");
  Rng rng(stream);
  const double scale = std::pow(t, 1.0 / beta);
  std::vector<double> out(n);
  for (auto& v : out) v = scale * detail::stable_subordinator_variate(beta, rng);
  return out;
}

// n draws of the inverse subordinator E_t = inf{x : D(x) > t}, by the exact
// identity E_t = (t / D_1)^beta in distribution.
inline std::vector<double> sample_inverse_subordinator(double beta, double t, std::size_t n,
                                                       RngStream stream) {
  detail::require_beta_open(beta, "sample_inverse_subordinator");
  if (!(t > 0.0)) throw domain_error("sample_inverse_subordinator: t must be positive");
  if (n == 0) throw parameter_error("sample_inverse_subordinator: empty request (n = 0)");
  Rng rng(stream);
  std::vector<double> out(n);
  for (auto& v : out) v = std::pow(t / detail::stable_subordinator_variate(beta, rng), beta);
  return out;
}

// Path kinds for simulate_path.
struct BrownianKind {};
struct SubordinatorKind {
  double beta;
};
struct SymmetricStableKind {
  double alpha;
};
using PathKind = std::variant<BrownianKind, SubordinatorKind, SymmetricStableKind>;

// One path with independent increments over the grid steps.
inline SamplePath simulate_path(const PathKind& kind, const TimeGrid& grid, RngStream stream) {
  grid.validate();
  Rng rng(stream);
  SamplePath path;
  path.grid = grid;
  path.values.resize(grid.nodes.size());
  path.values[0] = 0.0;
  for (std::size_t i = 1; i < grid.nodes.size(); ++i) {
    const double dt = grid.nodes[i] - grid.nodes[i - 1];
    const double incr = std::visit(
        [&](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, BrownianKind>) {
            return std::sqrt(2.0 * dt) * rng.gaussian();
          } else if constexpr (std::is_same_v<T, SubordinatorKind>) {
            detail::require_beta_open(k.beta, "simulate_path");
            return std::pow(dt, 1.0 / k.beta) * detail::stable_subordinator_variate(k.beta, rng);
          } else {
            detail::require_alpha(k.alpha, "simulate_path");
            return std::pow(dt, 1.0 / k.alpha) * detail::symmetric_stable_variate(k.alpha, rng);
          }
        },
        kind);
    path.values[i] = path.values[i - 1] + incr;
  }
  return path;
}

// Two-sided Brownian motion as independent one-sided branches glued at 0;
// value(s) reads the positive branch at s >= 0 and the negative branch at -s.
struct TwoSidedBrownianPath {
  SamplePath positive;
  SamplePath negative;

  double value(double s) const {
    const SamplePath& branch = (s >= 0.0) ? positive : negative;
    const double a = std::fabs(s);
    const auto& nodes = branch.grid.nodes;
    if (a > nodes.back())
      throw insufficient_horizon_error("TwoSidedBrownianPath: |s| exceeds the simulated horizon");
    std::size_t i = 1;
    while (i < nodes.size() && nodes[i] < a) ++i;
    if (i == nodes.size()) return branch.values.back();
    const double w = (a - nodes[i - 1]) / (nodes[i] - nodes[i - 1]);
    return branch.values[i - 1] + w * (branch.values[i] - branch.values[i - 1]);
  }
};

inline TwoSidedBrownianPath simulate_two_sided_brownian(const TimeGrid& grid, RngStream stream) {
  grid.validate();
  TwoSidedBrownianPath p;
  p.positive = simulate_path(BrownianKind{}, grid, stream);
  // The negative branch draws from a tagged substream, keeping the two
  // branches independent under a single user-visible stream.
  Rng neg_rng(stream, detail::kTagOuterNeg);
  p.negative.grid = grid;
  p.negative.values.assign(grid.nodes.size(), 0.0);
  for (std::size_t i = 1; i < grid.nodes.size(); ++i) {
    const double dt = grid.nodes[i] - grid.nodes[i - 1];
    p.negative.values[i] = p.negative.values[i - 1] + std::sqrt(2.0 * dt) * neg_rng.gaussian();
  }
  return p;
}

// First passage of a non-decreasing path above level t, linearly
// interpolated between the bracketing nodes.
inline double invert_subordinator_path(const SamplePath& path, double t) {
  path.validate();
  if (!(t > 0.0)) throw domain_error("invert_subordinator_path: t must be positive");
  const auto& v = path.values;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1])
      throw parameter_error("invert_subordinator_path: path must be non-decreasing");
  }
  if (!(v.back() > t)) {
    std::ostringstream msg;
    msg << "invert_subordinator_path: level " << t << " is not exceeded on [0, "
        << path.grid.t_max << "] (terminal value " << v.back()
        << "); extend the path and retry";
    throw insufficient_horizon_error(msg.str());
  }
  std::size_t i = 1;
  while (v[i] <= t) ++i;
  const auto& x = path.grid.nodes;
  const double w = (t - v[i - 1]) / (v[i] - v[i - 1]);
  return x[i - 1] + w * (x[i] - x[i - 1]);
}

// Random clocks for subordinated sampling.
struct BrownianTimeClock {};                       // |Y_t|, Y Brownian
struct InverseStableClock {
  double beta;                                     // E_t
};
struct AlphaTimeClock {
  double alpha;                                    // |S_t|
};
struct IteratedBmClock {
  double start_z = 0.0;                            // z + X(Y_t), X two-sided
};
using SubordinationKind =
    std::variant<BrownianTimeClock, InverseStableClock, AlphaTimeClock, IteratedBmClock>;

struct OuterProcess {
  enum class Kind { brownian, symmetric_stable };
  Kind kind = Kind::brownian;
  double alpha = 2.0;  // used by symmetric_stable only
};

// n draws of the subordinated value at clock time t.  The inner clock, the
// positive branch, and the negative branch use disjoint substreams, so
// different outer processes see identical clocks under the same stream.
inline std::vector<double> sample_subordinated(const SubordinationKind& kind,
                                               const OuterProcess& outer, double t, std::size_t n,
                                               RngStream stream) {
  if (!(t > 0.0)) throw domain_error("sample_subordinated: t must be positive");
  if (n == 0) throw parameter_error("sample_subordinated: empty request (n = 0)");
  if (outer.kind == OuterProcess::Kind::symmetric_stable)
    detail::require_alpha(outer.alpha, "sample_subordinated");
  std::visit(
      [](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, InverseStableClock>)
          detail::require_beta_open(k.beta, "sample_subordinated");
        else if constexpr (std::is_same_v<T, AlphaTimeClock>)
          detail::require_alpha(k.alpha, "sample_subordinated");
      },
      kind);

  Rng inner(stream, detail::kTagInnerClock);
  Rng outer_pos(stream, detail::kTagOuterPos);
  Rng outer_neg(stream, detail::kTagOuterNeg);

  auto outer_value = [&](double clock, Rng& rng) -> double {
    if (clock == 0.0) return 0.0;
    if (outer.kind == OuterProcess::Kind::brownian) return std::sqrt(2.0 * clock) * rng.gaussian();
    return std::pow(clock, 1.0 / outer.alpha) * detail::symmetric_stable_variate(outer.alpha, rng);
  };

  std::vector<double> out(n);
  for (auto& v : out) {
    v = std::visit(
        [&](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, BrownianTimeClock>) {
            const double clock = std::fabs(std::sqrt(2.0 * t) * inner.gaussian());
            return outer_value(clock, outer_pos);
          } else if constexpr (std::is_same_v<T, InverseStableClock>) {
            const double clock =
                std::pow(t / detail::stable_subordinator_variate(k.beta, inner), k.beta);
            return outer_value(clock, outer_pos);
          } else if constexpr (std::is_same_v<T, AlphaTimeClock>) {
            const double clock =
                std::fabs(std::pow(t, 1.0 / k.alpha) * detail::symmetric_stable_variate(k.alpha, inner));
            return outer_value(clock, outer_pos);
          } else {
            const double y = std::sqrt(2.0 * t) * inner.gaussian();
            Rng& branch = (y >= 0.0) ? outer_pos : outer_neg;
            return k.start_z + outer_value(std::fabs(y), branch);
          }
        },
        kind);
  }
  return out;
}

}  // namespace subfrac
