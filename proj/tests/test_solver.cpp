#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "subfrac/density.hpp"
#include "subfrac/semigroup.hpp"
#include "subfrac/solver.hpp"

using namespace subfrac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Brownian-time solution at the reference point", "[solver]") {
  // u(1, 0) with L f = -f equals exp(1) erfc(1).
  SemigroupSpec spec = make_heat_eigenfunction(1.0);
  const auto r = solve_brownian_time(spec, 1.0, 0.0);
  REQUIRE_THAT(r.value, WithinRel(0.427583576155807004, 1e-10));
  REQUIRE(r.nodes_used > 0);
  REQUIRE(r.est_error < 1e-8);
}

TEST_CASE("Brownian-time solution is the beta = 1/2 fractional solution", "[solver]") {
  SemigroupSpec spec = make_heat_eigenfunction(1.0);
  for (double t : {0.5, 1.0, 3.0}) {
    for (double x : {0.0, 0.8}) {
      const double ibm = solve_brownian_time(spec, t, x).value;
      const double frac = solve_fractional_subordination(spec, 0.5, t, x).value;
      INFO("t = " << t << ", x = " << x);
      REQUIRE_THAT(ibm, WithinRel(frac, 1e-10));
    }
  }
}

TEST_CASE("fractional solution: both clock routes and the closed form", "[solver]") {
  // For an eigenfunction, u(t, x) = E_beta(lambda t^beta) f(x).  The inverse
  // clock route and the direct subordinator route integrate different
  // densities and must agree with it independently.
  SemigroupSpec spec = make_heat_eigenfunction(2.0);  // lambda = -4
  const double t = 2.0;
  for (double beta : {1.0 / 3.0, 0.5, 2.0 / 3.0}) {
    const double want = mittag_leffler(beta, -4.0 * std::pow(t, beta));
    const double via_inverse = solve_fractional_subordination(spec, beta, t, 0.0).value;
    const double via_direct = solve_fractional_subordination_direct(spec, beta, t, 0.0).value;
    INFO("beta = " << beta);
    REQUIRE_THAT(via_inverse, WithinRel(want, 1e-9));
    REQUIRE_THAT(via_direct, WithinRel(want, 1e-9));
    REQUIRE_THAT(via_inverse, WithinRel(via_direct, 1e-9));
  }
  // The same two values pinned as frozen constants.
  REQUIRE_THAT(solve_fractional_subordination(spec, 1.0 / 3.0, 2.0, 0.0).value,
               WithinRel(0.132145620657795536, 1e-9));
  REQUIRE_THAT(solve_fractional_subordination(spec, 2.0 / 3.0, 2.0, 0.0).value,
               WithinRel(0.064577136213631231, 1e-9));
}

TEST_CASE("alpha-time solutions", "[solver]") {
  SemigroupSpec spec = make_heat_eigenfunction(1.0);
  // alpha = 1: u(1, 0) = (2/pi) int_0^inf exp(-s)/(1 + s^2) ds.
  REQUIRE_THAT(solve_alpha_time(spec, 1.0, 1.0, 0.0).value,
               WithinRel(0.395627118318922461, 1e-9));
  // alpha = 2 is the Brownian clock.
  for (double t : {0.5, 2.0}) {
    REQUIRE_THAT(solve_alpha_time(spec, 2.0, t, 0.3).value,
                 WithinRel(solve_brownian_time(spec, t, 0.3).value, 1e-12));
  }
  // alpha = 1/2 regression value.
  REQUIRE_THAT(solve_alpha_time(spec, 0.5, 1.0, 0.0).value,
               WithinAbs(0.375499253059209, 1e-6));
}

TEST_CASE("grid-backed specs solve to the eigenfunction answer", "[solver]") {
  SpatialGrid grid;
  grid.x_min = -kPi;
  grid.x_max = kPi;
  grid.n_points = 64;
  SemigroupSpec grid_spec =
      HeatKernelSpec::from_function(grid, [](double x) { return std::cos(x); });
  SemigroupSpec eigen_spec = make_heat_eigenfunction(1.0);

  const double t = 1.0;
  const double x = 1.0;
  REQUIRE_THAT(solve_brownian_time(grid_spec, t, x).value,
               WithinAbs(solve_brownian_time(eigen_spec, t, x).value, 1e-8));
  REQUIRE_THAT(solve_fractional_subordination(grid_spec, 0.5, t, x).value,
               WithinAbs(solve_fractional_subordination(eigen_spec, 0.5, t, x).value, 1e-8));

  SemigroupSpec stable_grid = FourierMultiplierSpec::from_function(
      1.5, grid, [](double x_) { return std::cos(x_); });
  SemigroupSpec stable_eigen = make_stable_eigenfunction(1.0, 1.5);
  REQUIRE_THAT(solve_fractional_subordination(stable_grid, 0.5, t, x).value,
               WithinAbs(solve_fractional_subordination(stable_eigen, 0.5, t, x).value, 1e-8));
}

TEST_CASE("solver argument validation", "[solver]") {
  SemigroupSpec spec = make_heat_eigenfunction(1.0);
  REQUIRE_THROWS_AS(solve_brownian_time(spec, 0.0, 0.0), domain_error);
  REQUIRE_THROWS_AS(solve_fractional_subordination(spec, 0.5, -1.0, 0.0), domain_error);
  REQUIRE_THROWS_AS(solve_fractional_subordination(spec, 1.0, 1.0, 0.0), parameter_error);
  REQUIRE_THROWS_AS(solve_fractional_subordination_direct(spec, 0.0, 1.0, 0.0), parameter_error);
  REQUIRE_THROWS_AS(solve_alpha_time(spec, 2.5, 1.0, 0.0), parameter_error);
  REQUIRE_THROWS_AS(solve_alpha_time(spec, 1.0, 0.0, 0.0), domain_error);

  QuadratureConfig bad;
  bad.rel_tol = -1.0;
  REQUIRE_THROWS_AS(solve_brownian_time(spec, 1.0, 0.0, bad), parameter_error);
}
