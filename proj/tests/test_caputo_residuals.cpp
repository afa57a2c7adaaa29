#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "subfrac/semigroup.hpp"
#include "subfrac/verify.hpp"

using namespace subfrac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("L1 Caputo derivative", "[caputo]") {
  // Exact on affine data, any beta.
  const double beta = 0.4;
  const double t = 1.5;
  const double affine = caputo_derivative_of([](double s) { return 2.0 * s + 1.0; }, beta, t);
  REQUIRE_THAT(affine, WithinRel(2.0 * std::pow(t, 1.0 - beta) / std::tgamma(2.0 - beta), 1e-12));

  // Order 2 - beta on smooth data: D^{1/2} t^2 = 2 t^{3/2} / Gamma(5/2).
  const double exact = 2.0 * std::pow(t, 1.5) / std::tgamma(2.5);
  auto err = [&](std::size_t n) {
    const double got = caputo_derivative_of([](double s) { return s * s; }, 0.5, t, n);
    return std::fabs(got - exact);
  };
  const double order = std::log(err(512) / err(2048)) / std::log(4.0);
  REQUIRE(order >= 1.4);
  REQUIRE(order <= 2.1);
}

TEST_CASE("Caputo argument validation", "[caputo]") {
  std::vector<double> u(100, 1.0);
  REQUIRE_THROWS_AS(caputo_derivative(u, 1.0, 1.0, 0.5), parameter_error);
  REQUIRE_THROWS_AS(caputo_derivative(u, -1.0, 0.5, 0.5), domain_error);
  REQUIRE_THROWS_AS(caputo_derivative(std::vector<double>(10, 1.0), 1.0, 0.5, 0.5),
                    parameter_error);
  // t must sit on a grid node.
  REQUIRE_THROWS_AS(caputo_derivative(u, 1.0, 0.5, 0.505), domain_error);
  REQUIRE_THROWS_AS(caputo_derivative_of([](double s) { return s; }, 0.5, 0.0), domain_error);
  REQUIRE_THROWS_AS(caputo_derivative_of([](double s) { return s; }, 0.5, 1.0, 32),
                    parameter_error);
}

TEST_CASE("Brownian-time residual", "[residual]") {
  SemigroupSpec spec = make_heat_eigenfunction(1.0);
  const std::vector<double> ts{0.5, 1.0, 2.0};
  for (auto route : {IbmRoute::brownian_time, IbmRoute::fractional_half}) {
    const auto rep = residual_ibm_pde(spec, ts, 0.0, route);
    REQUIRE(rep.pde_name == "brownian_time");
    REQUIRE(rep.residuals.size() == ts.size());
    REQUIRE(rep.eval_points.size() == ts.size());
    REQUIRE(rep.max_rel_residual < 1e-5);
  }
  const auto off_axis = residual_ibm_pde(spec, ts, 0.7);
  REQUIRE(off_axis.max_rel_residual < 1e-5);
  const auto planted =
      residual_ibm_pde(spec, ts, 0.0, IbmRoute::brownian_time, PdeSolution::planted_exponential);
  REQUIRE(planted.max_rel_residual > 0.05);
}

TEST_CASE("fractional Caputo residual", "[residual]") {
  SemigroupSpec spec = make_heat_eigenfunction(1.0);
  const std::vector<double> ts{0.5, 1.0};
  for (double beta : {0.5, 1.0 / 3.0}) {
    const auto rep = residual_fractional(spec, beta, ts, 0.0);
    INFO("beta = " << beta);
    REQUIRE(rep.max_rel_residual < 1e-3);
  }
  // The L1 truncation error must shrink at its design order (2 - beta)
  // under step refinement; anything slower means the residual is measuring
  // discretization noise rather than the solution.
  const auto coarse = residual_fractional(spec, 0.5, ts, 0.0, PdeSolution::from_solver, 512);
  const auto fine = residual_fractional(spec, 0.5, ts, 0.0, PdeSolution::from_solver, 2048);
  const double order = std::log(coarse.max_rel_residual / fine.max_rel_residual) / std::log(4.0);
  REQUIRE(order >= 1.4);

  const auto planted = residual_fractional(spec, 0.5, ts, 0.0, PdeSolution::planted_exponential);
  REQUIRE(planted.max_rel_residual > 0.05);
}

TEST_CASE("n-th order heat-type residual", "[residual]") {
  SemigroupSpec spec = make_heat_eigenfunction(1.0);
  const std::vector<double> ts{0.5, 1.0, 2.0};
  for (int n : {2, 3, 4}) {
    const auto rep = residual_n_order(spec, n, ts, 0.0);
    INFO("n = " << n);
    REQUIRE(rep.max_rel_residual < 1e-4);
  }
  const auto planted = residual_n_order(spec, 3, ts, 0.0, DriftExponentConvention::jn_minus_one,
                                        PdeSolution::planted_exponential);
  REQUIRE(planted.max_rel_residual > 0.05);
}

TEST_CASE("drift exponent convention diagnostic", "[residual]") {
  // t^{1-j/n} in place of t^{j/n-1} coincides at t = 1 and nearly cancels at
  // lambda = -1, so the discriminating probe needs lambda = -4 and t != 1.
  SemigroupSpec spec = make_heat_eigenfunction(2.0);
  const std::vector<double> ts{0.5, 2.0};
  const auto kept = residual_n_order(spec, 3, ts, 0.0);
  const auto alt = residual_n_order(spec, 3, ts, 0.0, DriftExponentConvention::one_minus_jn);
  REQUIRE(kept.max_rel_residual < 1e-4);
  REQUIRE(alt.max_rel_residual > 0.05);
}

TEST_CASE("alpha-time residual", "[residual]") {
  SemigroupSpec spec = make_heat_eigenfunction(1.0);
  const std::vector<double> ts{0.5, 1.0, 2.0};
  REQUIRE(residual_alpha_time_pde(spec, 1.0, ts, 0.0).max_rel_residual < 1e-4);
  REQUIRE(residual_alpha_time_pde(spec, 0.5, ts, 0.0).max_rel_residual < 1e-3);
  REQUIRE(residual_alpha_time_pde(spec, 1.0, ts, 0.0, PdeSolution::planted_exponential)
              .max_rel_residual > 0.05);
  REQUIRE(residual_alpha_time_pde(spec, 0.5, ts, 0.0, PdeSolution::planted_exponential)
              .max_rel_residual > 0.05);
}

TEST_CASE("stable kernel PDE residual", "[residual]") {
  REQUIRE(stable_kernel_pde_residual(1, 1, 1.0, 0.5).max_rel_residual < 1e-8);
  REQUIRE(stable_kernel_pde_residual(1, 2, 1.0, 0.0).max_rel_residual < 1e-6);
  REQUIRE_THROWS_AS(stable_kernel_pde_residual(2, 3, 1.0, 0.5), parameter_error);
  REQUIRE_THROWS_AS(stable_kernel_pde_residual(1, 1, 0.0, 0.5), domain_error);
}

TEST_CASE("residual operators reject unusable input", "[residual]") {
  SemigroupSpec spec = make_heat_eigenfunction(1.0);
  const std::vector<double> empty;
  const std::vector<double> negative{-1.0};
  REQUIRE_THROWS_AS(residual_fractional(spec, 0.5, empty, 0.0), parameter_error);
  REQUIRE_THROWS_AS(residual_fractional(spec, 0.5, negative, 0.0), domain_error);
  REQUIRE_THROWS_AS(residual_n_order(spec, 5, std::vector<double>{1.0}, 0.0), parameter_error);
  REQUIRE_THROWS_AS(residual_alpha_time_pde(spec, 0.7, std::vector<double>{1.0}, 0.0),
                    parameter_error);

  // Grid-backed specs have no closed-form generator action.
  SpatialGrid grid;
  grid.x_min = -kPi;
  grid.x_max = kPi;
  grid.n_points = 64;
  SemigroupSpec grid_spec =
      HeatKernelSpec::from_function(grid, [](double x) { return std::cos(x); });
  REQUIRE_THROWS_AS(residual_ibm_pde(grid_spec, std::vector<double>{1.0}, 0.0), parameter_error);
}
