#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <utility>
#include <vector>

#include "subfrac/sampling.hpp"
#include "subfrac/verify.hpp"

using namespace subfrac;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("empirical distribution", "[stats]") {
  EmpiricalDistribution d(std::vector<double>{3.0, 1.0, 2.0, 2.0});
  REQUIRE(d.size() == 4);
  REQUIRE(d.ecdf(0.0) == 0.0);
  REQUIRE(d.ecdf(1.999) == 0.25);
  REQUIRE(d.ecdf(2.0) == 0.75);  // right-continuous
  REQUIRE(d.ecdf(3.0) == 1.0);
  REQUIRE_FALSE(d.degenerate());
  REQUIRE(EmpiricalDistribution(std::vector<double>{5.0, 5.0, 5.0}).degenerate());

  REQUIRE_THROWS_AS(EmpiricalDistribution(std::vector<double>{1.0}), parameter_error);
  REQUIRE_THROWS_AS(EmpiricalDistribution(std::vector<double>{1.0, std::nan("")}),
                    parameter_error);
}

TEST_CASE("KS statistic basics", "[stats]") {
  const auto xs = sample_gaussian(400, RngStream{101, 0});
  EmpiricalDistribution a(xs);
  EmpiricalDistribution same(xs);
  const auto self = ks_statistic(a, same);
  REQUIRE(self.distance == 0.0);
  REQUIRE_FALSE(self.reject_5pct);
  REQUIRE_THAT(self.critical_5pct, WithinRel(1.358 * std::sqrt(800.0 / (400.0 * 400.0)), 1e-14));

  EmpiricalDistribution small_a(sample_gaussian(50, RngStream{101, 2}));
  EmpiricalDistribution small_b(sample_gaussian(50, RngStream{101, 3}));
  REQUIRE_THROWS_AS(ks_statistic(small_a, small_b), parameter_error);

  EmpiricalDistribution flat(std::vector<double>(200, 1.0));
  REQUIRE(ks_statistic(a, flat).degenerate);
}

TEST_CASE("KS decision on same and different laws", "[stats]") {
  const std::size_t n = 20000;
  EmpiricalDistribution a(sample_gaussian(n, RngStream{101, 10}));
  EmpiricalDistribution b(sample_gaussian(n, RngStream{101, 11}));
  REQUIRE_FALSE(ks_statistic(a, b).reject_5pct);

  // Cauchy versus Gaussian separates immediately.
  EmpiricalDistribution c(sample_symmetric_stable(1.0, 1.0, 5000, RngStream{101, 12}));
  EmpiricalDistribution g(sample_gaussian(5000, RngStream{101, 13}));
  REQUIRE(ks_statistic(c, g).reject_5pct);
}

TEST_CASE("Hill estimator recovers stable tail indices", "[stats]") {
  const std::size_t n = 100000;
  // Hill's bias grows as alpha -> 2: the second-order tail term decays like
  // s^{-2 alpha} relative to s^{-alpha}, so at alpha = 1.8 only the extreme
  // order statistics are clean and k must shrink.
  for (auto [alpha, k] : {std::pair{1.2, 1000}, {1.5, 1000}, {1.8, 200}}) {
    EmpiricalDistribution d(
        sample_symmetric_stable(alpha, 1.0, n, RngStream{77, static_cast<std::uint64_t>(10.0 * alpha)}));
    const auto fit = tail_exponent(d, k);
    INFO("alpha = " << alpha << ", k = " << k << ", estimate = " << fit.estimated_index);
    REQUIRE(fit.k_order_statistics == k);
    REQUIRE_THAT(fit.estimated_index, WithinRel(alpha, 0.10));
    REQUIRE(fit.ci_low < fit.ci_high);
  }
}

TEST_CASE("Hill estimator input guards", "[stats]") {
  EmpiricalDistribution d(sample_gaussian(5000, RngStream{77, 1}));
  REQUIRE_THROWS_AS(tail_exponent(d, 10), parameter_error);
  // k = 1000 needs 10000 positive samples; ~2500 are available here.
  REQUIRE_THROWS_AS(tail_exponent(d, 1000), parameter_error);
}

TEST_CASE("power-law drift diagnostic", "[stats]") {
  const std::size_t n = 100000;
  // Genuine power tail: estimates at two k agree within their intervals.
  EmpiricalDistribution stable(sample_symmetric_stable(1.5, 1.0, n, RngStream{78, 0}));
  REQUIRE(power_law_drift(stable, 500, 2000).consistent);

  // Gaussian-type tail (inverse subordinator at beta = 1/2): the fitted
  // index drifts with k and the intervals separate.
  EmpiricalDistribution light(sample_inverse_subordinator(0.5, 1.0, n, RngStream{78, 1}));
  const auto drift = power_law_drift(light, 500, 2000);
  REQUIRE_FALSE(drift.consistent);
  REQUIRE(drift.small_k.estimated_index > drift.large_k.estimated_index);

  REQUIRE_THROWS_AS(power_law_drift(stable, 2000, 500), parameter_error);
}
