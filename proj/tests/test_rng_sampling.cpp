#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <vector>

#include "subfrac/parallel.hpp"
#include "subfrac/rng.hpp"
#include "subfrac/sampling.hpp"

using namespace subfrac;

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s2 = 0.0;
  for (double x : v) s2 += (x - m) * (x - m);
  return {m, s2 / static_cast<double>(v.size() - 1)};
}

}  // namespace

TEST_CASE("rng streams are deterministic and split cleanly", "[rng]") {
  Rng a({42, 7});
  Rng b({42, 7});
  for (int i = 0; i < 64; ++i) REQUIRE(a.next_u64() == b.next_u64());

  Rng c({42, 8});
  Rng d({42, 7}, /*tag=*/1);
  Rng e({42, 7});
  bool stream_differs = false;
  bool tag_differs = false;
  for (int i = 0; i < 8; ++i) {
    const auto base = e.next_u64();
    stream_differs |= c.next_u64() != base;
    tag_differs |= d.next_u64() != base;
  }
  REQUIRE(stream_differs);
  REQUIRE(tag_differs);
}

TEST_CASE("u01 stays inside the open interval", "[rng]") {
  Rng r({1, 0});
  for (int i = 0; i < 10000; ++i) {
    const double u = r.u01();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("gaussian sampler has the right first two moments", "[sampling]") {
  const std::size_t n = 40000;
  const auto v = sample_gaussian(n, {11, 0});
  const auto m = moments(v);
  REQUIRE(std::fabs(m.mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  REQUIRE(std::fabs(m.var - 1.0) < 4.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("subordinator samples reproduce their Laplace transform", "[sampling]") {
  const std::size_t n = 20000;
  for (double beta : {0.5, 2.0 / 3.0}) {
    const auto v = sample_stable_subordinator(beta, 1.0, n, {5, 3});
    for (double s : {0.5, 2.0}) {
      double acc = 0.0, acc2 = 0.0;
      for (double x : v) {
        const double e = std::exp(-s * x);
        acc += e;
        acc2 += e * e;
      }
      const double mean = acc / static_cast<double>(n);
      const double var = acc2 / static_cast<double>(n) - mean * mean;
      const double se = std::sqrt(var / static_cast<double>(n));
      const double want = std::exp(-std::pow(s, beta));
      REQUIRE(std::fabs(mean - want) < 4.0 * se);
    }
  }
}

TEST_CASE("inverse subordinator mean matches t^beta / Gamma(1+beta)", "[sampling]") {
  // E[E_t] = t^beta / Gamma(1+beta); at beta = 1/2, t = 1 this is 2/sqrt(pi).
  const std::size_t n = 20000;
  const auto v = sample_inverse_subordinator(0.5, 1.0, n, {5, 4});
  const auto m = moments(v);
  const double want = 1.1283791670955126;
  const double se = std::sqrt(m.var / static_cast<double>(n));
  REQUIRE(std::fabs(m.mean - want) < 4.0 * se);
  REQUIRE(*std::min_element(v.begin(), v.end()) > 0.0);
}

TEST_CASE("alpha = 1 outer samples are Cauchy", "[sampling]") {
  const std::size_t n = 20000;
  const auto v = sample_symmetric_stable(1.0, 1.0, n, {5, 5});
  // F(1) = 3/4 for the standard Cauchy law.
  double below = 0.0;
  for (double x : v)
    if (x <= 1.0) below += 1.0;
  const double ecdf1 = below / static_cast<double>(n);
  const double se = std::sqrt(0.75 * 0.25 / static_cast<double>(n));
  REQUIRE(std::fabs(ecdf1 - 0.75) < 4.0 * se);
}

TEST_CASE("Kanter sampler stays finite for small beta", "[sampling]") {
  const auto v = sample_stable_subordinator(0.1, 1.0, 2000, {5, 6});
  for (double x : v) {
    REQUIRE(std::isfinite(x));
    REQUIRE(x > 0.0);
  }
}

TEST_CASE("sampler argument validation", "[sampling]") {
  REQUIRE_THROWS_AS(sample_symmetric_stable(2.5, 1.0, 10, {1, 0}), parameter_error);
  REQUIRE_THROWS_AS(sample_stable_subordinator(1.0, 1.0, 10, {1, 0}), parameter_error);
  REQUIRE_THROWS_AS(sample_stable_subordinator(0.5, -1.0, 10, {1, 0}), domain_error);
  REQUIRE_THROWS_AS(sample_subordinated(BrownianTimeClock{}, {}, 1.0, 0, {1, 0}), parameter_error);
}

TEST_CASE("subordinator paths are nondecreasing and invertible", "[paths]") {
  const auto grid = TimeGrid::uniform(4.0, 512);
  const auto path = simulate_path(SubordinatorKind{0.5}, grid, {9, 1});
  REQUIRE(path.values.front() == 0.0);
  for (std::size_t i = 1; i < path.values.size(); ++i)
    REQUIRE(path.values[i] >= path.values[i - 1]);

  // First passage is monotone in the level and clamps to the step structure.
  const double e1 = invert_subordinator_path(path, 0.5 * path.values.back());
  const double e2 = invert_subordinator_path(path, 0.9 * path.values.back());
  REQUIRE(e1 <= e2);
  REQUIRE_THROWS_AS(invert_subordinator_path(path, 2.0 * path.values.back()),
                    insufficient_horizon_error);
}

TEST_CASE("two-sided path glues at zero and interpolates linearly", "[paths]") {
  const auto grid = TimeGrid::uniform(1.0, 64);
  const auto p = simulate_two_sided_brownian(grid, {9, 2});
  REQUIRE(p.value(0.0) == 0.0);
  const double mid = 0.5 * (grid.nodes[3] + grid.nodes[4]);
  const double lin = 0.5 * (p.positive.values[3] + p.positive.values[4]);
  REQUIRE_THAT(p.value(mid), Catch::Matchers::WithinAbs(lin, 1e-12));
  REQUIRE_THROWS_AS(p.value(1.5), insufficient_horizon_error);
  REQUIRE(p.value(-0.25) != p.value(0.25));  // branches are independent
}

TEST_CASE("batch layout does not depend on the thread count", "[parallel]") {
  auto layout = [](unsigned n_threads) {
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> got;
    std::mutex mu;
    parallel_batches(1000, 64, n_threads, [&](std::size_t batch, std::size_t offset, std::size_t count) {
      std::lock_guard<std::mutex> lock(mu);
      got[batch] = {offset, count};
    });
    return got;
  };
  const auto one = layout(1);
  const auto four = layout(4);
  REQUIRE(one == four);
  REQUIRE(one.size() == 16);  // ceil(1000 / 64)
  REQUIRE(one.at(15).second == 1000 - 15 * 64);

  REQUIRE_THROWS_AS(parallel_batches(0, 64, 1, [](std::size_t, std::size_t, std::size_t) {}),
                    parameter_error);
  REQUIRE_THROWS_AS(parallel_batches(10, 0, 1, [](std::size_t, std::size_t, std::size_t) {}),
                    parameter_error);
  REQUIRE_THROWS_AS(parallel_batches(10, 4, 0, [](std::size_t, std::size_t, std::size_t) {}),
                    parameter_error);
}

TEST_CASE("default thread count honours the environment", "[parallel]") {
  setenv("SUBFRAC_THREADS", "3", 1);
  REQUIRE(default_thread_count() == 3);
  setenv("SUBFRAC_THREADS", "not-a-number", 1);
  REQUIRE(default_thread_count() >= 1);  // falls back to hardware
  unsetenv("SUBFRAC_THREADS");
  REQUIRE(default_thread_count() >= 1);
}

TEST_CASE("subordinated samples are reproducible and clock-coupled", "[sampling]") {
  const auto a = sample_subordinated(InverseStableClock{0.5}, {}, 1.0, 256, {3, 1});
  const auto b = sample_subordinated(InverseStableClock{0.5}, {}, 1.0, 256, {3, 1});
  REQUIRE(a == b);
  // Same stream, different outer law: the inner clock substream is shared,
  // so the draws differ but stay aligned in count.
  OuterProcess stable_outer{OuterProcess::Kind::symmetric_stable, 1.5};
  const auto c = sample_subordinated(InverseStableClock{0.5}, stable_outer, 1.0, 256, {3, 1});
  REQUIRE(c.size() == a.size());
  REQUIRE(c != a);
}
