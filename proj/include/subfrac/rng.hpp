#pragma once
// Deterministic, stream-splittable random number generation.
//
// A stream is identified by (seed, stream_id); engine state is derived from
// both through a splitmix64 chain, so distinct stream ids behave as
// statistically independent substreams while identical ids reproduce the
// exact same sequence on every platform.  Gaussian variates use our own
// Box-Muller transform rather than std::normal_distribution, whose output
// is implementation-defined.

#include <cmath>
#include <cstdint>
#include <random>

namespace subfrac {

struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

class Rng {
 public:
  // `tag` splits one user-visible stream into internal substreams (e.g. the
  // inner clock and the outer process of a subordinated sampler).
  explicit Rng(RngStream stream, std::uint64_t tag = 0) {
    std::uint64_t state = stream.seed;
    const std::uint64_t w0 = detail::splitmix64(state);
    state ^= stream.stream_id;
    const std::uint64_t w1 = detail::splitmix64(state);
    state ^= tag;
    const std::uint64_t w2 = detail::splitmix64(state);
    const std::uint64_t w3 = detail::splitmix64(state);
    std::seed_seq seq{
        static_cast<std::uint32_t>(w0), static_cast<std::uint32_t>(w0 >> 32),
        static_cast<std::uint32_t>(w1), static_cast<std::uint32_t>(w1 >> 32),
        static_cast<std::uint32_t>(w2), static_cast<std::uint32_t>(w2 >> 32),
        static_cast<std::uint32_t>(w3), static_cast<std::uint32_t>(w3 >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0, 1); never returns an endpoint.
  double u01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller with a cached spare.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(u01()));
    const double theta = 2.0 * 3.14159265358979323846 * u01();
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Exponential with unit mean.
  double exponential() { return -std::log(u01()); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace subfrac
