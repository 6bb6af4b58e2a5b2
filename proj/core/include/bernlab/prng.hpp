#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "bernlab/common.hpp"

namespace bernlab {

// Counter-based splittable PRNG (SplitMix64 finalizer applied to
// key + counter). Streams derived from (seed, stream id) are
// independent, and every draw is a pure function of (key, counter),
// so generated families are reproducible regardless of call order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed ^ 0x9e3779b97f4a7c15ull) + stream)) {}

  CounterRng split(std::uint64_t stream) const { return CounterRng(key_, mix(stream + 0x6a09e667f3bcc909ull)); }

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++ctr_); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Two independent standard normals (Box-Muller).
  std::array<double, 2> gaussian_pair() {
    double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    double u2 = uniform01();
    double m = std::sqrt(-2.0 * std::log(u1));
    return {m * std::cos(kTwoPi * u2), m * std::sin(kTwoPi * u2)};
  }

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
};

}  // namespace bernlab
