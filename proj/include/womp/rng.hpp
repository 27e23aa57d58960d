#pragma once

#include "womp/types.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace womp {

namespace detail {
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Hashes (base, a, b, c) into a stream seed. Trials, levels, and auxiliary
/// draws get independent streams from one base seed, so enlarging a sweep
/// never perturbs the instances of earlier cells.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a = 0, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  std::uint64_t state = base;
  std::uint64_t h = detail::splitmix64_next(state);
  state = h ^ (a + 0x9E3779B97F4A7C15ULL);
  h = detail::splitmix64_next(state);
  state = h ^ (b + 0xBF58476D1CE4E5B9ULL);
  h = detail::splitmix64_next(state);
  state = h ^ (c + 0x94D049BB133111EBULL);
  return detail::splitmix64_next(state);
}

/// Self-contained xoshiro256** generator with explicit Gaussian and uniform
/// draws. Standard-library distributions are implementation-defined, so every
/// draw is spelled out here to keep streams stable across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : state_) word = detail::splitmix64_next(state);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via the Box-Muller transform (second value cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Uniform integer in [0, n), unbiased via rejection.
  Index uniform_index(Index n) {
    const auto un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % un;
    std::uint64_t draw = next_u64();
    while (draw >= limit) draw = next_u64();
    return static_cast<Index>(draw % un);
  }

  /// k distinct values from [0, n), in increasing order (partial
  /// Fisher-Yates shuffle).
  std::vector<Index> sample_without_replacement(Index n, Index k) {
    std::vector<Index> pool(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
    for (Index i = 0; i < k; ++i) {
      const Index j = i + uniform_index(n - i);
      std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
    }
    std::vector<Index> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace womp
