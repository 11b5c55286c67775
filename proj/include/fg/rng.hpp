#pragma once

// Deterministic counter-based randomness. Every Monte-Carlo trial derives its
// own generator from (master seed, stream label, trial index) through a fixed
// 64-bit mix, so results are identical across runs, orderings and thread
// counts.

#include <cstdint>

namespace fg {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stable sub-seed derivation: chained splitmix64 over the three components.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream,
                              std::uint64_t trial) {
  std::uint64_t s = splitmix64(master ^ 0x243f6a8885a308d3ULL);
  s = splitmix64(s ^ stream);
  s = splitmix64(s ^ trial);
  return s;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  Rng(std::uint64_t master, std::uint64_t stream, std::uint64_t trial)
      : state_(mix_seed(master, stream, trial)) {}

  std::uint64_t next() { return state_ = splitmix64(state_); }

  // Uniform in [0, n) via 128-bit multiply; n >= 1.
  std::uint64_t below(std::uint64_t n) {
    return (std::uint64_t)(((__uint128_t)next() * (__uint128_t)n) >> 64);
  }

  // Uniform double in [0, 1).
  double uniform() { return (next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace fg
