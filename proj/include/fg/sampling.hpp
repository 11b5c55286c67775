#pragma once

// Random models: simple random walk, uniform sphere, uniform ball, and random
// subgroups. Every sample is a pure function of (seed, stream, trial_index).

#include <cstdint>
#include <string>

#include "fg/rng.hpp"
#include "fg/stallings.hpp"
#include "fg/words.hpp"

namespace fg {

enum class SamplerModel { walk, sphere, ball };

struct SamplerSpec {
  SamplerModel model = SamplerModel::walk;
  int k = 2;
  std::uint64_t n = 0;  // walk length / sphere or ball radius
  int p = 1;            // generators per subgroup
  std::uint64_t seed = 0;

  void validate() const {
    if (k < 1) throw error("sampler rank must be >= 1");
    if (p < 1) throw error("sampler p must be >= 1");
  }
};

inline SamplerModel parse_model(const std::string& s) {
  if (s == "walk") return SamplerModel::walk;
  if (s == "sphere") return SamplerModel::sphere;
  if (s == "ball") return SamplerModel::ball;
  throw error("unknown sampler model: " + s);
}

namespace detail {
// Stream labels keep the three models' randomness disjoint per trial.
inline constexpr std::uint64_t kWalkStream = 0x77616c6bULL;
inline constexpr std::uint64_t kSphereStream = 0x73706872ULL;
inline constexpr std::uint64_t kBallStream = 0x62616c6cULL;

inline ReducedWord sphere_sample(int k, std::uint64_t A, Rng& rng) {
  std::vector<Letter> out;
  out.reserve(A);
  Letter prev = 0;
  for (std::uint64_t i = 0; i < A; ++i) {
    Letter x;
    if (i == 0) {
      x = letter_from_order_key((int)rng.below(2 * k));
    } else {
      // Uniform among the 2k-1 letters distinct from prev^-1.
      int skip = letter_order_key(inv(prev));
      int key = (int)rng.below(2 * k - 1);
      if (key >= skip) ++key;
      x = letter_from_order_key(key);
    }
    out.push_back(x);
    prev = x;
  }
  return ReducedWord(k, std::move(out));
}
}  // namespace detail

// Free reduction of n independent uniform letters.
inline ReducedWord walk(const SamplerSpec& spec, std::uint64_t trial) {
  spec.validate();
  Rng rng(spec.seed, detail::kWalkStream, trial);
  std::vector<Letter> out;
  out.reserve(spec.n);
  for (std::uint64_t i = 0; i < spec.n; ++i) {
    Letter x = letter_from_order_key((int)rng.below(2 * spec.k));
    if (!out.empty() && out.back() == inv(x))
      out.pop_back();
    else
      out.push_back(x);
  }
  return ReducedWord(spec.k, std::move(out));
}

// Uniform over the gamma_A reduced words of length A.
inline ReducedWord uniform_sphere(int k, std::uint64_t A, std::uint64_t seed,
                                  std::uint64_t trial) {
  Rng rng(seed, detail::kSphereStream, trial);
  return detail::sphere_sample(k, A, rng);
}

// Uniform over the ball of radius n: draw the length by peeling spheres from
// the outside (gamma_A / gamma_{A+1} = 1/(2k-1) beyond the first shell), then
// sample the sphere.
inline ReducedWord uniform_ball(int k, std::uint64_t n, std::uint64_t seed,
                                std::uint64_t trial) {
  Rng rng(seed, detail::kBallStream, trial);
  // P(len = A) = gamma_A / |B_n|; work from A = n downward with exact
  // cumulative ratios in long double (n is moderate in all uses).
  std::uint64_t A = n;
  BigInt ball = ball_size(k, n);
  BigInt sphere = count_reduced_words(k, n);
  while (A > 0) {
    long double ptop = Rational(sphere, ball).convert_to<long double>();
    if (rng.uniform() < ptop) break;
    ball -= sphere;
    sphere /= (A == 1) ? (2 * k) : (2 * k - 1);
    --A;
  }
  return detail::sphere_sample(k, A, rng);
}

inline ReducedWord sample(const SamplerSpec& spec, std::uint64_t trial) {
  spec.validate();
  switch (spec.model) {
    case SamplerModel::walk:
      return walk(spec, trial);
    case SamplerModel::sphere:
      return uniform_sphere(spec.k, spec.n, spec.seed, trial);
    case SamplerModel::ball:
      return uniform_ball(spec.k, spec.n, spec.seed, trial);
  }
  throw error("unreachable sampler model");
}

struct RandomSubgroup {
  std::vector<ReducedWord> words;
  StallingsGraph graph;
};

// p independent samples with distinct derived sub-seeds; trial indexes the
// subgroup, each generator uses trial * p + j.
inline RandomSubgroup random_subgroup(const SamplerSpec& spec,
                                      std::uint64_t trial) {
  spec.validate();
  std::vector<ReducedWord> words;
  for (int j = 0; j < spec.p; ++j)
    words.push_back(sample(spec, trial * (std::uint64_t)spec.p + j));
  StallingsGraph g = from_generators(spec.k, words);
  return {std::move(words), std::move(g)};
}

}  // namespace fg
