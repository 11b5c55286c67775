#pragma once

// Letter and letter-pair frequency profiles, and the epsilon-equidistribution
// predicate. Frequencies are exact rationals; floating point only appears at
// reporting boundaries.

#include <map>
#include <optional>
#include <utility>

#include "fg/words.hpp"

namespace fg {

struct FrequencyProfile {
  int rank = 0;
  bool cyclic = false;
  std::size_t length = 0;
  std::map<Letter, std::size_t> single_counts;
  std::map<std::pair<Letter, Letter>, std::size_t> pair_counts;
  std::size_t pair_positions = 0;  // length (cyclic) or length-1 (linear)

  Rational single(Letter u) const {
    auto it = single_counts.find(u);
    std::size_t c = it == single_counts.end() ? 0 : it->second;
    return Rational(c, length);
  }
  Rational pair(Letter u, Letter v) const {
    auto it = pair_counts.find({u, v});
    std::size_t c = it == pair_counts.end() ? 0 : it->second;
    return Rational(c, pair_positions);
  }
};

namespace detail {
inline FrequencyProfile profile_of(int k, const std::vector<Letter>& ls,
                                   bool cyclic) {
  FrequencyProfile p;
  p.rank = k;
  p.cyclic = cyclic;
  p.length = ls.size();
  if (ls.empty()) throw error("frequency profile of the empty word");
  p.pair_positions = cyclic ? ls.size() : ls.size() - 1;
  if (p.pair_positions == 0) throw error("word too short for pair frequencies");
  for (Letter x : ls) p.single_counts[x]++;
  for (std::size_t i = 0; i < p.pair_positions; ++i)
    p.pair_counts[{ls[i], ls[(i + 1) % ls.size()]}]++;
  return p;
}
}  // namespace detail

inline FrequencyProfile frequency_profile(const ReducedWord& w) {
  return detail::profile_of(w.rank(), w.letters(), false);
}
inline FrequencyProfile frequency_profile(const CyclicWord& w) {
  return detail::profile_of(w.rank(), w.letters(), true);
}

struct DeviationReport {
  bool equidistributed = false;
  Rational max_deviation;
  // Witness of the maximal deviation: a letter (v == 0) or a pair.
  Letter witness_u = 0;
  Letter witness_v = 0;
};

// |P_u - 1/2k| <= eps for all letters and |P_uv - 1/(2k(2k-1))| <= eps for
// all pairs with v != u^-1.
inline DeviationReport equidistribution_report(const FrequencyProfile& p,
                                               const Rational& eps) {
  const int k = p.rank;
  const Rational t1(1, 2 * k);
  const Rational t2(1, 2 * k * (2 * k - 1));
  DeviationReport rep;
  rep.max_deviation = 0;
  for (int key = 0; key < 2 * k; ++key) {
    Letter u = letter_from_order_key(key);
    Rational d = abs(p.single(u) - t1);
    if (d > rep.max_deviation) {
      rep.max_deviation = d;
      rep.witness_u = u;
      rep.witness_v = 0;
    }
  }
  for (int ku = 0; ku < 2 * k; ++ku) {
    for (int kv = 0; kv < 2 * k; ++kv) {
      Letter u = letter_from_order_key(ku), v = letter_from_order_key(kv);
      if (v == inv(u)) continue;
      Rational d = abs(p.pair(u, v) - t2);
      if (d > rep.max_deviation) {
        rep.max_deviation = d;
        rep.witness_u = u;
        rep.witness_v = v;
      }
    }
  }
  rep.equidistributed = rep.max_deviation <= eps;
  return rep;
}

template <typename Word>
inline DeviationReport is_equidistributed(const Word& g, const Rational& eps) {
  return equidistribution_report(frequency_profile(g), eps);
}

}  // namespace fg
