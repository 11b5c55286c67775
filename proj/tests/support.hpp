#pragma once

// Shared oracles and generators for the test suite. Everything here is an
// independent cross-check: slower or more naive than the library code paths
// it validates.

#include <optional>
#include <vector>

#include "fg/fg.hpp"

namespace tst {

using namespace fg;

// Quadratic free-reduction oracle: delete the leftmost cancelling pair until
// none remains.
inline std::vector<Letter> oracle_reduce(std::vector<Letter> ls) {
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i + 1 < ls.size(); ++i)
      if (ls[i] == inv(ls[i + 1])) {
        ls.erase(ls.begin() + i, ls.begin() + i + 2);
        again = true;
        break;
      }
  }
  return ls;
}

inline std::vector<Letter> random_letters(Rng& rng, int k, std::size_t n) {
  std::vector<Letter> ls;
  ls.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    ls.push_back(letter_from_order_key((int)rng.below(2 * k)));
  return ls;
}

// Uniform reduced word of exact length n.
inline ReducedWord random_reduced(Rng& rng, int k, std::size_t n) {
  std::vector<Letter> ls;
  Letter prev = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Letter x;
    if (i == 0) {
      x = letter_from_order_key((int)rng.below(2 * k));
    } else {
      int skip = letter_order_key(inv(prev));
      int key = (int)rng.below(2 * k - 1);
      if (key >= skip) ++key;
      x = letter_from_order_key(key);
    }
    ls.push_back(x);
    prev = x;
  }
  return ReducedWord(k, std::move(ls));
}

inline WhiteheadAuto random_whitehead(Rng& rng, int k) {
  Letter a = letter_from_order_key((int)rng.below(2 * k));
  std::set<Letter> cut{a};
  for (int key = 0; key < 2 * k; ++key) {
    Letter x = letter_from_order_key(key);
    if (x == a || x == inv(a)) continue;
    if (rng.below(2)) cut.insert(x);
  }
  return WhiteheadAuto(k, a, cut);
}

inline Relabeling random_relabeling(Rng& rng, int k) {
  std::vector<Letter> img(k);
  std::iota(img.begin(), img.end(), 1);
  for (int i = k - 1; i > 0; --i)
    std::swap(img[i], img[rng.below(i + 1)]);
  for (int i = 0; i < k; ++i)
    if (rng.below(2)) img[i] = -img[i];
  return Relabeling(k, img);
}

// Random word of <= max_f Whitehead / relabeling factors (no inner factors).
inline AutoWord random_autoword(Rng& rng, int k, int max_f) {
  int f = 1 + (int)rng.below(max_f);
  std::vector<AutoFactor> fs;
  for (int i = 0; i < f; ++i) {
    if (rng.below(3) == 0)
      fs.push_back(random_relabeling(rng, k));
    else
      fs.push_back(random_whitehead(rng, k));
  }
  return AutoWord(std::move(fs));
}

// A random exactly-equidistributed cyclic word: a uniform random Eulerian
// circuit over the non-backtracking transition multigraph on X^{+-1} with
// equal edge multiplicities. Every letter frequency is exactly 1/2k and
// every admissible pair frequency exactly 1/(2k(2k-1)), so the deviation is
// zero and the word is eps-equidistributed for every eps >= 0. Length is
// target_len rounded down to a multiple of 2k(2k-1).
inline CyclicWord equidistributed_word(Rng& rng, int k,
                                       std::size_t target_len) {
  const int s = 2 * k;
  const std::size_t block = (std::size_t)s * (s - 1);
  std::size_t mult = std::max<std::size_t>(1, target_len / block);
  std::vector<std::vector<int>> rem(s);
  for (int u = 0; u < s; ++u)
    for (int v = 0; v < s; ++v) {
      if (letter_from_order_key(v) ==
          inv(letter_from_order_key(u)))
        continue;
      for (std::size_t c = 0; c < mult; ++c) rem[u].push_back(v);
    }
  for (int u = 0; u < s; ++u)
    for (std::size_t i = rem[u].size(); i > 1; --i)
      std::swap(rem[u][i - 1], rem[u][rng.below(i)]);
  std::vector<int> stack{0}, circuit;
  while (!stack.empty()) {
    int u = stack.back();
    if (rem[u].empty()) {
      circuit.push_back(u);
      stack.pop_back();
    } else {
      int v = rem[u].back();
      rem[u].pop_back();
      stack.push_back(v);
    }
  }
  circuit.pop_back();  // closing repeat of the start vertex
  std::vector<Letter> ls;
  ls.reserve(circuit.size());
  for (auto it = circuit.rbegin(); it != circuit.rend(); ++it)
    ls.push_back(letter_from_order_key(*it));
  return CyclicWord(ReducedWord(k, std::move(ls)));
}

// Brute-force malnormality: search all conjugators g with 1 <= |g| <=
// max_len, g outside H, for a nontrivial intersection of H with gHg^-1.
inline std::optional<ReducedWord> brute_force_malnormal_witness(
    const StallingsGraph& h, int max_len) {
  const int k = h.rank_k();
  std::vector<ReducedWord> basis = free_basis(h);
  std::optional<ReducedWord> witness;
  for (int len = 1; len <= max_len && !witness; ++len) {
    for_each_reduced_word(k, len, [&](const ReducedWord& g) {
      if (witness || contains(h, g)) return;
      std::vector<ReducedWord> conj;
      for (const ReducedWord& b : basis)
        conj.push_back(concat(g, concat(b, invert(g))));
      if (conj.empty()) return;
      StallingsGraph hg = from_generators(k, conj);
      if (intersection_graph(h, hg).rank() >= 1) witness = g;
    });
  }
  return witness;
}

}  // namespace tst
