#pragma once

// Subword statistics: coverage of all reduced words of a given length,
// distinctness of subwords across a word family, and relabeled-subword
// matching.

#include <string>
#include <unordered_map>
#include <unordered_set>

#include "fg/automorphisms.hpp"
#include "fg/words.hpp"

namespace fg {

namespace detail {
inline std::string window_key(const std::vector<Letter>& ls, std::size_t start,
                              std::size_t m, bool wrap) {
  std::string s;
  s.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::size_t i = wrap ? (start + j) % ls.size() : start + j;
    s += char(letter_order_key(ls[i]) + 1);
  }
  return s;
}
inline std::string word_key(const ReducedWord& w) {
  return window_key(w.letters(), 0, w.size(), false);
}
}  // namespace detail

enum class Orientation { directed, undirected };

struct CoverageReport {
  bool covered = false;
  std::size_t missing_count = 0;
  std::vector<ReducedWord> missing;  // truncated
  static constexpr std::size_t kMaxListed = 20;
};

// True iff every reduced word of length L occurs as a subword of the cyclic
// word (windows wrap around). Undirected: a word counts if it or its inverse
// occurs.
inline CoverageReport covers_all_subwords(const CyclicWord& g, int L,
                                          Orientation orientation) {
  if (L < 1) throw error("coverage length must be >= 1");
  const int k = g.rank();
  std::unordered_set<std::string> seen;
  if ((std::size_t)L <= g.size())
    for (std::size_t i = 0; i < g.size(); ++i)
      seen.insert(detail::window_key(g.letters(), i, L, true));
  CoverageReport rep;
  for_each_reduced_word(k, L, [&](const ReducedWord& w) {
    bool hit = seen.count(detail::word_key(w)) > 0;
    if (!hit && orientation == Orientation::undirected)
      hit = seen.count(detail::word_key(invert(w))) > 0;
    if (!hit) {
      rep.missing_count++;
      if (rep.missing.size() < CoverageReport::kMaxListed) rep.missing.push_back(w);
    }
  });
  rep.covered = rep.missing_count == 0;
  return rep;
}

struct SubwordPosition {
  std::size_t word_index = 0;  // into the doubled list: words then inverses
  std::size_t offset = 0;
  bool inverted = false;
};

struct DistinctnessReport {
  bool distinct = true;
  SubwordPosition first, second;  // colliding pair when !distinct
};

inline std::vector<ReducedWord> with_inverses(
    const std::vector<ReducedWord>& words) {
  std::vector<ReducedWord> all = words;
  for (const auto& w : words) all.push_back(invert(w));
  return all;
}

// True iff no reduced word of length m occurs at two distinct positions
// across the words and their inverses.
inline DistinctnessReport all_subwords_distinct(
    const std::vector<ReducedWord>& words, std::size_t m) {
  if (m < 1) throw error("subword length must be >= 1");
  auto all = with_inverses(words);
  std::unordered_map<std::string, SubwordPosition> first;
  for (std::size_t wi = 0; wi < all.size(); ++wi) {
    const auto& ls = all[wi].letters();
    if (ls.size() < m) continue;
    for (std::size_t off = 0; off + m <= ls.size(); ++off) {
      std::string key = detail::window_key(ls, off, m, false);
      SubwordPosition pos{wi, off, wi >= words.size()};
      auto [it, inserted] = first.emplace(std::move(key), pos);
      if (!inserted) return {false, it->second, pos};
    }
  }
  return {};
}

struct RelabelMatchReport {
  bool found = false;
  ReducedWord u;
  SubwordPosition u_pos, image_pos;
};

// True iff some length-m subword u of the words (inverses included) also has
// phi(u) occurring as a subword.
inline RelabelMatchReport relabel_match_exists(
    const std::vector<ReducedWord>& words, std::size_t m,
    const Relabeling& phi) {
  if (phi.is_identity()) throw error("identity relabeling rejected");
  if (m < 1) throw error("subword length must be >= 1");
  auto all = with_inverses(words);
  std::unordered_map<std::string, SubwordPosition> windows;
  for (std::size_t wi = 0; wi < all.size(); ++wi) {
    const auto& ls = all[wi].letters();
    if (ls.size() < m) continue;
    for (std::size_t off = 0; off + m <= ls.size(); ++off)
      windows.emplace(detail::window_key(ls, off, m, false),
                      SubwordPosition{wi, off, wi >= words.size()});
  }
  for (std::size_t wi = 0; wi < all.size(); ++wi) {
    const auto& ls = all[wi].letters();
    if (ls.size() < m) continue;
    for (std::size_t off = 0; off + m <= ls.size(); ++off) {
      std::string image_key;
      image_key.reserve(m);
      for (std::size_t j = 0; j < m; ++j)
        image_key += char(letter_order_key(phi.apply(ls[off + j])) + 1);
      auto it = windows.find(image_key);
      if (it != windows.end()) {
        RelabelMatchReport rep;
        rep.found = true;
        rep.u = ReducedWord(phi.rank(), {ls.begin() + off, ls.begin() + off + m});
        rep.u_pos = {wi, off, wi >= words.size()};
        rep.image_pos = it->second;
        return rep;
      }
    }
  }
  return {};
}

}  // namespace fg
