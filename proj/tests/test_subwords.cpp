#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace fg;

namespace {

// Quadratic coverage oracle: scan every wrapped window.
bool oracle_covers(const CyclicWord& g, const ReducedWord& target) {
  if (target.size() > g.size()) return false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < target.size() && hit; ++j)
      hit = g.at(i + j) == target[j];
    if (hit) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("coverage against the scan oracle") {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    CyclicWord g = tst::equidistributed_word(rng, 2, 60 + rng.below(120));
    for (int L = 1; L <= 3; ++L) {
      auto rep = covers_all_subwords(g, L, Orientation::directed);
      std::size_t missing = 0;
      for_each_reduced_word(2, L, [&](const ReducedWord& w) {
        if (!oracle_covers(g, w)) ++missing;
      });
      REQUIRE(rep.missing_count == missing);
      REQUIRE(rep.covered == (missing == 0));
    }
  }
}

TEST_CASE("undirected coverage accepts inverses") {
  // (ab)^6 contains ab, ba, and wraps; its directed windows miss AB but the
  // inverse-closed check finds it.
  CyclicWord g(parse_word(2, "abababababab"));
  auto dir = covers_all_subwords(g, 2, Orientation::directed);
  REQUIRE_FALSE(dir.covered);
  bool ab_missing_dir = !oracle_covers(g, parse_word(2, "AB"));
  REQUIRE(ab_missing_dir);
  auto undir = covers_all_subwords(g, 2, Orientation::undirected);
  REQUIRE(undir.missing_count < dir.missing_count);
  REQUIRE_THROWS_AS(covers_all_subwords(g, 0, Orientation::directed), error);
}

TEST_CASE("subword distinctness") {
  REQUIRE_FALSE(all_subwords_distinct({parse_word(2, "abab")}, 2).distinct);
  // A long positive word: aB has distinct 1-subwords only with inverses
  // distinct too; a and A collide across the word and its inverse? No:
  // subwords of {ab} with m=1 are a,b (word) and B,A (inverse), distinct.
  REQUIRE(all_subwords_distinct({parse_word(2, "ab")}, 1).distinct);
  // a appears in the word and A in the inverse; with m=1 the subword 'a' of
  // "aa" appears at two offsets.
  REQUIRE_FALSE(all_subwords_distinct({parse_word(2, "aa")}, 1).distinct);
  REQUIRE_THROWS_AS(all_subwords_distinct({parse_word(2, "ab")}, 0), error);

  SECTION("collision witness is genuine") {
    Rng rng(12);
    for (int t = 0; t < 60; ++t) {
      std::vector<ReducedWord> words{tst::random_reduced(rng, 2, 12),
                                     tst::random_reduced(rng, 2, 12)};
      auto rep = all_subwords_distinct(words, 3);
      if (!rep.distinct) {
        auto all = with_inverses(words);
        const auto& u = all[rep.first.word_index].letters();
        const auto& v = all[rep.second.word_index].letters();
        REQUIRE_FALSE((rep.first.word_index == rep.second.word_index &&
                       rep.first.offset == rep.second.offset));
        for (std::size_t j = 0; j < 3; ++j)
          REQUIRE(u[rep.first.offset + j] == v[rep.second.offset + j]);
      }
    }
  }

  SECTION("oracle comparison") {
    Rng rng(13);
    for (int t = 0; t < 60; ++t) {
      std::vector<ReducedWord> words{tst::random_reduced(rng, 2, 8),
                                     tst::random_reduced(rng, 2, 8)};
      std::size_t m = 2 + rng.below(3);
      // Quadratic oracle over all window pairs.
      auto all = with_inverses(words);
      bool collide = false;
      for (std::size_t w1 = 0; w1 < all.size() && !collide; ++w1)
        for (std::size_t w2 = w1; w2 < all.size() && !collide; ++w2)
          for (std::size_t o1 = 0; o1 + m <= all[w1].size() && !collide; ++o1)
            for (std::size_t o2 = (w1 == w2 ? o1 + 1 : 0);
                 o2 + m <= all[w2].size() && !collide; ++o2) {
              bool eq = true;
              for (std::size_t j = 0; j < m && eq; ++j)
                eq = all[w1][o1 + j] == all[w2][o2 + j];
              collide = eq;
            }
      REQUIRE(all_subwords_distinct(words, m).distinct == !collide);
    }
  }
}

TEST_CASE("relabeled subword matching") {
  Relabeling swap_ab(2, {2, 1});
  REQUIRE(relabel_match_exists(
              {concat(pow(parse_word(2, "a"), 40), pow(parse_word(2, "b"), 40))},
              40, swap_ab)
              .found);
  REQUIRE_THROWS_AS(relabel_match_exists({parse_word(2, "ab")}, 2,
                                         Relabeling(2)),
                    error);

  // Inverse words participate on both sides: phi = a -> a^-1 maps the window
  // aa of a^8 to AA, which occurs in the inverse word A^8.
  Relabeling inv_a(2, {-1, 2});
  REQUIRE(relabel_match_exists({pow(parse_word(2, "a"), 8)}, 2, inv_a).found);

  SECTION("reported match is genuine") {
    Rng rng(14);
    auto relabs = enumerate_relabelings(2);
    for (int t = 0; t < 80; ++t) {
      std::vector<ReducedWord> words{tst::random_reduced(rng, 2, 10)};
      const Relabeling& phi = relabs[1 + rng.below(relabs.size() - 1)];
      if (phi.is_identity()) continue;
      auto rep = relabel_match_exists(words, 2, phi);
      if (rep.found) {
        auto all = with_inverses(words);
        // The image of the reported subword occurs somewhere.
        std::vector<Letter> img;
        for (Letter x : rep.u.letters()) img.push_back(phi.apply(x));
        bool seen = false;
        for (const auto& w : all)
          for (std::size_t o = 0; o + img.size() <= w.size() && !seen; ++o) {
            bool eq = true;
            for (std::size_t j = 0; j < img.size() && eq; ++j)
              eq = w[o + j] == img[j];
            seen = eq;
          }
        REQUIRE(seen);
      }
    }
  }

  SECTION("long sphere samples are match-free at scale") {
    auto w = uniform_sphere(2, 400, 99, 0);
    for (const Relabeling& phi : enumerate_relabelings(2)) {
      if (phi.is_identity()) continue;
      REQUIRE_FALSE(relabel_match_exists({w}, 40, phi).found);
    }
    REQUIRE(all_subwords_distinct({w}, 40).distinct);
  }
}
