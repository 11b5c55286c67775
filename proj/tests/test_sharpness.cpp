#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace fg;

TEST_CASE("tower invariants over F_2") {
  auto t = build_tower(2, 5);
  REQUIRE(t.A.size() == 6);
  REQUIRE(t.C.size() == 5);
  for (int i = 1; i <= 5; ++i) {
    REQUIRE(t.a(i).rank() == i);
    REQUIRE(t.c(i).rank() == 2 * i - 1);
    // C_i has index 2 in A_i.
    auto idx = index_of(free_basis(t.c(i)), t.a(i));
    REQUIRE(idx.has_value());
    REQUIRE(*idx == 2);
    // C_{i-1} sits inside C_i's tower neighbour A_{i+1} = <A_{i-1}, C_i>.
    if (i >= 2) {
      for (const auto& w : free_basis(t.c(i - 1)))
        REQUIRE(contains(t.a(i), w));
      for (const auto& w : free_basis(t.a(i - 1)))
        REQUIRE(contains(t.a(i + 1), w));
      for (const auto& w : free_basis(t.c(i)))
        REQUIRE(contains(t.a(i + 1), w));
    }
  }

  // Hand oracle at level 2: C_2 = <b^2, a^2, a b^2 a^-1>.
  auto oracle = from_generators(
      2, {parse_word(2, "bb"), parse_word(2, "aa"), parse_word(2, "abbA")});
  REQUIRE(t.c(2) == oracle);

  REQUIRE_THROWS_AS(build_tower(1, 2), error);
  REQUIRE_THROWS_AS(build_tower(2, 0), error);
}

TEST_CASE("tower coverage of short words") {
  auto t = build_tower(2, 3);
  for (int i = 1; i <= 3; ++i) REQUIRE(coverage_bullet(t, i));
  // A_1 = <b> does not read every length-1 word (no a-edge).
  REQUIRE(trace(t.a(1), parse_word(2, "a")) < 0);
}

TEST_CASE("witness words") {
  auto t = build_tower(2, 2);
  for (int i = 1; i <= 2; ++i) {
    auto w = witness_word(t, i);
    // Cyclically reduced, inside A_{i+1}, covers all length-2i subwords.
    REQUIRE(contains(t.a(i + 1), w.representative()));
    auto cov = covers_all_subwords(w, 2 * i, Orientation::directed);
    REQUIRE(cov.covered);
    // Linear in the number of targets: each segment has 2i letters and
    // connectors stay short.
    REQUIRE(w.size() <= 4 * (std::size_t)i * count_reduced_words(2, 2 * i));
  }
  REQUIRE_THROWS_AS(witness_word(t, 3), error);
  REQUIRE(witness_word(2, 1) == witness_word(t, 1));
}

TEST_CASE("sharpness report at k = 2") {
  auto rep = verify_sharpness(2, 3);
  REQUIRE(rep.L == 6);
  REQUIRE(rep.rank_c == 5);
  REQUIRE(rep.bound == 5);
  REQUIRE(rep.equality);
  REQUIRE(rep.embeddings_ok);
  REQUIRE(rep.coverage_ok);
  REQUIRE(covers_all_subwords(rep.witness, 6, Orientation::directed).covered);
  REQUIRE(rep.splitting.edge.rank() == 5);
  REQUIRE((int)rep.splitting.embeddings.size() == 5);

  auto j = to_json(rep);
  REQUIRE(j["equality"] == true);
  REQUIRE(j["rank_C"] == 5);
  REQUIRE(j["witness_length"] == rep.witness.size());
  REQUIRE(parse_word(2, j["witness"].get<std::string>()) ==
          rep.witness.representative());
}

TEST_CASE("higher rank towers decorate every level") {
  auto t = build_tower(3, 2);
  for (int i = 1; i <= 2; ++i) {
    REQUIRE(t.a(i).rank() == 2 * i);
    REQUIRE(t.c(i).rank() == 4 * i - 1);
  }
  // The rank exceeds the bound (k-1)(L-2)+1, so equality fails but the
  // report still carries both numbers.
  auto rep = verify_sharpness(t, 1);
  REQUIRE(rep.rank_c == 3);
  REQUIRE(rep.bound == 1);
  REQUIRE_FALSE(rep.equality);
  REQUIRE(rep.embeddings_ok);
  REQUIRE(rep.coverage_ok);
  REQUIRE(covers_all_subwords(rep.witness, 2, Orientation::directed).covered);

  auto tj = to_json(t);
  REQUIRE(tj["k"] == 3);
  REQUIRE(tj["levels"].size() == 2);
  REQUIRE(tj["levels"][1]["rank_C"] == 7);
  // Graph payloads deserialize back to the levels.
  REQUIRE(graph_from_json(tj["levels"][0]["A"]) == t.a(1));
}
