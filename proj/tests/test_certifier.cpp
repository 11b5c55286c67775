#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace fg;

namespace {

std::vector<ReducedWord> words(int k, std::initializer_list<const char*> ws) {
  std::vector<ReducedWord> out;
  for (const char* w : ws) out.push_back(parse_word(k, w));
  return out;
}

}  // namespace

TEST_CASE("prefix distinctness check") {
  REQUIRE(check_prefixes(words(2, {"abab"}), 1));
  // ab and aB share the prefix a.
  REQUIRE_FALSE(check_prefixes(words(2, {"ab", "aB"}), 1));
  REQUIRE(check_prefixes(words(2, {"ab", "ba"}), 1));
  // Words shorter than m fail.
  REQUIRE_FALSE(check_prefixes(words(2, {"a"}), 2));
  REQUIRE_THROWS_AS(check_prefixes(words(2, {"ab"}), 0), error);
}

TEST_CASE("matching exclusion check") {
  REQUIRE_FALSE(check_matching(words(2, {"abab"}), 2));
  // A relabeled match: swapping a and b maps the a-block onto the b-block.
  auto blocks = std::vector<ReducedWord>{
      concat(pow(parse_word(2, "a"), 40), pow(parse_word(2, "b"), 40))};
  REQUIRE_FALSE(check_matching(blocks, 40));
  // A long generic word passes at scale.
  REQUIRE(check_matching({uniform_sphere(2, 400, 99, 0)}, 40));
}

TEST_CASE("subgroup shape check") {
  auto rose = from_generators(2, words(2, {"a", "bb"}));
  REQUIRE(check_subgroup_shape(rose, 2, 1, 1));
  REQUIRE_FALSE(check_subgroup_shape(rose, 2, 1, 3));  // loop a too short
  // Rank mismatch.
  REQUIRE_FALSE(check_subgroup_shape(rose, 3, 1, 1));
  // Theta graph has no central decomposition.
  auto theta = from_generators(2, words(2, {"ab", "aB"}));
  REQUIRE_FALSE(check_subgroup_shape(theta, 2, 10, 1));
}

TEST_CASE("equidistribution bound") {
  // Cyclic subgroup: the bound is the exact cyclic deviation of the loop.
  Rng rng(61);
  auto g = tst::equidistributed_word(rng, 2, 240);
  auto h = from_generators(2, {g.representative()});
  auto dec = central_decomposition(h, 1);
  REQUIRE(dec.has_value());
  auto eps = bound_equidistribution_all(h, *dec);
  auto exact =
      equidistribution_report(frequency_profile(g), Rational(0)).max_deviation;
  REQUIRE(eps == exact);
  REQUIRE(eps == 0);  // Eulerian construction is perfectly balanced

  // <a, b^2>: short loops force a useless bound above epsilon0.
  auto rose = from_generators(2, words(2, {"a", "bb"}));
  auto rdec = central_decomposition(rose, 2);
  REQUIRE(bound_equidistribution_all(rose, *rdec) > epsilon0(2));
}

TEST_CASE("eps_H soundness on certified subgroups") {
  // For any certified report with eps_H, products of a few basis elements
  // must have cyclic deviation <= eps_H.
  SamplerSpec s{SamplerModel::walk, 2, 2000, 2, 71};
  CertParams params;
  int found = 0;
  for (int t = 0; t < 30 && found < 2; ++t) {
    auto rs = random_subgroup(s, t);
    auto rep = certify(rs.words, params);
    if (!rep.certified) continue;
    ++found;
    REQUIRE(rep.eps_h.has_value());
    auto basis = free_basis(rs.graph);
    Rng rng(72);
    for (int j = 0; j < 20; ++j) {
      ReducedWord w = ReducedWord::empty(2);
      int len = 1 + (int)rng.below(4);
      for (int i = 0; i < len; ++i) {
        auto b = basis[rng.below(basis.size())];
        w = concat(w, rng.below(2) ? b : invert(b));
      }
      auto core = cyclic_reduce(w).core;
      if (core.is_empty()) continue;
      auto dev = equidistribution_report(frequency_profile(core), Rational(0))
                     .max_deviation;
      REQUIRE(dev <= *rep.eps_h);
    }
  }
  REQUIRE(found > 0);
}

TEST_CASE("certify verdicts on small inputs") {
  CertParams params;
  auto rep_a2 = certify(words(2, {"aa"}), params);
  REQUIRE_FALSE(rep_a2.certified);
  REQUIRE(rep_a2.find("malnormal")->status == "fail");

  auto rep_rose = certify(words(2, {"a", "b"}), params);
  REQUIRE_FALSE(rep_rose.certified);
  REQUIRE(rep_rose.find("free-basis")->status == "pass");
  REQUIRE(rep_rose.find("shape")->status == "fail");

  REQUIRE_THROWS_AS(certify({}, params), error);
  REQUIRE_THROWS_AS(certify({ReducedWord::empty(2)}, params), error);

  // Constraint chain fails when 3*lambda >= beta.
  CertParams loose;
  loose.lambda = Rational(1, 5);
  loose.beta = Rational(1, 5);
  auto rep = certify(words(2, {"abab"}), loose);
  REQUIRE(rep.find("constraints")->status == "fail");
  REQUIRE_FALSE(rep.certified);
}

TEST_CASE("certify succeeds on a long random subgroup") {
  SamplerSpec s{SamplerModel::walk, 2, 2000, 2, 73};
  CertParams params;
  bool found = false;
  for (int t = 0; t < 20 && !found; ++t) {
    auto rs = random_subgroup(s, t);
    auto rep = certify(rs.words, params);
    if (!rep.certified) continue;
    found = true;
    // Every check passed and the report is complete.
    REQUIRE(rep.checks.size() == 8);
    for (const auto& c : rep.checks) REQUIRE(c.status == "pass");
    REQUIRE(rep.m_lambda >= 1);
    REQUIRE(rep.m_beta >= 3 * rep.m_lambda - 2);
    REQUIRE(rep.min_outer_effective == 3 * rep.m_beta);
    REQUIRE(rep.eps_h.has_value());
    REQUIRE(*rep.eps_h <= epsilon0(2));
    // JSON export carries the verdict.
    auto j = to_json(rep);
    REQUIRE(j["verdict"] == "certified");
    REQUIRE(j["checks"].size() == 8);
  }
  REQUIRE(found);
}

TEST_CASE("report structure is stable") {
  CertParams params;
  auto rep = certify(words(2, {"aa"}), params);
  std::vector<std::string> names;
  for (const auto& c : rep.checks) names.push_back(c.name);
  REQUIRE(names == std::vector<std::string>{
                       "free-basis", "malnormal", "prefixes", "shape",
                       "matching", "equidistribution", "whitehead-minimal",
                       "constraints"});
  auto j = to_json(rep);
  REQUIRE(j["verdict"] == "inconclusive");
  REQUIRE(j["derived"]["min_len"] == 2);
}
