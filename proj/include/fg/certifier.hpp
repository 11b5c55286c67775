#pragma once

// The Aut-malnormality certification pipeline: free basis, malnormality,
// prefix distinctness, central-tree shape, subword matching exclusion, the
// equidistribution bound for all cyclic words of H, and strict Whitehead
// minimality of the generators.

#include <optional>
#include <string>

#include <json.hpp>

#include "fg/profile.hpp"
#include "fg/stallings.hpp"
#include "fg/subwords.hpp"
#include "fg/whitehead.hpp"
#include "fg/words.hpp"

namespace fg {

struct CertParams {
  Rational lambda = Rational(1, 20);
  Rational beta = Rational(1, 5);
  Rational epsilon_target = 0;  // 0: use epsilon0(k)
  int min_outer = 0;            // 0: use 3 * m_beta

  void validate() const {
    if (lambda <= 0 || beta <= 0) throw error("lambda, beta must be positive");
  }
};

inline std::size_t ceil_rational(const Rational& r) {
  BigInt num = numerator(r), den = denominator(r);
  if (num <= 0) return 0;
  return (std::size_t)((num + den - 1) / den);
}

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | skipped
  std::string detail;
};

struct CertificateReport {
  std::vector<CheckResult> checks;
  CertParams params;
  bool certified = false;
  // Derived quantities, for consumers and diagnostics.
  std::size_t min_len = 0;
  std::size_t m_lambda = 0;
  std::size_t m_beta = 0;
  std::size_t min_outer_effective = 0;
  std::optional<Rational> eps_h;

  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Pass iff all 2p words gens and inverses have length >= m and pairwise
// distinct length-m prefixes.
inline bool check_prefixes(const std::vector<ReducedWord>& gens,
                           std::size_t m) {
  if (m < 1) throw error("prefix length must be >= 1");
  std::vector<ReducedWord> all = with_inverses(gens);
  std::set<std::vector<Letter>> prefixes;
  for (const auto& w : all) {
    if (w.size() < m) return false;
    std::vector<Letter> pre(w.letters().begin(), w.letters().begin() + m);
    if (!prefixes.insert(std::move(pre)).second) return false;
  }
  return true;
}

// Pass iff the central decomposition exists, the tree has diameter <= 2m and
// every outer loop has length >= min_outer.
inline bool check_subgroup_shape(const StallingsGraph& graph, int p,
                                 std::size_t m, std::size_t min_outer,
                                 std::optional<CentralDecomposition>* out =
                                     nullptr) {
  if (graph.rank() != p) return false;
  auto dec = central_decomposition(graph, p);
  if (out) *out = dec;
  if (!dec) return false;
  if ((std::size_t)dec->tree_diameter > 2 * m) return false;
  for (std::size_t len : dec->loop_lengths())
    if (len < min_outer) return false;
  return true;
}

// Pass iff all length-m subwords across gens and inverses are distinct and no
// non-identity relabeling matches a subword to another subword's image.
inline bool check_matching(const std::vector<ReducedWord>& gens,
                           std::size_t m) {
  if (!all_subwords_distinct(gens, m).distinct) return false;
  if (gens.empty()) return true;
  for (const Relabeling& phi : enumerate_relabelings(gens[0].rank())) {
    if (phi.is_identity()) continue;
    if (relabel_match_exists(gens, m, phi).found) return false;
  }
  return true;
}

// Uniform equidistribution bound for every nontrivial cyclic word of H.
//
// Any cyclically reduced loop of Theta decomposes into full outer-arc
// traversals separated by central-tree paths of length <= D (tree diameter).
// Within each arc the letter/pair counts deviate from uniform by at most the
// arc's own linear profile deviation; each tree excursion corrupts at most
// D letters and D+1 pairs out of at least Lmin positions per traversal, so
//   eps_H = max_arc(deviation) + (D + 1) / Lmin.
// Single loop over a trivial tree: the cyclic words of H are powers of one
// loop and the bound is the exact cyclic deviation of that loop.
inline Rational bound_equidistribution_all(const StallingsGraph& graph,
                                           const CentralDecomposition& dec) {
  if (dec.outer_loops.empty())
    throw error("equidistribution bound needs at least one outer loop");
  const int k = graph.rank_k();
  if (dec.outer_loops.size() == 1 && dec.tree_edges.empty()) {
    ReducedWord w = free_reduce(k, dec.outer_loops[0].word);
    CyclicWord g = cyclic_reduce(w).core;
    if (g.is_empty()) throw error("degenerate outer loop");
    return equidistribution_report(frequency_profile(g), Rational(0))
        .max_deviation;
  }
  Rational dev = 0;
  std::size_t lmin = SIZE_MAX;
  for (const OuterArc& arc : dec.outer_loops) {
    lmin = std::min(lmin, arc.word.size());
    if (arc.word.size() < 2) {
      dev = std::max(dev, Rational(1));  // too short to control
      continue;
    }
    FrequencyProfile p = detail::profile_of(k, arc.word, false);
    dev = std::max(dev,
                   equidistribution_report(p, Rational(0)).max_deviation);
  }
  return dev + Rational(dec.tree_diameter + 1, (unsigned)lmin);
}

inline CertificateReport certify(const std::vector<ReducedWord>& gens,
                                 CertParams params) {
  params.validate();
  if (gens.empty()) throw error("certify needs at least one generator");
  int k = gens[0].rank();
  for (const auto& w : gens) {
    if (w.rank() != k) throw error("alphabet mismatch among generators");
    if (w.is_empty()) throw error("trivial generator");
  }
  if (params.epsilon_target == 0) params.epsilon_target = epsilon0(k);

  CertificateReport rep;
  rep.params = params;
  std::size_t min_len = SIZE_MAX;
  for (const auto& w : gens) min_len = std::min(min_len, w.size());
  rep.min_len = min_len;
  rep.m_lambda = std::max<std::size_t>(1, ceil_rational(params.lambda * (int)min_len));
  rep.m_beta = std::max<std::size_t>(1, ceil_rational(params.beta * (int)min_len));
  rep.min_outer_effective =
      params.min_outer > 0 ? (std::size_t)params.min_outer : 3 * rep.m_beta;

  auto push = [&](const std::string& name, bool ok,
                  const std::string& detail = "") {
    rep.checks.push_back({name, ok ? "pass" : "fail", detail});
    return ok;
  };
  auto skip = [&](const std::string& name, const std::string& why) {
    rep.checks.push_back({name, "skipped", why});
  };

  const int p = (int)gens.size();
  StallingsGraph graph = from_generators(k, gens);
  push("free-basis", graph.rank() == p,
       "rank " + std::to_string(graph.rank()) + " vs p " + std::to_string(p));

  MalnormalityReport mal = is_malnormal(graph);
  push("malnormal", mal.malnormal,
       mal.malnormal ? ""
                     : "nontrivial non-basepointed fiber component of rank " +
                           std::to_string(mal.witness->rank));

  push("prefixes", check_prefixes(gens, rep.m_lambda),
       "m = " + std::to_string(rep.m_lambda));

  std::optional<CentralDecomposition> dec;
  bool shape_ok = graph.rank() == p &&
                  check_subgroup_shape(graph, p, rep.m_lambda,
                                       rep.min_outer_effective, &dec);
  push("shape", shape_ok,
       dec ? "tree diameter " + std::to_string(dec->tree_diameter)
           : "no central decomposition");

  push("matching", check_matching(gens, rep.m_beta),
       "m = " + std::to_string(rep.m_beta));

  if (dec && !dec->outer_loops.empty()) {
    Rational eps = bound_equidistribution_all(graph, *dec);
    rep.eps_h = eps;
    Rational limit = std::min(params.epsilon_target, epsilon0(k));
    push("equidistribution", eps <= limit,
         "eps_H = " + eps.str() + ", limit = " + limit.str());
  } else {
    skip("equidistribution", "decomposition unavailable");
  }

  bool wh = true;
  for (const auto& w : gens) {
    CyclicWord g = cyclic_reduce(w).core;
    if (g.is_empty() || !is_strictly_whitehead_minimal(g).minimal) {
      wh = false;
      break;
    }
  }
  push("whitehead-minimal", wh);

  bool chain = 3 * params.lambda < params.beta &&
               3 * rep.m_beta <= rep.min_outer_effective;
  push("constraints", chain,
       "3*lambda < beta and 3*m_beta <= min_outer");

  rep.certified = true;
  for (const auto& c : rep.checks)
    if (c.status != "pass") rep.certified = false;
  return rep;
}

inline nlohmann::json to_json(const CertificateReport& rep) {
  nlohmann::json j;
  auto checks = nlohmann::json::array();
  for (const auto& c : rep.checks) {
    nlohmann::json cj{{"name", c.name}, {"status", c.status}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["params"] = {{"lambda", rep.params.lambda.str()},
                 {"beta", rep.params.beta.str()},
                 {"epsilon_target", rep.params.epsilon_target.str()},
                 {"min_outer", rep.params.min_outer}};
  j["derived"] = {{"min_len", rep.min_len},
                  {"m_lambda", rep.m_lambda},
                  {"m_beta", rep.m_beta},
                  {"min_outer_effective", rep.min_outer_effective}};
  if (rep.eps_h) j["derived"]["eps_H"] = rep.eps_h->str();
  j["verdict"] = rep.certified ? "certified" : "inconclusive";
  return j;
}

}  // namespace fg
