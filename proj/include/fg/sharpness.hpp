#pragma once

// The sharp splitting towers A_i, C_i: construction by the folding recursion,
// index-2 selection via Reidemeister-Schreier, coverage of short words,
// witness words reading every word of length 2i, and the sharpness report.

#include <string>

#include <json.hpp>

#include "fg/stallings.hpp"
#include "fg/subwords.hpp"
#include "fg/words.hpp"

namespace fg {

struct TowerLevel {
  int i = 0;
  StallingsGraph A;
  StallingsGraph C;
  int k = 0;
};

struct Tower {
  int k = 0;
  int i_max = 0;
  std::vector<StallingsGraph> A;  // A_1 .. A_{i_max+1}
  std::vector<StallingsGraph> C;  // C_1 .. C_{i_max}

  const StallingsGraph& a(int i) const { return A.at(i - 1); }
  const StallingsGraph& c(int i) const { return C.at(i - 1); }
  TowerLevel level(int i) const { return {i, a(i), c(i), k}; }
};

namespace detail {

// Adds a loop labelled by each extra generator 3..k at every vertex.
inline StallingsGraph decorate(const StallingsGraph& g, int k) {
  if (k == g.rank_k()) return g;
  std::vector<GraphEdge> edges = g.edges();
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int l = g.rank_k() + 1; l <= k; ++l) edges.push_back({v, v, l});
  int nv = std::max(g.num_vertices(), 1);
  return StallingsGraph::from_edges(k, nv, g.base(), std::move(edges));
}

// The unique index-2 subgroup of the subgroup carried by `a` that contains
// every word in `inside`; found by enumerating the nontrivial Z/2 characters
// on a free basis and building each kernel by Reidemeister-Schreier with
// transversal {1, t}.
inline StallingsGraph unique_index2_over(const StallingsGraph& a,
                                         const std::vector<ReducedWord>& inside) {
  std::vector<ReducedWord> basis = free_basis(a);
  const int r = (int)basis.size();
  if (r < 1 || r > 30) throw error("index-2 enumeration out of range");
  std::optional<StallingsGraph> found;
  for (unsigned eps = 1; eps < (1u << r); ++eps) {
    int j0 = -1;
    for (int j = 0; j < r; ++j)
      if ((eps >> j) & 1) {
        j0 = j;
        break;
      }
    const ReducedWord& t = basis[j0];
    std::vector<ReducedWord> gens;
    for (int j = 0; j < r; ++j) {
      if ((eps >> j) & 1) {
        if (j == j0) continue;
        gens.push_back(concat(t, basis[j]));
      } else {
        gens.push_back(basis[j]);
        gens.push_back(concat(t, concat(basis[j], invert(t))));
      }
    }
    gens.push_back(concat(t, t));
    StallingsGraph cand = from_generators(a.rank_k(), gens);
    bool ok = true;
    for (const ReducedWord& w : inside)
      if (!contains(cand, w)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (found) throw error("index-2 subgroup over the given one is not unique");
    found = std::move(cand);
  }
  if (!found) throw error("no index-2 subgroup contains the given one");
  return *found;
}

}  // namespace detail

// Tower recursion over F_2, decorated with extra-generator loops for k > 2:
// A_1 = <b>, C_1 = <b^2>, A_2 = <a, b^2>; C_i is the unique index-2 subgroup
// of A_i containing C_{i-1}; A_{i+1} = <A_{i-1}, C_i>.
inline Tower build_tower(int k, int i_max) {
  if (k < 2) throw error("tower needs rank >= 2");
  if (i_max < 1) throw error("tower needs i_max >= 1");
  std::vector<StallingsGraph> A2, C2;  // over F_2
  A2.push_back(from_generators(2, {parse_word(2, "b")}));
  C2.push_back(from_generators(2, {parse_word(2, "bb")}));
  A2.push_back(from_generators(2, {parse_word(2, "a"), parse_word(2, "bb")}));
  for (int i = 2; i <= i_max; ++i) {
    C2.push_back(detail::unique_index2_over(A2[i - 1], free_basis(C2[i - 2])));
    std::vector<ReducedWord> gens = free_basis(A2[i - 2]);
    for (const ReducedWord& w : free_basis(C2[i - 1])) gens.push_back(w);
    A2.push_back(from_generators(2, gens));
  }
  Tower t;
  t.k = k;
  t.i_max = i_max;
  for (const auto& g : A2) t.A.push_back(detail::decorate(g, k));
  for (const auto& g : C2) t.C.push_back(detail::decorate(g, k));
  // Level invariants; a failure here is a construction bug.
  for (int i = 1; i <= i_max; ++i) {
    if (t.a(i).rank() != i * (k - 1))
      throw error("tower invariant broken: rank A_" + std::to_string(i));
    if (t.c(i).rank() != 2 * i * (k - 1) - 1)
      throw error("tower invariant broken: rank C_" + std::to_string(i));
    std::vector<ReducedWord> cb = free_basis(t.c(i));
    auto idx = index_of(cb, t.a(i));
    if (!idx || *idx != 2)
      throw error("tower invariant broken: index of C_" + std::to_string(i));
  }
  return t;
}

// Every reduced word of length i labels a path from the base of A_{i+1}.
inline bool coverage_bullet(const Tower& t, int i) {
  if (i == 0) return true;
  const StallingsGraph& g = t.a(i + 1);
  bool ok = true;
  for_each_reduced_word(t.k, i, [&](const ReducedWord& w) {
    if (ok && trace(g, w) < 0) ok = false;
  });
  return ok;
}

namespace detail {

// Directed-edge view: id 2e reads edge e forward, 2e+1 backward.
struct DirectedWalk {
  const StallingsGraph* g;
  int tail(int d) const {
    const GraphEdge& e = g->edges()[d / 2];
    return d % 2 ? e.target : e.source;
  }
  int head(int d) const {
    const GraphEdge& e = g->edges()[d / 2];
    return d % 2 ? e.source : e.target;
  }
  Letter label(int d) const {
    int l = g->edges()[d / 2].label;
    return d % 2 ? -l : l;
  }
  int reverse(int d) const { return d ^ 1; }

  // The unique directed edge reading slabel out of v, or -1.
  int dstep(int v, Letter slabel) const {
    int e = g->step_edge(v, slabel);
    if (e < 0) return -1;
    return g->edges()[e].label == slabel ? 2 * e : 2 * e + 1;
  }

  // Shortest non-backtracking continuation from `from` so that `to` can
  // follow; returns the intermediate directed edges (possibly empty).
  std::vector<int> connect(int from, int to) const {
    if (head(from) == tail(to) && to != reverse(from)) return {};
    int n = 2 * g->num_edges();
    std::vector<int> prev(n, -2);
    std::deque<int> q;
    for (int d = 0; d < n; ++d)
      if (tail(d) == head(from) && d != reverse(from)) {
        prev[d] = -1;
        q.push_back(d);
      }
    int goal = -1;
    while (!q.empty() && goal < 0) {
      int d = q.front();
      q.pop_front();
      if (head(d) == tail(to) && to != reverse(d)) {
        goal = d;
        break;
      }
      for (int f = 0; f < n; ++f)
        if (prev[f] == -2 && tail(f) == head(d) && f != reverse(d)) {
          prev[f] = d;
          q.push_back(f);
        }
    }
    if (goal < 0) throw error("witness connector not found");
    std::vector<int> path;
    for (int d = goal; d != -1; d = prev[d]) path.push_back(d);
    std::reverse(path.begin(), path.end());
    return path;
  }
};

}  // namespace detail

// A cyclically reduced word of A_{i+1} containing every reduced word of
// length 2i as a (wrapping) subword: one immersed closed walk stitching, for
// each target v = v1 v2, the reversed base-path of v1^-1 and the base-path of
// v2, joined by shortest non-backtracking connectors.
inline CyclicWord witness_word(const Tower& t, int i) {
  if (i < 1 || i > t.i_max) throw error("witness level out of range");
  const StallingsGraph& g = t.a(i + 1);
  detail::DirectedWalk dw{&g};
  std::vector<std::vector<int>> segments;
  for_each_reduced_word(t.k, 2 * i, [&](const ReducedWord& v) {
    std::vector<int> seg;
    // Reversed trace of v1^-1 gives a path into the base reading v1.
    int x = g.base();
    std::vector<int> into;
    for (int j = i - 1; j >= 0; --j) {
      int d = dw.dstep(x, inv(v[j]));
      if (d < 0) throw error("witness construction: coverage gap");
      into.push_back(d);
      x = dw.head(d);
    }
    for (auto it = into.rbegin(); it != into.rend(); ++it)
      seg.push_back(dw.reverse(*it));
    int y = g.base();
    for (int j = i; j < 2 * i; ++j) {
      int d = dw.dstep(y, v[j]);
      if (d < 0) throw error("witness construction: coverage gap");
      seg.push_back(d);
      y = dw.head(d);
    }
    segments.push_back(std::move(seg));
  });
  std::vector<int> walk;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!walk.empty()) {
      for (int d : dw.connect(walk.back(), segments[s].front())) walk.push_back(d);
    }
    for (int d : segments[s]) walk.push_back(d);
  }
  for (int d : dw.connect(walk.back(), walk.front())) walk.push_back(d);
  // Immersedness around the whole cycle, including the wrap.
  for (std::size_t j = 0; j < walk.size(); ++j) {
    int a = walk[j], b = walk[(j + 1) % walk.size()];
    if (dw.head(a) != dw.tail(b) || b == dw.reverse(a))
      throw error("witness walk is not immersed");
  }
  // Rotate to a base crossing so the linear reading is a loop at the base.
  std::size_t start = walk.size();
  for (std::size_t j = 0; j < walk.size(); ++j)
    if (dw.tail(walk[j]) == g.base()) {
      start = j;
      break;
    }
  if (start == walk.size()) throw error("witness walk misses the base");
  std::vector<Letter> letters;
  letters.reserve(walk.size());
  for (std::size_t j = 0; j < walk.size(); ++j)
    letters.push_back(dw.label(walk[(start + j) % walk.size()]));
  ReducedWord rep(t.k, letters);
  if (!contains(g, rep)) throw error("witness word left the subgroup");
  CyclicWord h(rep);
  if (!covers_all_subwords(h, 2 * i, Orientation::directed).covered)
    throw error("witness word misses a subword");
  return h;
}

inline CyclicWord witness_word(int k, int i) {
  return witness_word(build_tower(k, i), i);
}

struct SplittingDescriptor {
  StallingsGraph left;   // A_i
  StallingsGraph right;  // A_{i+1}
  StallingsGraph edge;   // C_i
  std::vector<ReducedWord> embeddings;  // free basis of C_i in F_k
};

struct SharpnessReport {
  int k = 0;
  int i = 0;
  int L = 0;  // 2i
  int rank_c = 0;
  int bound = 0;  // (k-1)(L-2)+1
  bool equality = false;
  bool embeddings_ok = false;
  bool coverage_ok = false;
  CyclicWord witness;
  SplittingDescriptor splitting;
};

inline SharpnessReport verify_sharpness(const Tower& t, int i) {
  SharpnessReport rep;
  rep.k = t.k;
  rep.i = i;
  rep.L = 2 * i;
  rep.rank_c = t.c(i).rank();
  rep.bound = (t.k - 1) * (rep.L - 2) + 1;
  rep.equality = rep.rank_c == rep.bound;
  rep.splitting = {t.a(i), t.a(i + 1), t.c(i), free_basis(t.c(i))};
  rep.embeddings_ok = true;
  for (const ReducedWord& c : rep.splitting.embeddings)
    if (!contains(rep.splitting.left, c) || !contains(rep.splitting.right, c))
      rep.embeddings_ok = false;
  rep.coverage_ok = coverage_bullet(t, i);
  rep.witness = witness_word(t, i);
  return rep;
}

inline SharpnessReport verify_sharpness(int k, int i) {
  return verify_sharpness(build_tower(k, i), i);
}

inline nlohmann::json to_json(const Tower& t) {
  nlohmann::json j;
  j["k"] = t.k;
  auto levels = nlohmann::json::array();
  for (int i = 1; i <= t.i_max; ++i) {
    nlohmann::json lj;
    lj["i"] = i;
    lj["A"] = to_json(t.a(i));
    lj["C"] = to_json(t.c(i));
    lj["rank_A"] = t.a(i).rank();
    lj["rank_C"] = t.c(i).rank();
    levels.push_back(lj);
  }
  j["levels"] = levels;
  j["A_top"] = to_json(t.a(t.i_max + 1));
  return j;
}

inline nlohmann::json to_json(const SharpnessReport& rep) {
  nlohmann::json j;
  j["k"] = rep.k;
  j["i"] = rep.i;
  j["L"] = rep.L;
  j["rank_C"] = rep.rank_c;
  j["bound"] = rep.bound;
  j["equality"] = rep.equality;
  j["embeddings_ok"] = rep.embeddings_ok;
  j["coverage_ok"] = rep.coverage_ok;
  j["witness"] = print_word(rep.witness.representative());
  j["witness_length"] = rep.witness.size();
  j["splitting"] = {{"left", to_json(rep.splitting.left)},
                    {"right", to_json(rep.splitting.right)},
                    {"edge", to_json(rep.splitting.edge)}};
  auto emb = nlohmann::json::array();
  for (const auto& w : rep.splitting.embeddings) emb.push_back(print_word(w));
  j["splitting"]["embeddings"] = emb;
  return j;
}

}  // namespace fg
