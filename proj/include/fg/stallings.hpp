#pragma once

// Stallings graphs of finitely generated subgroups of F_k: folding, core
// pruning, canonical form, membership, rank, free bases, fiber products,
// malnormality, finite index, and the central-tree/outer-loop decomposition.
//
// Graphs are immutable after construction and always stored in canonical
// form: vertices renumbered by breadth-first discovery from the base (edge
// labels explored in the fixed letter order), base = 0, edge list sorted.

#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "fg/words.hpp"

namespace fg {

struct GraphEdge {
  int source = 0;
  int target = 0;
  int label = 0;  // positive letter

  bool operator==(const GraphEdge& o) const {
    return source == o.source && target == o.target && label == o.label;
  }
};

class StallingsGraph {
 public:
  // Trivial subgroup placeholder: one vertex, no edges, rank 0.
  StallingsGraph() : adj_(1) {}

  // Builds from an already-folded edge list; prunes to the core, checks
  // foldedness and connectivity, and canonicalizes.
  static StallingsGraph from_edges(int k, int num_vertices, int base,
                                   std::vector<GraphEdge> edges);

  int rank_k() const { return k_; }
  int num_vertices() const { return nv_; }
  int base() const { return 0; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  int num_edges() const { return (int)edges_.size(); }
  int rank() const { return (int)edges_.size() - nv_ + 1; }

  // (signed label, target, edge index), sorted by letter order.
  struct Arc {
    int slabel;
    int target;
    int edge;
  };
  const std::vector<Arc>& out(int v) const { return adj_[v]; }
  int degree(int v) const { return (int)adj_[v].size(); }

  // Deterministic transition; -1 if no such edge.
  int step(int v, int slabel) const {
    for (const Arc& a : adj_[v])
      if (a.slabel == slabel) return a.target;
    return -1;
  }
  int step_edge(int v, int slabel) const {
    for (const Arc& a : adj_[v])
      if (a.slabel == slabel) return a.edge;
    return -1;
  }

  bool operator==(const StallingsGraph& o) const {
    return k_ == o.k_ && nv_ == o.nv_ && edges_ == o.edges_;
  }
  bool operator!=(const StallingsGraph& o) const { return !(*this == o); }

 private:
  void build_adjacency();

  int k_ = 0;
  int nv_ = 1;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<Arc>> adj_;
};

namespace detail {

// Worklist folding over a union-find of vertices; near-linear in the input.
class Folder {
 public:
  explicit Folder(int k) : k_(k) {}

  int new_vertex() {
    parent_.push_back((int)parent_.size());
    out_.emplace_back();
    return (int)parent_.size() - 1;
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void add_edge(int u, int v, int label) {
    add_arc(u, label, v);
    add_arc(v, -label, u);
    process();
  }

  // Emits the folded graph, cored and canonicalized.
  StallingsGraph finish(int base);

 private:
  void add_arc(int u, int slabel, int v) {
    u = find(u);
    v = find(v);
    auto [it, inserted] = out_[u].emplace(slabel, v);
    if (!inserted && find(it->second) != v) pending_.push_back({find(it->second), v});
  }

  void process() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.back();
      pending_.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (out_[a].size() < out_[b].size()) std::swap(a, b);
      parent_[b] = a;
      auto moved = std::move(out_[b]);
      out_[b].clear();
      for (auto& [sl, t] : moved) {
        int tt = find(t);
        auto [it, inserted] = out_[a].emplace(sl, tt);
        if (!inserted && find(it->second) != tt)
          pending_.push_back({find(it->second), tt});
      }
    }
  }

  int k_;
  std::vector<int> parent_;
  std::vector<std::unordered_map<int, int>> out_;
  std::vector<std::pair<int, int>> pending_;
};

}  // namespace detail

inline void StallingsGraph::build_adjacency() {
  adj_.assign(nv_, {});
  for (int e = 0; e < (int)edges_.size(); ++e) {
    const GraphEdge& ed = edges_[e];
    adj_[ed.source].push_back({ed.label, ed.target, e});
    adj_[ed.target].push_back({-ed.label, ed.source, e});
  }
  for (auto& arcs : adj_)
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
      return letter_order_key(a.slabel) < letter_order_key(b.slabel);
    });
}

inline StallingsGraph StallingsGraph::from_edges(int k, int num_vertices,
                                                 int base,
                                                 std::vector<GraphEdge> edges) {
  if (base < 0 || base >= std::max(num_vertices, 1))
    throw error("base vertex out of range");
  // Foldedness check.
  {
    std::unordered_set<std::uint64_t> seen;
    for (const GraphEdge& e : edges) {
      if (e.label < 1 || e.label > k) throw error("edge label out of range");
      if (e.source < 0 || e.source >= num_vertices || e.target < 0 ||
          e.target >= num_vertices)
        throw error("edge endpoint out of range");
      std::uint64_t ko =
          (std::uint64_t)e.source * (2 * k) + letter_order_key(e.label);
      std::uint64_t ki =
          (std::uint64_t)e.target * (2 * k) + letter_order_key(-e.label);
      if (!seen.insert(ko).second || !seen.insert(ki).second)
        throw error("graph is not folded: duplicate label at a vertex");
    }
  }
  // Core pruning: iteratively drop non-base vertices of degree <= 1.
  std::vector<int> deg(num_vertices, 0);
  std::vector<bool> dead_edge(edges.size(), false);
  std::vector<std::vector<int>> incident(num_vertices);
  for (int e = 0; e < (int)edges.size(); ++e) {
    incident[edges[e].source].push_back(e);
    incident[edges[e].target].push_back(e);
    deg[edges[e].source]++;
    deg[edges[e].target]++;
  }
  std::deque<int> q;
  std::vector<bool> dead_vertex(num_vertices, false);
  for (int v = 0; v < num_vertices; ++v)
    if (v != base && deg[v] <= 1) q.push_back(v);
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    if (dead_vertex[v] || v == base) continue;
    if (deg[v] > 1) continue;
    dead_vertex[v] = true;
    for (int e : incident[v]) {
      if (dead_edge[e]) continue;
      dead_edge[e] = true;
      int other = edges[e].source == v ? edges[e].target : edges[e].source;
      deg[other]--;
      deg[v]--;
      if (other != v && other != base && deg[other] <= 1) q.push_back(other);
    }
  }
  // Canonical BFS renumbering from base.
  StallingsGraph g;
  g.k_ = k;
  std::vector<std::vector<std::pair<int, int>>> tmp_adj(num_vertices);
  for (int e = 0; e < (int)edges.size(); ++e) {
    if (dead_edge[e]) continue;
    tmp_adj[edges[e].source].push_back({edges[e].label, edges[e].target});
    tmp_adj[edges[e].target].push_back({-edges[e].label, edges[e].source});
  }
  for (auto& a : tmp_adj)
    std::sort(a.begin(), a.end(), [](auto& x, auto& y) {
      return letter_order_key(x.first) < letter_order_key(y.first);
    });
  std::vector<int> newid(num_vertices, -1);
  std::deque<int> bfs{base};
  newid[base] = 0;
  int next = 1;
  std::vector<int> order{base};
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop_front();
    for (auto [sl, t] : tmp_adj[v])
      if (newid[t] == -1) {
        newid[t] = next++;
        order.push_back(t);
        bfs.push_back(t);
      }
  }
  for (int v = 0; v < num_vertices; ++v)
    if (!dead_vertex[v] && newid[v] == -1)
      throw error("graph is not connected");
  g.nv_ = next;
  for (int e = 0; e < (int)edges.size(); ++e) {
    if (dead_edge[e]) continue;
    g.edges_.push_back(
        {newid[edges[e].source], newid[edges[e].target], edges[e].label});
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const GraphEdge& a, const GraphEdge& b) {
              if (a.source != b.source) return a.source < b.source;
              if (a.label != b.label) return a.label < b.label;
              return a.target < b.target;
            });
  g.build_adjacency();
  return g;
}

inline StallingsGraph detail::Folder::finish(int base) {
  process();
  base = find(base);
  // Compact live roots.
  std::unordered_map<int, int> id;
  std::vector<int> roots;
  for (int v = 0; v < (int)parent_.size(); ++v)
    if (find(v) == v && id.emplace(v, (int)roots.size()).second)
      roots.push_back(v);
  std::vector<GraphEdge> edges;
  for (int r : roots)
    for (auto [sl, t] : out_[r])
      if (sl > 0) edges.push_back({id[r], id[find(t)], sl});
  return StallingsGraph::from_edges(k_, (int)roots.size(), id[base],
                                    std::move(edges));
}

// Wedge-and-fold construction of the subgroup graph of <words>.
inline StallingsGraph from_generators(int k,
                                      const std::vector<ReducedWord>& words) {
  detail::Folder f(k);
  int base = f.new_vertex();
  for (const ReducedWord& w : words) {
    if (w.rank() != k) throw error("alphabet mismatch in from_generators");
    if (w.is_empty()) continue;
    int prev = base;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int next = (i + 1 == w.size()) ? base : f.new_vertex();
      Letter x = w[i];
      if (x > 0)
        f.add_edge(prev, next, x);
      else
        f.add_edge(next, prev, -x);
      prev = next;
    }
  }
  return f.finish(base);
}

// End vertex of the path reading w from the base, or -1 if the path leaves
// the graph.
inline int trace(const StallingsGraph& g, const ReducedWord& w) {
  int v = g.base();
  for (Letter x : w.letters()) {
    v = g.step(v, x);
    if (v < 0) return -1;
  }
  return v;
}

inline bool contains(const StallingsGraph& g, const ReducedWord& w) {
  return trace(g, w) == g.base();
}

// Finite index via the covering-space criterion: the graph must be a
// (2k)-regular complete automaton.
inline std::optional<int> index_in_ambient(const StallingsGraph& g) {
  for (int v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) != 2 * g.rank_k()) return std::nullopt;
  return g.num_vertices();
}

// Free basis from the breadth-first spanning tree: one word per non-tree
// edge, path to the edge's source, the edge, path back from its target.
inline std::vector<ReducedWord> free_basis(const StallingsGraph& g) {
  int n = g.num_vertices();
  std::vector<int> parent(n, -1), parent_letter(n, 0);
  std::vector<bool> tree_edge(g.num_edges(), false);
  std::vector<bool> visited(n, false);
  std::deque<int> q{g.base()};
  visited[g.base()] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (const auto& a : g.out(v))
      if (!visited[a.target]) {
        visited[a.target] = true;
        parent[a.target] = v;
        parent_letter[a.target] = a.slabel;
        tree_edge[a.edge] = true;
        q.push_back(a.target);
      }
  }
  auto path_from_base = [&](int v) {
    std::vector<Letter> w;
    while (v != g.base()) {
      w.push_back(parent_letter[v]);
      v = parent[v];
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  std::vector<ReducedWord> basis;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (tree_edge[e]) continue;
    const GraphEdge& ed = g.edges()[e];
    std::vector<Letter> w = path_from_base(ed.source);
    w.push_back(ed.label);
    std::vector<Letter> back = path_from_base(ed.target);
    for (auto it = back.rbegin(); it != back.rend(); ++it) w.push_back(inv(*it));
    basis.push_back(free_reduce(g.rank_k(), w));
  }
  return basis;
}

// Rewrites w (an element of the subgroup of `over`) in the spanning-tree free
// basis of `over`; the result is a word over an alphabet of rank(over).
inline ReducedWord rewrite_in_basis(const StallingsGraph& over,
                                    const ReducedWord& w) {
  int n = over.num_vertices();
  std::vector<bool> tree_edge(over.num_edges(), false);
  {
    std::vector<bool> visited(n, false);
    std::deque<int> q{over.base()};
    visited[over.base()] = true;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (const auto& a : over.out(v))
        if (!visited[a.target]) {
          visited[a.target] = true;
          tree_edge[a.edge] = true;
          q.push_back(a.target);
        }
    }
  }
  std::vector<int> basis_index(over.num_edges(), -1);
  int r = 0;
  for (int e = 0; e < over.num_edges(); ++e)
    if (!tree_edge[e]) basis_index[e] = ++r;
  if (r == 0) {
    if (!w.is_empty()) throw error("word not contained in the subgroup");
    return ReducedWord::empty(1);
  }
  std::vector<Letter> out;
  int v = over.base();
  for (Letter x : w.letters()) {
    int e = over.step_edge(v, x);
    if (e < 0) throw error("word not contained in the subgroup");
    if (basis_index[e] >= 0) {
      Letter b = x > 0 ? basis_index[e] : -basis_index[e];
      if (!out.empty() && out.back() == inv(b))
        out.pop_back();
      else
        out.push_back(b);
    }
    v = over.step(v, x);
  }
  if (v != over.base()) throw error("word not contained in the subgroup");
  return ReducedWord(r, std::move(out));
}

// Index of <sub> inside the subgroup carried by `over`.
inline std::optional<int> index_of(const std::vector<ReducedWord>& sub,
                                   const StallingsGraph& over) {
  int r = over.rank();
  if (r == 0) {
    for (const auto& w : sub)
      if (!w.is_empty()) throw error("word not contained in the subgroup");
    return 1;
  }
  std::vector<ReducedWord> rewritten;
  for (const auto& w : sub) rewritten.push_back(rewrite_in_basis(over, w));
  return index_in_ambient(from_generators(r, rewritten));
}

// --- fiber products ---------------------------------------------------------

struct FiberComponent {
  bool basepointed = false;
  int vertices = 0;
  int edges = 0;
  int rank = 0;
  std::pair<int, int> sample_vertex{-1, -1};
};

// Components of the pullback of two folded graphs; components that are trees
// (rank 0) are reported only for the basepointed one.
inline std::vector<FiberComponent> fiber_product(const StallingsGraph& g1,
                                                 const StallingsGraph& g2) {
  if (g1.rank_k() != g2.rank_k()) throw error("alphabet mismatch");
  const std::uint64_t V2 = (std::uint64_t)g2.num_vertices();
  auto key = [&](int a, int b) { return (std::uint64_t)a * V2 + b; };

  std::unordered_map<std::uint64_t, int> id;
  std::vector<std::uint64_t> keys;
  auto get_id = [&](std::uint64_t kk) {
    auto [it, inserted] = id.emplace(kk, (int)keys.size());
    if (inserted) keys.push_back(kk);
    return it->second;
  };
  int base_id = get_id(key(g1.base(), g2.base()));

  // Union-find over product vertices touched by at least one edge.
  std::vector<int> uf;
  std::vector<int> edge_count;
  auto uf_find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  std::vector<std::pair<int, int>> prod_edges;
  std::vector<std::vector<const GraphEdge*>> by_label1(g1.rank_k() + 1),
      by_label2(g2.rank_k() + 1);
  for (const auto& e : g1.edges()) by_label1[e.label].push_back(&e);
  for (const auto& e : g2.edges()) by_label2[e.label].push_back(&e);
  for (int l = 1; l <= g1.rank_k(); ++l)
    for (const GraphEdge* e1 : by_label1[l])
      for (const GraphEdge* e2 : by_label2[l])
        prod_edges.push_back({get_id(key(e1->source, e2->source)),
                              get_id(key(e1->target, e2->target))});
  uf.resize(keys.size());
  for (int i = 0; i < (int)uf.size(); ++i) uf[i] = i;
  for (auto [a, b] : prod_edges) {
    a = uf_find(a);
    b = uf_find(b);
    if (a != b) uf[a] = b;
  }
  std::unordered_map<int, FiberComponent> comps;
  for (int i = 0; i < (int)keys.size(); ++i) {
    FiberComponent& c = comps[uf_find(i)];
    c.vertices++;
    if (c.sample_vertex.first < 0)
      c.sample_vertex = {(int)(keys[i] / V2), (int)(keys[i] % V2)};
  }
  for (auto [a, b] : prod_edges) comps[uf_find(a)].edges++;
  int base_root = uf_find(base_id);
  comps[base_root].basepointed = true;
  comps[base_root].sample_vertex = {g1.base(), g2.base()};
  std::vector<FiberComponent> out;
  for (auto& [root, c] : comps) {
    c.rank = c.edges - c.vertices + 1;
    if (c.basepointed || c.rank >= 1) out.push_back(c);
  }
  // Basepointed first, then by decreasing rank; deterministic order.
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.basepointed != b.basepointed) return a.basepointed;
    if (a.rank != b.rank) return a.rank > b.rank;
    return a.vertices < b.vertices;
  });
  return out;
}

// Stallings graph of the intersection of the two subgroups: the basepointed
// component of the pullback, explored from (base, base) only.
inline StallingsGraph intersection_graph(const StallingsGraph& g1,
                                         const StallingsGraph& g2) {
  if (g1.rank_k() != g2.rank_k()) throw error("alphabet mismatch");
  const std::uint64_t V2 = (std::uint64_t)g2.num_vertices();
  auto key = [&](int a, int b) { return (std::uint64_t)a * V2 + b; };
  std::unordered_map<std::uint64_t, int> id;
  std::vector<std::uint64_t> q;
  auto get_id = [&](std::uint64_t kk) {
    auto [it, inserted] = id.emplace(kk, (int)id.size());
    if (inserted) q.push_back(kk);
    return it->second;
  };
  get_id(key(g1.base(), g2.base()));
  std::vector<GraphEdge> edges;
  for (std::size_t head = 0; head < q.size(); ++head) {
    int x = (int)(q[head] / V2), y = (int)(q[head] % V2);
    int xy = id[q[head]];
    for (const auto& a : g1.out(x)) {
      if (a.slabel < 0) continue;
      int y2 = g2.step(y, a.slabel);
      if (y2 < 0) continue;
      int tid = get_id(key(a.target, y2));
      edges.push_back({xy, tid, a.slabel});
    }
    for (const auto& a : g1.out(x)) {
      if (a.slabel > 0) continue;
      int y2 = g2.step(y, a.slabel);
      if (y2 < 0) continue;
      get_id(key(a.target, y2));  // reachability only; edge added forward
    }
  }
  // Backward steps can discover vertices whose forward edges were not yet
  // emitted; redo edge emission over the final vertex set.
  edges.clear();
  for (std::size_t i = 0; i < q.size(); ++i) {
    int x = (int)(q[i] / V2), y = (int)(q[i] % V2);
    for (const auto& a : g1.out(x)) {
      if (a.slabel < 0) continue;
      int y2 = g2.step(y, a.slabel);
      if (y2 < 0) continue;
      auto it = id.find(key(a.target, y2));
      if (it != id.end()) edges.push_back({(int)id[q[i]], it->second, a.slabel});
    }
  }
  return StallingsGraph::from_edges(g1.rank_k(), (int)q.size(), 0,
                                    std::move(edges));
}

struct MalnormalityReport {
  bool malnormal = false;
  std::optional<FiberComponent> witness;  // non-basepointed, rank >= 1
};

inline MalnormalityReport is_malnormal(const StallingsGraph& g) {
  MalnormalityReport rep;
  for (const auto& c : fiber_product(g, g))
    if (!c.basepointed && c.rank >= 1) {
      rep.witness = c;
      return rep;
    }
  rep.malnormal = true;
  return rep;
}

// --- central tree / outer loops ---------------------------------------------

struct OuterArc {
  int from = 0;  // tree vertex
  int to = 0;    // tree vertex
  std::vector<Letter> word;  // label as traversed from -> to
  std::vector<int> edge_indices;
};

struct CentralDecomposition {
  std::set<int> tree_vertices;
  std::set<int> tree_edges;
  std::vector<OuterArc> outer_loops;
  int tree_diameter = 0;

  std::vector<std::size_t> loop_lengths() const {
    std::vector<std::size_t> out;
    for (const auto& a : outer_loops) out.push_back(a.word.size());
    return out;
  }
};

namespace detail {
inline std::vector<int> bfs_distances(const StallingsGraph& g, int src) {
  std::vector<int> d(g.num_vertices(), -1);
  std::deque<int> q{src};
  d[src] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (const auto& a : g.out(v))
      if (d[a.target] < 0) {
        d[a.target] = d[v] + 1;
        q.push_back(a.target);
      }
  }
  return d;
}
}  // namespace detail

// Central tree = union of all geodesics between marked vertices (vertices of
// degree >= 3, plus the base); succeeds iff that union is a tree whose
// complement consists of exactly p arcs meeting it only at their endpoints.
inline std::optional<CentralDecomposition> central_decomposition(
    const StallingsGraph& g, int p) {
  if (g.rank() != p) throw error("rank mismatch in central_decomposition");
  CentralDecomposition dec;
  std::vector<int> marked;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (v == g.base() || g.degree(v) >= 3) marked.push_back(v);

  std::set<int> tree_edges;
  std::set<int> tree_vertices(marked.begin(), marked.end());
  if (marked.size() >= 2) {
    std::vector<std::vector<int>> dist;
    for (int m : marked) dist.push_back(detail::bfs_distances(g, m));
    for (std::size_t i = 0; i < marked.size(); ++i)
      for (std::size_t j = i + 1; j < marked.size(); ++j) {
        int D = dist[i][marked[j]];
        for (int e = 0; e < g.num_edges(); ++e) {
          const GraphEdge& ed = g.edges()[e];
          if (dist[i][ed.source] + 1 + dist[j][ed.target] == D ||
              dist[i][ed.target] + 1 + dist[j][ed.source] == D) {
            tree_edges.insert(e);
            tree_vertices.insert(ed.source);
            tree_vertices.insert(ed.target);
          }
        }
      }
  }
  // Tree check: connected and acyclic.
  if (tree_edges.size() + 1 != tree_vertices.size() && !tree_vertices.empty()) {
    if (!(tree_edges.empty() && tree_vertices.size() == 1)) return std::nullopt;
  }
  {
    // Connectivity of the candidate tree.
    std::unordered_map<int, std::vector<std::pair<int, int>>> tadj;
    for (int e : tree_edges) {
      tadj[g.edges()[e].source].push_back({g.edges()[e].target, e});
      tadj[g.edges()[e].target].push_back({g.edges()[e].source, e});
    }
    std::set<int> seen;
    std::deque<int> q{*tree_vertices.begin()};
    seen.insert(*tree_vertices.begin());
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (auto [t, e] : tadj[v])
        if (seen.insert(t).second) q.push_back(t);
    }
    if (seen != tree_vertices) return std::nullopt;
  }
  // Complement arcs.
  std::vector<bool> used(g.num_edges(), false);
  for (int e : tree_edges) used[e] = true;
  std::vector<OuterArc> arcs;
  for (int tv : tree_vertices) {
    for (const auto& a0 : g.out(tv)) {
      if (used[a0.edge]) continue;
      used[a0.edge] = true;
      OuterArc arc;
      arc.from = tv;
      arc.word.push_back(a0.slabel);
      arc.edge_indices.push_back(a0.edge);
      int cur = a0.target;
      int via_edge = a0.edge;
      while (!tree_vertices.count(cur)) {
        if (g.degree(cur) != 2) return std::nullopt;
        const auto& outs = g.out(cur);
        const StallingsGraph::Arc* nxt = nullptr;
        for (const auto& a : outs)
          if (a.edge != via_edge) nxt = &a;
        if (!nxt) return std::nullopt;  // dead end inside an arc
        used[nxt->edge] = true;
        arc.word.push_back(nxt->slabel);
        arc.edge_indices.push_back(nxt->edge);
        via_edge = nxt->edge;
        cur = nxt->target;
      }
      arc.to = cur;
      arcs.push_back(std::move(arc));
    }
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (!used[e]) return std::nullopt;  // complement component missing the tree
  if ((int)arcs.size() != p) return std::nullopt;
  // Tree diameter (in edges), double BFS inside the tree.
  int diameter = 0;
  if (tree_edges.size() >= 1) {
    std::unordered_map<int, std::vector<int>> tadj;
    for (int e : tree_edges) {
      tadj[g.edges()[e].source].push_back(g.edges()[e].target);
      tadj[g.edges()[e].target].push_back(g.edges()[e].source);
    }
    auto far = [&](int src) {
      std::unordered_map<int, int> d{{src, 0}};
      std::deque<int> q{src};
      std::pair<int, int> best{src, 0};
      while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int t : tadj[v])
          if (!d.count(t)) {
            d[t] = d[v] + 1;
            if (d[t] > best.second) best = {t, d[t]};
            q.push_back(t);
          }
      }
      return best;
    };
    auto [f1, d1] = far(*tree_vertices.begin());
    diameter = far(f1).second;
  }
  dec.tree_vertices = std::move(tree_vertices);
  dec.tree_edges = std::move(tree_edges);
  dec.outer_loops = std::move(arcs);
  dec.tree_diameter = diameter;
  return dec;
}

// --- serialization ----------------------------------------------------------

inline nlohmann::json to_json(const StallingsGraph& g) {
  nlohmann::json j;
  j["rank_k"] = g.rank_k();
  j["base"] = g.base();
  std::vector<int> vs(g.num_vertices());
  std::iota(vs.begin(), vs.end(), 0);
  j["vertices"] = vs;
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    edges.push_back(nlohmann::json::array(
        {e.source, e.target, print_word(ReducedWord(g.rank_k(), {e.label}))}));
  }
  j["edges"] = edges;
  return j;
}

inline std::string serialize(const StallingsGraph& g) {
  return to_json(g).dump(2);
}

inline StallingsGraph graph_from_json(const nlohmann::json& j) {
  if (!j.contains("rank_k") || !j.contains("base") || !j.contains("vertices") ||
      !j.contains("edges"))
    throw error("graph document missing a required field");
  int k = j["rank_k"].get<int>();
  std::vector<int> vs = j["vertices"].get<std::vector<int>>();
  std::unordered_map<int, int> remap;
  for (int v : vs)
    if (!remap.emplace(v, (int)remap.size()).second)
      throw error("duplicate vertex id");
  auto it = remap.find(j["base"].get<int>());
  if (it == remap.end()) throw error("base vertex not in vertex list");
  int base = it->second;
  std::vector<GraphEdge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 3) throw error("bad edge entry");
    ReducedWord lw = parse_reduced_word(k, e[2].get<std::string>());
    if (lw.size() != 1 || lw[0] < 1)
      throw error("edge label must be a single positive letter");
    auto s = remap.find(e[0].get<int>()), t = remap.find(e[1].get<int>());
    if (s == remap.end() || t == remap.end())
      throw error("edge endpoint not in vertex list");
    edges.push_back({s->second, t->second, lw[0]});
  }
  return StallingsGraph::from_edges(k, (int)remap.size(), base,
                                    std::move(edges));
}

inline StallingsGraph deserialize(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw error(std::string("malformed graph document: ") + e.what());
  }
  return graph_from_json(j);
}

}  // namespace fg
