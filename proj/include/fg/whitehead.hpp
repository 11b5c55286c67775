#pragma once

// Strict Whitehead minimality, greedy peak-reduction minimization, orbit
// comparison of minimal cyclic words, and images of subgroups under
// automorphisms.

#include <optional>

#include "fg/automorphisms.hpp"
#include "fg/stallings.hpp"
#include "fg/words.hpp"

namespace fg {

// Cyclic word image under an automorphism factor: apply to a representative,
// then cyclically reduce.
template <typename Auto>
inline CyclicWord cyclic_apply(const Auto& phi, const CyclicWord& g) {
  return cyclic_reduce(apply(phi, g.representative())).core;
}

struct MinimalityReport {
  bool minimal = false;
  std::optional<WhiteheadAuto> witness;  // proper, non-increasing
};

// Strict Whitehead minimality: every proper Whitehead automorphism strictly
// increases the cyclic length.
inline MinimalityReport is_strictly_whitehead_minimal(const CyclicWord& g) {
  if (g.is_empty()) throw error("minimality of the empty cyclic word");
  const std::size_t len = g.size();
  for (const WhiteheadAuto& phi : enumerate_whitehead(g.rank())) {
    if (!phi.is_proper()) continue;
    if (cyclic_apply(phi, g).size() <= len) return {false, phi};
  }
  return {true, std::nullopt};
}

struct MinimizeResult {
  CyclicWord minimal;
  AutoWord path;  // evaluates the input to a conjugate of minimal
};

// Greedy steepest descent by Whitehead automorphisms. Peak reduction
// guarantees that a non-minimal cyclic word admits a strictly shortening
// Whitehead automorphism, so the descent ends at the orbit minimum. Ties are
// broken by enumeration order.
inline MinimizeResult minimize(const ReducedWord& w) {
  if (w.is_empty()) throw error("minimize of the trivial word");
  MinimizeResult res;
  CyclicReduction cr = cyclic_reduce(w);
  res.path.push_outer(InnerBy{invert(cr.conjugator)});
  CyclicWord cur = cr.core;
  const auto autos = enumerate_whitehead(w.rank());
  for (;;) {
    const WhiteheadAuto* best = nullptr;
    std::size_t best_len = cur.size();
    for (const WhiteheadAuto& phi : autos) {
      if (phi.is_identity() || phi.is_inner()) continue;
      std::size_t len = cyclic_apply(phi, cur).size();
      if (len < best_len) {
        best_len = len;
        best = &phi;
      }
    }
    if (!best) break;
    // Track the conjugation that re-centers the image, so the path applied to
    // the original word lands exactly on a conjugate of the minimum.
    CyclicReduction step = cyclic_reduce(best->apply(cur.representative()));
    res.path.push_outer(*best);
    res.path.push_outer(InnerBy{invert(step.conjugator)});
    cur = step.core;
  }
  res.minimal = cur;
  return res;
}

struct OrbitWitness {
  bool equal = false;
  std::size_t rotation = 0;
  Relabeling relabeling{1};
};

// For strictly Whitehead minimal g, h: true iff some relabeling maps g to a
// rotation of h. Re-verifies the precondition.
inline OrbitWitness minimal_orbit_equal(const CyclicWord& g,
                                        const CyclicWord& h) {
  if (g.rank() != h.rank()) throw error("alphabet mismatch");
  if (!is_strictly_whitehead_minimal(g).minimal ||
      !is_strictly_whitehead_minimal(h).minimal)
    throw error("minimal_orbit_equal requires strictly minimal inputs");
  OrbitWitness out;
  if (g.size() != h.size()) return out;
  for (const Relabeling& phi : enumerate_relabelings(g.rank())) {
    std::vector<Letter> img;
    img.reserve(g.size());
    for (Letter x : g.letters()) img.push_back(phi.apply(x));
    for (std::size_t r = 0; r < img.size(); ++r) {
      bool match = true;
      for (std::size_t i = 0; i < img.size() && match; ++i)
        match = img[(r + i) % img.size()] == h.letters()[i];
      if (match) return {true, r, phi};
    }
  }
  return out;
}

// Stallings graph of alpha(H), from the images of a free basis of H.
inline StallingsGraph subgroup_image(const AutoWord& alpha,
                                     const StallingsGraph& g) {
  std::vector<ReducedWord> images;
  for (const ReducedWord& b : free_basis(g)) images.push_back(alpha.apply(b));
  return from_generators(g.rank_k(), images);
}

}  // namespace fg
