// Acceptance gate: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <vector>

#include "support.hpp"

using namespace fg;

namespace {

int g_failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int idx, const char* name, bool ok, double secs) {
  std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", idx,
              name, secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

// --- 1: sphere counting formula vs direct enumeration -----------------------

bool counting_vs_enumeration() {
  for (int k = 2; k <= 3; ++k) {
    BigInt ball = 0;
    for (int A = 0; A <= 8; ++A) {
      BigInt seen = 0;
      for_each_reduced_word(k, A, [&](const ReducedWord& w) {
        if ((int)w.size() != A) return;
        ++seen;
      });
      if (seen != count_reduced_words(k, A)) return false;
      ball += seen;
      if (ball != ball_size(k, A)) return false;
    }
  }
  return true;
}

// --- 2: splitting tower, exact ranks, coverage, witness ----------------------

bool tower_exact() {
  auto t = build_tower(2, 5);
  for (int i = 1; i <= 5; ++i) {
    if (t.a(i).rank() != i) return false;
    if (t.c(i).rank() != 2 * i - 1) return false;
    auto idx = index_of(free_basis(t.c(i)), t.a(i));
    if (!idx || *idx != 2) return false;
    if (!coverage_bullet(t, i)) return false;
    auto rep = verify_sharpness(t, i);
    if (!rep.equality || !rep.embeddings_ok || !rep.coverage_ok) return false;
    if (!covers_all_subwords(rep.witness, 2 * i, Orientation::directed).covered)
      return false;
    if (!contains(t.a(i + 1), rep.witness.representative())) return false;
  }
  return true;
}

// --- 3: random-walk drift ----------------------------------------------------

bool walk_drift() {
  SamplerSpec s{SamplerModel::walk, 2, 10000, 1, 3001};
  double total = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) total += (double)walk(s, t).size() / s.n;
  double mean = total / trials;
  return mean >= 0.49 && mean <= 0.51;
}

// --- 4: Whitehead enumeration, minimization, orbit invariance ----------------

bool whitehead_suite() {
  auto k2 = enumerate_whitehead(2);
  if (k2.size() != 16) return false;
  int ids = 0, inners = 0;
  for (const auto& phi : k2) {
    if (phi.is_identity()) ++ids;
    if (phi.is_inner()) ++inners;
  }
  if (ids != 4 || inners != 4) return false;

  if (minimize(parse_word(2, "ab")).minimal.size() != 1) return false;
  if (minimize(parse_word(2, "abab")).minimal.size() != 2) return false;
  if (minimize(parse_word(2, "abAB")).minimal.size() != 4) return false;

  Rng rng(4001);
  for (int t = 0; t < 100; ++t) {
    auto w = tst::random_reduced(rng, 2, 1 + rng.below(12));
    auto alpha = tst::random_autoword(rng, 2, 5);
    auto w2 = alpha.apply(w);
    if (w2.is_empty()) continue;
    auto m1 = minimize(w), m2 = minimize(w2);
    if (m1.minimal.size() != m2.minimal.size()) return false;
    if (cyclic_reduce(m1.path.apply(w)).core != m1.minimal) return false;
  }
  return true;
}

// --- 5: equidistributed words are strictly Whitehead minimal -----------------

bool equidistributed_minimal() {
  Rng rng(5001);
  for (int t = 0; t < 10000; ++t) {
    std::size_t len = 100 + (std::size_t)(t % 100) * 100;
    auto g = tst::equidistributed_word(rng, 2, len);
    if (!is_strictly_whitehead_minimal(g).minimal) return false;
  }
  return true;
}

// --- 6: decay curves are monotone with a non-positive fitted slope -----------

bool decay_suites() {
  const char* events[] = {"prefixes", "distinct-subwords",
                          "equidistributed(0.05)", "coverage(3)", "free-basis"};
  for (const char* ev : events) {
    ExperimentSpec spec;
    parse_event(ev, spec);
    bool subgroup_event = spec.event == Event::prefixes ||
                          spec.event == Event::distinct_subwords ||
                          spec.event == Event::free_basis;
    spec.sampler = {SamplerModel::walk, 2, 0, subgroup_event ? 2 : 1, 6001};
    spec.n_grid = {100, 200, 400, 800};
    spec.trials = 1000;
    spec.seed = 6001;
    auto res = run_experiment(spec);
    int soft = 0;
    for (std::size_t i = 0; i + 1 < res.rows.size(); ++i) {
      const auto& lo = res.rows[i];
      const auto& hi = res.rows[i + 1];
      double tol = 2 * (lo.standard_error + hi.standard_error);
      if (hi.p_hat < lo.p_hat - tol) {
        std::printf("  hard inversion for %s at n=%llu\n", ev,
                    (unsigned long long)hi.n);
        return false;
      }
      if (hi.p_hat < lo.p_hat) ++soft;
    }
    if (soft > 1) {
      std::printf("  %d soft inversions for %s\n", soft, ev);
      return false;
    }
    bool below_one = res.rows.front().p_hat < 1.0;
    if (res.slope > 0 || (below_one && res.slope >= 0)) {
      std::printf("  slope %.3g for %s\n", res.slope, ev);
      return false;
    }
  }
  return true;
}

// --- 7: certified subgroups resist every sampled automorphism ----------------

bool certified_aut_malnormal() {
  SamplerSpec s{SamplerModel::walk, 2, 2000, 2, 7001};
  CertParams params;
  Rng arng(7002);
  int certified = 0, violations = 0, nontrivial = 0;
  for (int t = 0; t < 2000 && certified < 100; ++t) {
    auto rs = random_subgroup(s, t);
    if (!certify(rs.words, params).certified) continue;
    ++certified;
    const StallingsGraph& h = rs.graph;
    for (int j = 0; j < 1000; ++j) {
      auto alpha = tst::random_autoword(arng, 2, 5);
      auto ha = subgroup_image(alpha, h);
      if (intersection_graph(ha, h).rank() < 1) continue;
      ++nontrivial;
      auto g = is_inner(alpha, 2);
      if (!g || !contains(h, *g)) ++violations;
    }
  }
  std::printf("  certified=%d nontrivial-intersections=%d violations=%d\n",
              certified, nontrivial, violations);
  return certified == 100 && violations == 0;
}

// --- 8: fiber-product malnormality agrees with brute force -------------------

bool malnormal_vs_brute_force() {
  // Known verdicts with short witnesses.
  auto h_a = from_generators(2, {parse_word(2, "a")});
  if (!is_malnormal(h_a).malnormal) return false;
  if (tst::brute_force_malnormal_witness(h_a, 4)) return false;
  auto h_a2 = from_generators(2, {parse_word(2, "aa")});
  if (is_malnormal(h_a2).malnormal) return false;
  if (!tst::brute_force_malnormal_witness(h_a2, 4)) return false;
  auto h_mix = from_generators(2, {parse_word(2, "a"), parse_word(2, "baB")});
  if (is_malnormal(h_mix).malnormal) return false;
  if (!tst::brute_force_malnormal_witness(h_mix, 4)) return false;

  Rng rng(8001);
  for (int t = 0; t < 50; ++t) {
    std::vector<ReducedWord> gens{tst::random_reduced(rng, 2, 1 + rng.below(6)),
                                  tst::random_reduced(rng, 2, 1 + rng.below(6))};
    auto h = from_generators(2, gens);
    bool fiber = is_malnormal(h).malnormal;
    auto wit = tst::brute_force_malnormal_witness(h, 8);
    if (fiber && wit) return false;
    if (!fiber) {
      // Soundness in the other direction: confirm via the reported component.
      auto rep = is_malnormal(h);
      if (!rep.witness || rep.witness->rank < 1) return false;
    }
  }
  return true;
}

// --- 9: CSV output independent of worker count -------------------------------

bool csv_determinism() {
  ExperimentSpec spec;
  spec.event = Event::free_basis;
  spec.sampler = {SamplerModel::walk, 2, 0, 2, 9001};
  spec.n_grid = {100, 200};
  spec.trials = 400;
  spec.seed = 9001;
  auto one = to_csv(run_experiment(spec));
  spec.workers = 4;
  auto four = to_csv(run_experiment(spec));
  spec.workers = 8;
  auto eight = to_csv(run_experiment(spec));
  return one == four && one == eight;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    bool (*fn)();
  };
  const Entry entries[] = {
      {"sphere and ball counts match enumeration", counting_vs_enumeration},
      {"splitting tower is exact through level 5", tower_exact},
      {"random-walk drift is 1/2", walk_drift},
      {"whitehead enumeration, minimization, orbit invariance",
       whitehead_suite},
      {"equidistributed words are strictly minimal", equidistributed_minimal},
      {"failure decay across the n grid", decay_suites},
      {"certified subgroups resist sampled automorphisms",
       certified_aut_malnormal},
      {"malnormality agrees with brute force", malnormal_vs_brute_force},
      {"CSV identical for 1, 4, 8 workers", csv_determinism},
  };
  int idx = 0;
  for (const Entry& e : entries) {
    ++idx;
    Timer timer;
    bool ok = false;
    try {
      ok = e.fn();
    } catch (const std::exception& ex) {
      std::printf("  exception: %s\n", ex.what());
      ok = false;
    }
    report(idx, e.name, ok, timer.secs());
  }
  return g_failures == 0 ? 0 : 1;
}
