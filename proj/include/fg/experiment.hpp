#pragma once

// Monte-Carlo experiment harness: named events over the samplers, per-n
// success estimates, exponential-decay fit, deterministic CSV output
// independent of the worker count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>

#include "fg/certifier.hpp"
#include "fg/profile.hpp"
#include "fg/sampling.hpp"
#include "fg/subwords.hpp"
#include "fg/whitehead.hpp"

namespace fg {

enum class Event {
  prefixes,
  distinct_subwords,
  relabel_match_free,
  equidistributed,
  whitehead_minimal,
  coverage,
  certified,
  free_basis,
  malnormal,
};

struct ExperimentSpec {
  Event event = Event::free_basis;
  Rational event_eps = Rational(1, 20);  // for equidistributed
  int event_l = 3;                       // for coverage
  SamplerSpec sampler;                   // n overridden per grid point
  std::vector<std::uint64_t> n_grid;
  int trials = 100;
  CertParams params;
  std::uint64_t seed = 0;
  int workers = 1;
  bool timing = false;

  void validate() const {
    if (trials < 1) throw error("trials must be >= 1");
    if (workers < 1) throw error("workers must be >= 1");
    for (std::size_t i = 1; i < n_grid.size(); ++i)
      if (n_grid[i] <= n_grid[i - 1])
        throw error("n_grid must be strictly increasing");
    if (n_grid.empty()) throw error("empty n_grid");
  }
};

// Accepts "coverage(3)", "equidistributed(0.05)" (decimal or rational
// argument), or a bare event name.
inline void parse_event(const std::string& text, ExperimentSpec& spec) {
  std::string name = text;
  std::string arg;
  auto open = text.find('(');
  if (open != std::string::npos) {
    if (text.back() != ')') throw error("unbalanced event argument: " + text);
    name = text.substr(0, open);
    arg = text.substr(open + 1, text.size() - open - 2);
  }
  if (name == "prefixes")
    spec.event = Event::prefixes;
  else if (name == "distinct-subwords")
    spec.event = Event::distinct_subwords;
  else if (name == "relabel-match-free")
    spec.event = Event::relabel_match_free;
  else if (name == "equidistributed")
    spec.event = Event::equidistributed;
  else if (name == "whitehead-minimal")
    spec.event = Event::whitehead_minimal;
  else if (name == "coverage")
    spec.event = Event::coverage;
  else if (name == "certified")
    spec.event = Event::certified;
  else if (name == "free-basis")
    spec.event = Event::free_basis;
  else if (name == "malnormal")
    spec.event = Event::malnormal;
  else
    throw error("unknown event name: " + name);
  if (!arg.empty()) {
    if (spec.event == Event::coverage) {
      spec.event_l = std::stoi(arg);
    } else if (spec.event == Event::equidistributed) {
      if (arg.find('/') != std::string::npos) {
        auto slash = arg.find('/');
        spec.event_eps = Rational(BigInt(arg.substr(0, slash)),
                                  BigInt(arg.substr(slash + 1)));
      } else {
        // Decimal literal to exact rational.
        double d = std::stod(arg);
        spec.event_eps = Rational((long long)std::llround(d * 1e9),
                                  1000000000LL);
      }
    } else {
      throw error("event takes no argument: " + name);
    }
  }
}

namespace detail {

inline bool run_trial(const ExperimentSpec& spec, std::uint64_t n,
                      std::uint64_t trial) {
  SamplerSpec s = spec.sampler;
  s.n = n;
  s.seed = splitmix64(spec.seed ^ splitmix64(n));
  switch (spec.event) {
    case Event::prefixes: {
      auto rs = random_subgroup(s, trial);
      std::size_t min_len = SIZE_MAX;
      for (const auto& w : rs.words) min_len = std::min(min_len, w.size());
      if (min_len == 0 || min_len == SIZE_MAX) return false;
      std::size_t m = std::max<std::size_t>(
          1, ceil_rational(spec.params.lambda * (int)min_len));
      return check_prefixes(rs.words, m);
    }
    case Event::distinct_subwords: {
      auto rs = random_subgroup(s, trial);
      std::size_t min_len = SIZE_MAX;
      for (const auto& w : rs.words) min_len = std::min(min_len, w.size());
      if (min_len == 0 || min_len == SIZE_MAX) return false;
      std::size_t m = std::max<std::size_t>(
          1, ceil_rational(spec.params.beta * (int)min_len));
      return all_subwords_distinct(rs.words, m).distinct;
    }
    case Event::relabel_match_free: {
      auto rs = random_subgroup(s, trial);
      std::size_t min_len = SIZE_MAX;
      for (const auto& w : rs.words) min_len = std::min(min_len, w.size());
      if (min_len == 0 || min_len == SIZE_MAX) return false;
      std::size_t m = std::max<std::size_t>(
          1, ceil_rational(spec.params.beta * (int)min_len));
      for (const Relabeling& phi : enumerate_relabelings(s.k)) {
        if (phi.is_identity()) continue;
        if (relabel_match_exists(rs.words, m, phi).found) return false;
      }
      return true;
    }
    case Event::equidistributed: {
      CyclicWord g = cyclic_reduce(sample(s, trial)).core;
      if (g.is_empty()) return false;
      return is_equidistributed(g, spec.event_eps).equidistributed;
    }
    case Event::whitehead_minimal: {
      CyclicWord g = cyclic_reduce(sample(s, trial)).core;
      if (g.is_empty()) return false;
      return is_strictly_whitehead_minimal(g).minimal;
    }
    case Event::coverage: {
      CyclicWord g = cyclic_reduce(sample(s, trial)).core;
      if (g.is_empty()) return false;
      return covers_all_subwords(g, spec.event_l, Orientation::directed)
          .covered;
    }
    case Event::certified: {
      auto rs = random_subgroup(s, trial);
      for (const auto& w : rs.words)
        if (w.is_empty()) return false;
      return certify(rs.words, spec.params).certified;
    }
    case Event::free_basis: {
      auto rs = random_subgroup(s, trial);
      return rs.graph.rank() == s.p;
    }
    case Event::malnormal: {
      auto rs = random_subgroup(s, trial);
      return is_malnormal(rs.graph).malnormal;
    }
  }
  throw error("unreachable event");
}

}  // namespace detail

struct EstimateRow {
  std::uint64_t n = 0;
  int trials = 0;
  int successes = 0;
  double p_hat = 0;
  double standard_error = 0;
  long long wall_ms = 0;
};

struct ExperimentResult {
  std::vector<EstimateRow> rows;
  double slope = 0;
  double intercept = 0;
};

inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult res;
  for (std::uint64_t n : spec.n_grid) {
    auto t0 = std::chrono::steady_clock::now();
    int successes = 0;
    if (spec.workers == 1) {
      for (int t = 0; t < spec.trials; ++t)
        if (detail::run_trial(spec, n, t)) ++successes;
    } else {
      std::vector<int> partial(spec.workers, 0);
      std::vector<std::thread> threads;
      for (int w = 0; w < spec.workers; ++w)
        threads.emplace_back([&, w] {
          for (int t = w; t < spec.trials; t += spec.workers)
            if (detail::run_trial(spec, n, t)) ++partial[w];
        });
      for (auto& th : threads) th.join();
      for (int c : partial) successes += c;
    }
    auto t1 = std::chrono::steady_clock::now();
    EstimateRow row;
    row.n = n;
    row.trials = spec.trials;
    row.successes = successes;
    row.p_hat = (double)successes / spec.trials;
    row.standard_error =
        std::sqrt(row.p_hat * (1 - row.p_hat) / spec.trials);
    row.wall_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    res.rows.push_back(row);
  }
  // Least squares of log(failure) against n, failures clamped at 1/trials.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = (int)res.rows.size();
  for (const auto& r : res.rows) {
    double fail = std::max(1.0 - r.p_hat, 1.0 / r.trials);
    double x = (double)r.n, y = std::log(fail);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = m * sxx - sx * sx;
  if (denom != 0) {
    res.slope = (m * sxy - sx * sy) / denom;
    res.intercept = (sy - res.slope * sx) / m;
  }
  return res;
}

// CSV with the fixed schema; wall_ms is reported as 0 unless timing was
// requested, keeping output byte-identical across runs and worker counts.
inline std::string to_csv(const ExperimentResult& res, bool timing = false) {
  std::string out = "n,trials,successes,p_hat,stderr,wall_ms\n";
  char buf[160];
  for (const auto& r : res.rows) {
    std::snprintf(buf, sizeof(buf), "%llu,%d,%d,%.6g,%.6g,%lld\n",
                  (unsigned long long)r.n, r.trials, r.successes, r.p_hat,
                  r.standard_error, timing ? r.wall_ms : 0LL);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "#fit slope=%.6g intercept=%.6g\n", res.slope,
                res.intercept);
  out += buf;
  return out;
}

}  // namespace fg
