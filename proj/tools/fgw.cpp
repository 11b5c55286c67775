// fgw: free group workbench. Words, Stallings graphs, Whitehead
// minimization, malnormality certification, sharp splitting towers, and
// Monte-Carlo experiments.
//
// Exit codes: 0 success, 1 failed verdict under --strict, 2 usage or format
// errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fg/fg.hpp"

namespace {

fg::Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos)
    return fg::Rational(fg::BigInt(s.substr(0, slash)),
                        fg::BigInt(s.substr(slash + 1)));
  if (s.find('.') != std::string::npos) {
    double d = std::stod(s);
    return fg::Rational((long long)std::llround(d * 1e9), 1000000000LL);
  }
  return fg::Rational(fg::BigInt(s));
}

std::vector<fg::ReducedWord> read_words(int k, const std::vector<std::string>& words,
                                        const std::string& file) {
  std::vector<fg::ReducedWord> out;
  for (const auto& w : words) out.push_back(fg::parse_word(k, w));
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw fg::error("cannot open file: " + file);
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
        line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      out.push_back(fg::parse_word(k, line));
    }
  }
  if (out.empty()) throw fg::error("no generator words given");
  return out;
}

fg::StallingsGraph read_graph(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw fg::error("cannot open file: " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return fg::deserialize(ss.str());
}

std::vector<std::uint64_t> parse_grid(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoull(item));
  return out;
}

// Pre-scan for --config and expose its keys as flag defaults.
nlohmann::json load_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) throw fg::error(std::string("cannot open config: ") + argv[i + 1]);
      nlohmann::json j;
      in >> j;
      return j;
    }
  return nlohmann::json::object();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fgw: free group workbench"};
  app.require_subcommand(1);

  nlohmann::json cfg;
  try {
    cfg = load_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto cfg_int = [&](const char* key, auto& var) {
    if (cfg.contains(key)) var = cfg[key].template get<std::decay_t<decltype(var)>>();
  };
  auto cfg_str = [&](const char* key, std::string& var) {
    if (cfg.contains(key)) var = cfg[key].get<std::string>();
  };

  std::string config_path;
  std::uint64_t seed = 0;
  int trials = 100;
  cfg_int("seed", seed);
  cfg_int("trials", trials);
  app.add_option("--config", config_path, "JSON config; keys mirror flag names");
  app.add_option("--seed", seed, "master random seed");
  app.add_option("--trials", trials, "Monte-Carlo trials");

  int k = 2;
  cfg_int("k", k);
  bool strict = false;

  // reduce
  auto* c_reduce = app.add_subcommand("reduce", "freely reduce a word")->fallthrough();
  std::string word_in;
  c_reduce->add_option("word", word_in)->required();
  c_reduce->add_option("--k", k, "rank");

  // minimize
  auto* c_min = app.add_subcommand("minimize", "Whitehead-minimize a word")->fallthrough();
  std::string min_word;
  bool show_path = false;
  c_min->add_option("word", min_word)->required();
  c_min->add_option("--k", k);
  c_min->add_flag("--path", show_path, "also print the automorphism path");

  // fold
  auto* c_fold = app.add_subcommand("fold", "Stallings graph of a subgroup")->fallthrough();
  std::vector<std::string> gen_args;
  std::string gens_file;
  cfg_str("gens-file", gens_file);
  c_fold->add_option("gens", gen_args, "generator words");
  c_fold->add_option("--gens-file", gens_file, "file with one word per line");
  c_fold->add_option("--k", k);

  // intersect
  auto* c_int = app.add_subcommand("intersect", "intersection of two subgroups")->fallthrough();
  std::string graph_a, graph_b, gens_a, gens_b;
  c_int->add_option("--graph-a", graph_a, "graph JSON file");
  c_int->add_option("--graph-b", graph_b, "graph JSON file");
  c_int->add_option("--gens-a", gens_a, "comma-separated words");
  c_int->add_option("--gens-b", gens_b, "comma-separated words");
  c_int->add_option("--k", k);

  // malnormal
  auto* c_mal = app.add_subcommand("malnormal", "malnormality via fiber product")->fallthrough();
  std::vector<std::string> mal_gens;
  std::string mal_file, mal_graph;
  c_mal->add_option("gens", mal_gens);
  c_mal->add_option("--gens-file", mal_file);
  c_mal->add_option("--graph", mal_graph, "graph JSON file");
  c_mal->add_option("--k", k);
  c_mal->add_flag("--strict", strict, "exit 1 when not malnormal");

  // certify
  auto* c_cert = app.add_subcommand("certify", "Aut-malnormality certificate")->fallthrough();
  std::vector<std::string> cert_gens;
  std::string cert_file;
  std::string lambda_s = "1/20", beta_s = "1/5", eps_target_s = "0";
  int min_outer = 0;
  cfg_str("lambda", lambda_s);
  cfg_str("beta", beta_s);
  cfg_str("epsilon-target", eps_target_s);
  cfg_int("min-outer", min_outer);
  c_cert->add_option("gens", cert_gens);
  c_cert->add_option("--gens-file", cert_file);
  c_cert->add_option("--k", k);
  c_cert->add_option("--lambda", lambda_s, "prefix fraction");
  c_cert->add_option("--beta", beta_s, "subword fraction");
  c_cert->add_option("--epsilon-target", eps_target_s, "0 = epsilon0(k)");
  c_cert->add_option("--min-outer", min_outer, "0 = 3*m_beta");
  c_cert->add_flag("--strict", strict, "exit 1 when inconclusive");

  // sample
  auto* c_samp = app.add_subcommand("sample", "draw random words or subgroups")->fallthrough();
  std::string model = "walk";
  std::uint64_t n = 100;
  int p = 1;
  cfg_str("model", model);
  cfg_int("n", n);
  cfg_int("p", p);
  c_samp->add_option("--model", model, "walk | sphere | ball");
  c_samp->add_option("--k", k);
  c_samp->add_option("--n", n, "length / radius");
  c_samp->add_option("--p", p, "words per sample line");

  // stats
  auto* c_stats = app.add_subcommand("stats", "Monte-Carlo event estimates (CSV)")->fallthrough();
  std::string event = "free-basis", grid_s = "100,200,400,800", eps_s, out_file;
  int cov_l = 3, workers = 1;
  bool timing = false;
  cfg_str("event", event);
  cfg_str("n", grid_s);
  cfg_int("L", cov_l);
  cfg_str("eps", eps_s);
  cfg_int("workers", workers);
  cfg_str("model", model);
  cfg_int("p", p);
  c_stats->add_option("--event", event,
                      "prefixes | distinct-subwords | relabel-match-free | "
                      "equidistributed(e) | whitehead-minimal | coverage(L) | "
                      "certified | free-basis | malnormal");
  c_stats->add_option("--L", cov_l, "coverage length");
  c_stats->add_option("--eps", eps_s, "equidistribution tolerance");
  c_stats->add_option("--model", model);
  c_stats->add_option("--k", k);
  c_stats->add_option("--n", grid_s, "comma-separated n grid");
  c_stats->add_option("--p", p);
  c_stats->add_option("--workers", workers);
  c_stats->add_option("--lambda", lambda_s);
  c_stats->add_option("--beta", beta_s);
  c_stats->add_option("--out", out_file, "write CSV here instead of stdout");
  c_stats->add_flag("--timing", timing, "report real wall_ms (non-reproducible)");

  // sharpness
  auto* c_sharp = app.add_subcommand("sharpness", "sharp splitting tower report")->fallthrough();
  int level = 1;
  bool tower_only = false;
  cfg_int("i", level);
  c_sharp->add_option("--k", k);
  c_sharp->add_option("--i", level, "tower level");
  c_sharp->add_flag("--tower", tower_only, "emit the tower document instead");

  // coverage
  auto* c_cov = app.add_subcommand("coverage", "subword coverage of a cyclic word")->fallthrough();
  std::string cov_word;
  bool undirected = false;
  c_cov->add_option("word", cov_word)->required();
  c_cov->add_option("--k", k);
  c_cov->add_option("--L", cov_l, "subword length");
  c_cov->add_flag("--undirected", undirected);
  c_cov->add_flag("--strict", strict, "exit 1 when not covered");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_reduce) {
      std::cout << fg::print_word(fg::parse_word(k, word_in)) << "\n";
    } else if (*c_min) {
      auto res = fg::minimize(fg::parse_word(k, min_word));
      std::cout << fg::print_word(res.minimal.representative()) << "\n";
      if (show_path) std::cout << fg::print_autoword(res.path, k) << "\n";
    } else if (*c_fold) {
      auto gens = read_words(k, gen_args, gens_file);
      std::cout << fg::serialize(fg::from_generators(k, gens)) << "\n";
    } else if (*c_int) {
      auto side = [&](const std::string& gfile, const std::string& words) {
        if (!gfile.empty()) return read_graph(gfile);
        std::vector<std::string> ws;
        std::stringstream ss(words);
        std::string item;
        while (std::getline(ss, item, ',')) ws.push_back(item);
        return fg::from_generators(k, read_words(k, ws, ""));
      };
      fg::StallingsGraph a = side(graph_a, gens_a), b = side(graph_b, gens_b);
      if (a.rank_k() != b.rank_k())
        throw fg::error("the two graphs have different ranks");
      nlohmann::json j;
      j["intersection"] = fg::to_json(fg::intersection_graph(a, b));
      auto comps = nlohmann::json::array();
      for (const auto& c : fg::fiber_product(a, b))
        comps.push_back({{"basepointed", c.basepointed},
                         {"vertices", c.vertices},
                         {"edges", c.edges},
                         {"rank", c.rank}});
      j["fiber_components"] = comps;
      std::cout << j.dump(2) << "\n";
    } else if (*c_mal) {
      fg::StallingsGraph g =
          !mal_graph.empty()
              ? read_graph(mal_graph)
              : fg::from_generators(k, read_words(k, mal_gens, mal_file));
      auto rep = fg::is_malnormal(g);
      if (rep.malnormal) {
        std::cout << "malnormal\n";
      } else {
        std::cout << "not-malnormal (witness component rank "
                  << rep.witness->rank << ")\n";
        if (strict) return 1;
      }
    } else if (*c_cert) {
      auto gens = read_words(k, cert_gens, cert_file);
      fg::CertParams params;
      params.lambda = parse_rational(lambda_s);
      params.beta = parse_rational(beta_s);
      params.epsilon_target = parse_rational(eps_target_s);
      params.min_outer = min_outer;
      auto rep = fg::certify(gens, params);
      std::cout << fg::to_json(rep).dump(2) << "\n";
      if (strict && !rep.certified) return 1;
    } else if (*c_samp) {
      fg::SamplerSpec s{fg::parse_model(model), k, n, p, seed};
      for (int t = 0; t < trials; ++t) {
        auto rs = fg::random_subgroup(s, t);
        for (int j = 0; j < p; ++j)
          std::cout << (j ? " " : "") << fg::print_word(rs.words[j]);
        std::cout << "\n";
      }
    } else if (*c_stats) {
      fg::ExperimentSpec spec;
      fg::parse_event(event, spec);
      if (!eps_s.empty()) spec.event_eps = parse_rational(eps_s);
      if (c_stats->count("--L")) spec.event_l = cov_l;
      spec.sampler = fg::SamplerSpec{fg::parse_model(model), k, 0, p, 0};
      spec.n_grid = parse_grid(grid_s);
      spec.trials = trials;
      spec.params.lambda = parse_rational(lambda_s);
      spec.params.beta = parse_rational(beta_s);
      spec.seed = seed;
      spec.workers = workers;
      spec.timing = timing;
      std::string csv = fg::to_csv(fg::run_experiment(spec), timing);
      if (out_file.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(out_file);
        if (!out) throw fg::error("cannot write: " + out_file);
        out << csv;
      }
    } else if (*c_sharp) {
      auto tower = fg::build_tower(k, level);
      if (tower_only)
        std::cout << fg::to_json(tower).dump(2) << "\n";
      else
        std::cout << fg::to_json(fg::verify_sharpness(tower, level)).dump(2)
                  << "\n";
    } else if (*c_cov) {
      fg::CyclicWord g = fg::cyclic_reduce(fg::parse_word(k, cov_word)).core;
      if (g.is_empty()) throw fg::error("trivial word has no cyclic core");
      auto rep = fg::covers_all_subwords(
          g, cov_l,
          undirected ? fg::Orientation::undirected : fg::Orientation::directed);
      if (rep.covered) {
        std::cout << "covered\n";
      } else {
        std::cout << "missing " << rep.missing_count << "\n";
        for (const auto& w : rep.missing)
          std::cout << fg::print_word(w) << "\n";
        if (strict) return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
