// sftpij: exact analysis of vertex shifts against the necessary conditions
// for finite-width pairwise-independent self-joinings, plus rule
// verification, rule search and the finite independence-configuration
// solver. Exit codes: 0 pass/verified/consistent, 3 fail/excluded/refuted,
// 2 input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <random>

#include "sftpij/gallery.hpp"

using namespace sftpij;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNegative = 3;

std::int64_t default_budget() {
  if (const char* env = std::getenv("SFTPIJ_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw InputError("SFTPIJ_BUDGET must be a positive integer");
  }
  return 10000000;
}

MarkovMeasure load_measure(const std::string& measure_file,
                           const std::string& matrix_file) {
  if (!measure_file.empty()) return measure_from_json(load_json_file(measure_file));
  AdjacencyMatrix m = matrix_from_json(load_json_file(matrix_file));
  if (is_irreducible(m)) return MarkovMeasure(m, perron(m));
  if (is_uniform(m)) return MarkovMeasure::uniform_measure(m);
  throw InputError("matrix is reducible and not uniform: no canonical maximal-entropy measure");
}

void print_battery_text(const PijReport& rep) {
  std::cout << "battery:\n";
  for (const auto& c : rep.checks) {
    std::cout << "  " << (c.condition ? "[cond] " : "[gate] ") << c.name;
    for (size_t i = c.name.size(); i < 24; ++i) std::cout << ' ';
    std::cout << to_string(c.status) << "  " << c.witness << "\n";
  }
  std::cout << "verdict: " << rep.verdict();
  if (!rep.first_failure().empty()) std::cout << " (" << rep.first_failure() << ")";
  std::cout << "\n";
}

int cmd_analyze(const std::string& matrix_file, bool as_json,
                const std::string& measure_out, std::int64_t budget) {
  AdjacencyMatrix m = matrix_from_json(load_json_file(matrix_file));
  bool irr = is_irreducible(m);
  PijReport rep = run_battery(m, {.budget = budget});

  nlohmann::json j;
  j["alphabet_size"] = m.size();
  j["irreducible"] = irr;
  if (irr) j["period"] = period(m);
  auto n_opt = is_uniform(m);
  if (n_opt) j["uniform_n"] = *n_opt;
  j["char_poly"] = char_poly(m).to_string();
  std::optional<MarkovMeasure> mu;
  if (irr) {
    mu = MarkovMeasure(m, perron(m));
    j["perron"] = perron_to_json(mu->perron());
    EntropyReport ent = entropy(*mu, 8);
    j["entropy"] = {{"log_beta", ent.log_beta}, {"beta", ent.beta}};
    nlohmann::json est = nlohmann::json::array();
    for (auto [len, v] : ent.estimates) est.push_back({{"length", len}, {"estimate", v}});
    j["entropy"]["finite_length_estimates"] = est;
  } else if (n_opt) {
    mu = MarkovMeasure::uniform_measure(m);
    j["perron"] = perron_to_json(mu->perron());
  }
  j["battery"] = report_to_json(rep);

  if (!measure_out.empty()) {
    if (!mu) throw InputError("no canonical measure available for export");
    std::ofstream out(measure_out);
    if (!out) throw InputError("cannot write " + measure_out);
    out << measure_to_json(*mu).dump(2) << "\n";
  }

  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "matrix: " << matrix_file << "  (|A| = " << m.size() << ")\n";
    std::cout << "irreducible: " << (irr ? "yes" : "no") << "\n";
    if (irr) std::cout << "period: " << period(m) << (period(m) == 1 ? " (aperiodic)" : "") << "\n";
    if (mu) {
      const PerronData& pd = mu->perron();
      if (pd.integer)
        std::cout << "perron: " << pd.integer_value.str() << " (exact integer)\n";
      else
        std::cout << "perron: irrational, bracket [" << rational_to_string(pd.lo) << ", "
                  << rational_to_string(pd.hi) << "], annihilator "
                  << pd.annihilator.to_string() << "\n";
      std::cout << "entropy: log " << pd.value_approx() << " = "
                << std::log(pd.value_approx()) << "\n";
    }
    std::cout << "uniform: " << (n_opt ? "yes (n = " + std::to_string(*n_opt) + ")" : "no")
              << "\n";
    std::cout << "char poly: " << char_poly(m).to_string() << "\n";
    print_battery_text(rep);
  }
  return rep.excluded ? kExitNegative : kExitOk;
}

int cmd_verify(const std::string& matrix_file, const std::string& measure_file,
               const std::string& rule_file, int depth, bool as_json,
               std::int64_t budget) {
  MarkovMeasure mu = load_measure(measure_file, matrix_file);
  LocalRule rule = rule_from_json(load_json_file(rule_file));
  JoiningVerdict v = verify_pij(mu, rule, depth, budget);
  if (as_json) {
    std::cout << verdict_to_json(v).dump(2) << "\n";
  } else {
    std::cout << v.summary() << "\n";
    for (const auto& d : v.per_depth)
      std::cout << "  depth " << d.depth << ": marginal dev "
                << rational_to_string(d.marginal_dev) << ", indep devs "
                << rational_to_string(d.indep_x_dev) << " / "
                << rational_to_string(d.indep_xp_dev) << "\n";
    if (!v.witness.empty()) std::cout << "  witness: " << v.witness << "\n";
  }
  return v.verified ? kExitOk : kExitNegative;
}

int cmd_search(const std::string& matrix_file, int p, int depth, bool as_json,
               std::int64_t budget, bool prune) {
  AdjacencyMatrix m = matrix_from_json(load_json_file(matrix_file));
  std::vector<LocalRule> rules = search_rules(m, p, depth, budget, prune);
  if (as_json) {
    nlohmann::json j;
    j["count"] = rules.size();
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rules) arr.push_back(rule_to_json(r));
    j["rules"] = arr;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << rules.size() << " rule(s) verified up to depth " << depth << "\n";
    const Alphabet& a = m.alphabet();
    for (size_t i = 0; i < rules.size(); ++i) {
      std::cout << "rule " << i << ":";
      std::int64_t w = rules[i].num_windows();
      for (std::int64_t x = 0; x < w; ++x)
        for (std::int64_t y = 0; y < w; ++y)
          std::cout << " (" << word_to_string(a, rules[i].windows().word_at(x)) << ","
                    << word_to_string(a, rules[i].windows().word_at(y)) << ")->"
                    << a.name(rules[i].apply(x, y));
      std::cout << "\n";
    }
  }
  return kExitOk;
}

int cmd_pij_star(const std::string& matrix_file, const std::string& measure_file,
                 const std::string& rule_file, int q_max, bool as_json,
                 std::int64_t budget) {
  MarkovMeasure mu = load_measure(measure_file, matrix_file);
  LocalRule rule = rule_from_json(load_json_file(rule_file));
  auto q = check_pij_star(mu, rule, q_max, budget);
  if (as_json) {
    nlohmann::json j;
    j["q_max"] = q_max;
    if (q)
      j["q"] = *q;
    else
      j["q"] = nullptr;
    std::cout << j.dump(2) << "\n";
  } else {
    if (q)
      std::cout << "first coordinate recoverable from windows of half-width q = " << *q << "\n";
    else
      std::cout << "no q <= " << q_max << " recovers the first coordinate\n";
  }
  return q ? kExitOk : kExitNegative;
}

int cmd_ind_solve(const std::string& config_file, bool as_json) {
  IndependenceConfig cfg = config_from_json(load_json_file(config_file));
  auto sol = solve_config(cfg);
  if (as_json) {
    nlohmann::json j;
    j["feasible"] = sol.has_value();
    if (sol) j["solution"] = solution_to_json(*sol);
    std::cout << j.dump(2) << "\n";
  } else if (sol) {
    std::cout << "feasible; value = " << rational_to_string(sol->value) << "\n";
    std::cout << "m  =";
    for (const auto& v : sol->m) std::cout << " " << rational_to_string(v);
    std::cout << "\nm' =";
    for (const auto& v : sol->mp) std::cout << " " << rational_to_string(v);
    std::cout << "\n";
  } else {
    std::cout << "infeasible\n";
  }
  return sol ? kExitOk : kExitNegative;
}

int cmd_ind_value(const std::string& config_file, bool as_json) {
  IndependenceConfig cfg = config_from_json(load_json_file(config_file));
  auto value = config_value(cfg);
  if (as_json) {
    nlohmann::json j;
    j["feasible"] = value.has_value();
    if (value) j["value"] = rational_to_string(*value);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (value ? "value = " + rational_to_string(*value) : "infeasible") << "\n";
  }
  return value ? kExitOk : kExitNegative;
}

int cmd_ind_check_lemma(const std::string& config_file, int trials, bool as_json) {
  IndependenceConfig cfg = config_from_json(load_json_file(config_file));
  UniquenessReport rep = verify_value_uniqueness(cfg, trials);
  if (as_json) {
    nlohmann::json j;
    j["feasible"] = rep.feasible;
    if (rep.feasible) {
      j["distinct_solutions"] = rep.distinct_solutions;
      j["all_values_equal"] = rep.all_values_equal;
      j["value"] = rational_to_string(rep.value);
      j["value_denominator"] = rep.value_denominator.str();
      j["max_entry_denominator"] = rep.max_entry_denominator.str();
    }
    std::cout << j.dump(2) << "\n";
  } else if (rep.feasible) {
    std::cout << rep.distinct_solutions << " distinct solution(s); values "
              << (rep.all_values_equal ? "all equal to " : "DIFFER, first ")
              << rational_to_string(rep.value) << " (denominator "
              << rep.value_denominator.str() << ")\n";
  } else {
    std::cout << "infeasible\n";
  }
  if (!rep.feasible) return kExitNegative;
  return rep.all_values_equal ? kExitOk : kExitNegative;
}

int cmd_ind_random(int f, int fp, double density, unsigned seed, bool as_json) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution member(density);
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < fp; ++j)
      if (member(rng)) cells.emplace_back(i, j);
  IndependenceConfig cfg = IndependenceConfig::from_cells(f, fp, cells);
  (void)as_json;
  std::cout << config_to_json(cfg).dump(2) << "\n";
  return kExitOk;
}

int cmd_gallery(const std::string& dir, const std::string& name, bool all,
                bool as_json, std::int64_t budget) {
  auto entries = load_gallery(dir);
  std::vector<GalleryOutcome> outcomes;
  bool found = false;
  for (const auto& e : entries) {
    if (!all && e.name != name) continue;
    found = true;
    outcomes.push_back(run_gallery_entry(e, dir, budget));
  }
  if (!found) throw InputError("unknown gallery entry: " + name);
  bool all_matched = true;
  if (as_json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& o : outcomes) {
      nlohmann::json j;
      j["name"] = o.name;
      j["skipped"] = o.skipped;
      j["matched"] = o.matched;
      j["details"] = o.lines;
      arr.push_back(j);
      if (!o.skipped && !o.matched) all_matched = false;
    }
    std::cout << arr.dump(2) << "\n";
  } else {
    for (const auto& o : outcomes) {
      std::cout << o.name << ": "
                << (o.skipped ? "skipped" : (o.matched ? "expectations matched" : "MISMATCH"))
                << "\n";
      for (const auto& line : o.lines) std::cout << line << "\n";
      if (!o.skipped && !o.matched) all_matched = false;
    }
  }
  return all_matched ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for vertex shifts and pairwise-independent self-joinings"};
  app.require_subcommand(1);
  app.fallthrough();  // allow --json / --budget after the subcommand name
  bool as_json = false;
  app.add_flag("--json", as_json, "emit machine-readable JSON instead of text");

  std::int64_t budget = 0;
  app.add_option("--budget", budget, "enumeration budget (pairs/words); env SFTPIJ_BUDGET");

  std::string matrix_file, measure_file, rule_file, config_file, measure_out;
  int depth = 6, p = 0, q_max = 2, trials = 10;
  unsigned seed = 1;

  auto* analyze = app.add_subcommand("analyze", "structure, Perron data and the full battery");
  analyze->add_option("matrix", matrix_file, "matrix JSON file")->required();
  analyze->add_option("--measure-out", measure_out, "write the maximal-entropy measure JSON here");

  auto* verify = app.add_subcommand("verify", "exact pushforward verification of a rule");
  verify->add_option("--matrix", matrix_file, "matrix JSON file");
  verify->add_option("--measure", measure_file, "measure JSON file");
  verify->add_option("--rule", rule_file, "rule JSON file")->required();
  verify->add_option("--depth", depth, "verification depth (default 6)");

  auto* search = app.add_subcommand("search", "exhaustive width-p rule search");
  search->add_option("--matrix", matrix_file, "matrix JSON file")->required();
  search->add_option("--p", p, "rule width (default 0)");
  search->add_option("--depth", depth, "verification depth for the filter");
  bool no_prune = false;
  search->add_flag("--no-prune", no_prune, "disable the counting prune (same results)");

  auto* pijstar = app.add_subcommand("pij-star", "recover the first coordinate from the others");
  pijstar->add_option("--matrix", matrix_file, "matrix JSON file");
  pijstar->add_option("--measure", measure_file, "measure JSON file");
  pijstar->add_option("--rule", rule_file, "rule JSON file")->required();
  pijstar->add_option("--qmax", q_max, "largest half-width to try (default 2)");

  auto* ind = app.add_subcommand("ind", "finite independence configurations");
  ind->require_subcommand(1);
  auto* ind_solve = ind->add_subcommand("solve", "canonical exact solution");
  ind_solve->add_option("--config", config_file, "config JSON file")->required();
  auto* ind_value = ind->add_subcommand("value", "solution-independent value");
  ind_value->add_option("--config", config_file, "config JSON file")->required();
  auto* ind_lemma = ind->add_subcommand("check-lemma", "probe distinct vertices, compare values");
  ind_lemma->add_option("--config", config_file, "config JSON file")->required();
  ind_lemma->add_option("--trials", trials, "objective probes (default 10)");
  auto* ind_random = ind->add_subcommand("random", "emit a seeded random config");
  int rand_f = 4, rand_fp = 4;
  double density = 0.5;
  ind_random->add_option("--f", rand_f, "size of F");
  ind_random->add_option("--fp", rand_fp, "size of F'");
  ind_random->add_option("--density", density, "membership density (default 0.5)");
  ind_random->add_option("--seed", seed, "RNG seed");

  auto* gallery = app.add_subcommand("gallery", "run the bundled examples against expectations");
  std::string gallery_dir =
#ifdef SFTPIJ_DEFAULT_GALLERY_DIR
      SFTPIJ_DEFAULT_GALLERY_DIR;
#else
      "data/gallery";
#endif
  std::string gallery_name;
  bool gallery_all = false;
  gallery->add_option("name", gallery_name, "entry name");
  gallery->add_flag("--all", gallery_all, "run every entry");
  gallery->add_option("--gallery-dir", gallery_dir, "directory with gallery.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (budget == 0) budget = default_budget();
    if (analyze->parsed()) return cmd_analyze(matrix_file, as_json, measure_out, budget);
    if (verify->parsed()) {
      if (matrix_file.empty() && measure_file.empty())
        throw InputError("verify needs --matrix or --measure");
      return cmd_verify(matrix_file, measure_file, rule_file, depth, as_json, budget);
    }
    if (search->parsed()) return cmd_search(matrix_file, p, depth, as_json, budget, !no_prune);
    if (pijstar->parsed()) {
      if (matrix_file.empty() && measure_file.empty())
        throw InputError("pij-star needs --matrix or --measure");
      return cmd_pij_star(matrix_file, measure_file, rule_file, q_max, as_json, budget);
    }
    if (ind->parsed()) {
      if (ind_solve->parsed()) return cmd_ind_solve(config_file, as_json);
      if (ind_value->parsed()) return cmd_ind_value(config_file, as_json);
      if (ind_lemma->parsed()) return cmd_ind_check_lemma(config_file, trials, as_json);
      if (ind_random->parsed()) return cmd_ind_random(rand_f, rand_fp, density, seed, as_json);
    }
    if (gallery->parsed()) {
      if (!gallery_all && gallery_name.empty())
        throw InputError("gallery needs an entry name or --all");
      return cmd_gallery(gallery_dir, gallery_name, gallery_all, as_json, budget);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
