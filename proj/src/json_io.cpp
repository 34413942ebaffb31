#include "sftpij/json_io.hpp"

#include <fstream>
#include <sstream>

namespace sftpij {

namespace {

nlohmann::json rational_array(const std::vector<Rational>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : v) out.push_back(rational_to_string(r));
  return out;
}

std::vector<Rational> rational_array_from(const nlohmann::json& j) {
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_string(e.get<std::string>()));
  return out;
}

}  // namespace

nlohmann::json matrix_to_json(const AdjacencyMatrix& m) {
  nlohmann::json j;
  j["alphabet"] = m.alphabet().symbols();
  j["matrix"] = m.entries();
  return j;
}

AdjacencyMatrix matrix_from_json(const nlohmann::json& j) {
  return parse_matrix(j.dump());
}

nlohmann::json perron_to_json(const PerronData& pd) {
  nlohmann::json j;
  j["integer"] = pd.integer;
  if (pd.integer) {
    j["value"] = pd.integer_value.str();
  } else {
    j["bracket"] = {{"lo", rational_to_string(pd.lo)}, {"hi", rational_to_string(pd.hi)}};
  }
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : pd.annihilator.coeffs()) coeffs.push_back(c.str());
  j["annihilator"] = coeffs;
  if (pd.integer) {
    j["left"] = rational_array(pd.left);
    j["right"] = rational_array(pd.right);
  } else {
    j["left"] = pd.left_f;
    j["right"] = pd.right_f;
  }
  return j;
}

PerronData perron_from_json(const nlohmann::json& j) {
  PerronData pd;
  pd.integer = j.at("integer").get<bool>();
  std::vector<BigInt> coeffs;
  for (const auto& c : j.at("annihilator")) coeffs.emplace_back(c.get<std::string>());
  pd.annihilator = IntPolynomial(std::move(coeffs));
  if (pd.integer) {
    pd.integer_value = BigInt(j.at("value").get<std::string>());
    pd.lo = pd.hi = Rational(pd.integer_value);
    pd.left = rational_array_from(j.at("left"));
    pd.right = rational_array_from(j.at("right"));
    for (const auto& v : pd.left) pd.left_f.push_back(to_double(v));
    for (const auto& v : pd.right) pd.right_f.push_back(to_double(v));
  } else {
    pd.lo = rational_from_string(j.at("bracket").at("lo").get<std::string>());
    pd.hi = rational_from_string(j.at("bracket").at("hi").get<std::string>());
    pd.left_f = j.at("left").get<std::vector<double>>();
    pd.right_f = j.at("right").get<std::vector<double>>();
  }
  return pd;
}

nlohmann::json measure_to_json(const MarkovMeasure& mu) {
  nlohmann::json j;
  j["matrix"] = matrix_to_json(mu.matrix());
  j["perron"] = perron_to_json(mu.perron());
  if (mu.exact()) {
    j["stationary"] = rational_array(mu.stationary());
    nlohmann::json t = nlohmann::json::array();
    for (const auto& row : mu.transition()) t.push_back(rational_array(row));
    j["transition"] = t;
  } else {
    j["stationary"] = mu.stationary_f();
    j["transition"] = mu.transition_f();
  }
  return j;
}

MarkovMeasure measure_from_json(const nlohmann::json& j) {
  if (!j.contains("matrix") || !j.contains("perron"))
    throw InputError("measure file needs \"matrix\" and \"perron\" fields");
  AdjacencyMatrix m = matrix_from_json(j.at("matrix"));
  PerronData pd = perron_from_json(j.at("perron"));
  if (static_cast<int>(pd.left_f.size()) != m.size())
    throw InputError("perron data size does not match the matrix");
  return MarkovMeasure(std::move(m), std::move(pd));
}

nlohmann::json rule_to_json(const LocalRule& rule) {
  nlohmann::json j;
  j["matrix"] = matrix_to_json(rule.matrix());
  j["p"] = rule.width();
  const Alphabet& a = rule.matrix().alphabet();
  nlohmann::json table = nlohmann::json::array();
  std::int64_t w = rule.num_windows();
  for (std::int64_t i = 0; i < w; ++i) {
    Word wi = rule.windows().word_at(i);
    for (std::int64_t k = 0; k < w; ++k) {
      Word wk = rule.windows().word_at(k);
      table.push_back({{"x", word_to_string(a, wi)},
                       {"xp", word_to_string(a, wk)},
                       {"out", a.name(rule.apply(i, k))}});
    }
  }
  j["table"] = table;
  return j;
}

LocalRule rule_from_json(const nlohmann::json& j) {
  if (!j.contains("matrix") || !j.contains("p") || !j.contains("table"))
    throw InputError("rule file needs \"matrix\", \"p\" and \"table\" fields");
  AdjacencyMatrix m = matrix_from_json(j.at("matrix"));
  int p = j.at("p").get<int>();
  if (p < 0) throw InputError("rule width must be nonnegative");
  WordIndexer idx(m, 2 * p + 1, 1 << 20);
  std::int64_t w = idx.size();
  std::vector<int> table(static_cast<size_t>(w * w), -1);
  const Alphabet& a = m.alphabet();
  for (const auto& e : j.at("table")) {
    Word w1 = word_from_string(a, e.at("x").get<std::string>());
    Word w2 = word_from_string(a, e.at("xp").get<std::string>());
    std::int64_t i = idx.index_of(w1.syms);
    std::int64_t k = idx.index_of(w2.syms);
    if (i < 0 || k < 0) throw InputError("rule table entry with disallowed window");
    int out = a.index_of(e.at("out").get<std::string>());
    if (out < 0) throw InputError("rule output symbol not in alphabet");
    if (table[static_cast<size_t>(i * w + k)] != -1)
      throw InputError("duplicate rule table entry");
    table[static_cast<size_t>(i * w + k)] = out;
  }
  for (int v : table)
    if (v < 0) throw InputError("rule table is not total over allowed window pairs");
  return LocalRule(std::move(m), p, std::move(table));
}

nlohmann::json verdict_to_json(const JoiningVerdict& v) {
  nlohmann::json j;
  j["requested_depth"] = v.requested_depth;
  j["summary"] = v.summary();
  j["verified"] = v.verified;
  if (!v.verified) j["refuted_at"] = v.refuted_at;
  if (!v.witness.empty()) j["witness"] = v.witness;
  nlohmann::json depths = nlohmann::json::array();
  for (const auto& d : v.per_depth) {
    nlohmann::json e;
    e["depth"] = d.depth;
    e["marginal_total"] = rational_to_string(d.marginal_total);
    e["marginal_dev"] = rational_to_string(d.marginal_dev);
    e["indep_x_dev"] = rational_to_string(d.indep_x_dev);
    e["indep_xp_dev"] = rational_to_string(d.indep_xp_dev);
    e["marginal_ok"] = d.marginal_ok;
    e["indep_x_ok"] = d.indep_x_ok;
    e["indep_xp_ok"] = d.indep_xp_ok;
    if (!d.witness.empty()) e["witness"] = d.witness;
    depths.push_back(e);
  }
  j["per_depth"] = depths;
  return j;
}

nlohmann::json report_to_json(const PijReport& rep) {
  nlohmann::json j;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name},
                      {"status", to_string(c.status)},
                      {"witness", c.witness}});
  j["checks"] = checks;
  j["verdict"] = rep.verdict();
  return j;
}

nlohmann::json config_to_json(const IndependenceConfig& cfg) {
  nlohmann::json j;
  j["F"] = cfg.size_f;
  j["Fp"] = cfg.size_fp;
  nlohmann::json cells = nlohmann::json::array();
  for (auto [a, b] : cfg.cells()) cells.push_back({a, b});
  j["C"] = cells;
  return j;
}

IndependenceConfig config_from_json(const nlohmann::json& j) {
  if (!j.contains("F") || !j.contains("Fp") || !j.contains("C"))
    throw InputError("config file needs \"F\", \"Fp\" and \"C\" fields");
  std::vector<std::pair<int, int>> cells;
  for (const auto& c : j.at("C")) {
    if (!c.is_array() || c.size() != 2) throw InputError("config cell must be [i, j]");
    cells.emplace_back(c[0].get<int>(), c[1].get<int>());
  }
  return IndependenceConfig::from_cells(j.at("F").get<int>(), j.at("Fp").get<int>(), cells);
}

nlohmann::json solution_to_json(const ConfigSolution& sol) {
  nlohmann::json j;
  j["m"] = rational_array(sol.m);
  j["mp"] = rational_array(sol.mp);
  j["value"] = rational_to_string(sol.value);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

nlohmann::json load_json_file(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
}

}  // namespace sftpij
