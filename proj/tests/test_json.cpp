#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sftpij/json_io.hpp"

using namespace sftpij;

namespace {

AdjacencyMatrix random_essential(std::mt19937& rng, int n) {
  std::vector<std::vector<int>> e(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)][static_cast<size_t>((i + 1) % n)] = 1;
  std::bernoulli_distribution extra(0.5);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (extra(rng)) e[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
  std::vector<std::string> syms;
  for (int i = 0; i < n; ++i) syms.push_back(std::to_string(i));
  return AdjacencyMatrix(Alphabet(std::move(syms)), std::move(e));
}

}  // namespace

TEST_CASE("rational string round trip") {
  for (const char* s : {"0/1", "1/2", "-3/7", "12345678901234567890/7"})
    CHECK(rational_to_string(rational_from_string(s)) == s);
  CHECK(rational_to_string(rational_from_string("4/2")) == "2/1");
  CHECK_THROWS_AS(rational_from_string("1/0"), InputError);
  CHECK_THROWS_AS(rational_from_string("abc"), InputError);
}

TEST_CASE("matrix round trip is the identity on canonical forms") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    AdjacencyMatrix m = random_essential(rng, 2 + trial % 4);
    AdjacencyMatrix back = matrix_from_json(matrix_to_json(m));
    CHECK(back == m);
    // serialization is byte-stable
    CHECK(matrix_to_json(m).dump() == matrix_to_json(back).dump());
  }
}

TEST_CASE("measure round trip preserves the exact data") {
  AdjacencyMatrix tri(Alphabet({"0", "1", "2"}), {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  MarkovMeasure mu(tri, perron(tri));
  MarkovMeasure back = measure_from_json(measure_to_json(mu));
  CHECK(back.exact());
  CHECK(back.matrix() == mu.matrix());
  CHECK(back.stationary() == mu.stationary());
  CHECK(back.transition() == mu.transition());
  CHECK(measure_to_json(back).dump() == measure_to_json(mu).dump());
}

TEST_CASE("measure export carries the bracket in the irrational case") {
  AdjacencyMatrix gm(Alphabet({"0", "1"}), {{1, 1}, {1, 0}});
  MarkovMeasure mu(gm, perron(gm));
  nlohmann::json j = measure_to_json(mu);
  CHECK_FALSE(j.at("perron").at("integer").get<bool>());
  CHECK(j.at("perron").contains("bracket"));
  MarkovMeasure back = measure_from_json(j);
  CHECK_FALSE(back.exact());
  CHECK(back.perron().lo == mu.perron().lo);
}

TEST_CASE("rule round trip, single- and multi-character alphabets") {
  LocalRule xor2 = make_bernoulli_rule(2);
  LocalRule back = rule_from_json(rule_to_json(xor2));
  CHECK(back == xor2);

  AdjacencyMatrix sec4(Alphabet({"00", "01", "10", "11"}),
                       {{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}});
  LocalRule vec = LocalRule::from_function(sec4, 0, [](const Word& a, const Word& b) {
    return (a.syms[0] ^ b.syms[0]);
  });
  CHECK(rule_from_json(rule_to_json(vec)) == vec);

  // width-1 rule round trip
  LocalRule w1 = LocalRule::from_function(
      AdjacencyMatrix::full_shift(2), 1,
      [](const Word& a, const Word& b) { return (a.syms[1] + b.syms[0]) % 2; });
  CHECK(rule_from_json(rule_to_json(w1)) == w1);
}

TEST_CASE("rule parsing rejects bad tables") {
  nlohmann::json j = rule_to_json(make_bernoulli_rule(2));
  nlohmann::json missing = j;
  missing["table"].erase(3);
  CHECK_THROWS_AS(rule_from_json(missing), InputError);
  nlohmann::json dup = j;
  dup["table"][1] = dup["table"][0];
  CHECK_THROWS_AS(rule_from_json(dup), InputError);
  nlohmann::json bad_sym = j;
  bad_sym["table"][0]["out"] = "9";
  CHECK_THROWS_AS(rule_from_json(bad_sym), InputError);
}

TEST_CASE("config round trip") {
  IndependenceConfig cfg = IndependenceConfig::from_cells(3, 4, {{0, 1}, {2, 3}, {1, 1}});
  IndependenceConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.size_f == 3);
  CHECK(back.size_fp == 4);
  CHECK(back.cells() == cfg.cells());
  CHECK(config_to_json(back).dump() == config_to_json(cfg).dump());
}
