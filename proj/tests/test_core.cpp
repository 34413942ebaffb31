#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "sftpij/json_io.hpp"
#include "sftpij/words.hpp"

using namespace sftpij;

namespace {

AdjacencyMatrix triangle() {
  return AdjacencyMatrix(Alphabet({"0", "1", "2"}),
                         {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

AdjacencyMatrix golden_mean() {
  return AdjacencyMatrix(Alphabet({"0", "1"}), {{1, 1}, {1, 0}});
}

AdjacencyMatrix sqrt2_matrix() {
  return AdjacencyMatrix(
      Alphabet({"0", "1", "2", "3"}),
      {{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}, {1, 1, 0, 0}});
}

// Random essential matrices for property checks: every row/column gets at
// least one 1 by seeding a permutation, then extra edges are sprinkled.
AdjacencyMatrix random_matrix(std::mt19937& rng, int n) {
  std::vector<std::vector<int>> e(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)][static_cast<size_t>(perm[static_cast<size_t>(i)])] = 1;
  std::bernoulli_distribution extra(0.4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (extra(rng)) e[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
  std::vector<std::string> syms;
  for (int i = 0; i < n; ++i) syms.push_back(std::to_string(i));
  return AdjacencyMatrix(Alphabet(std::move(syms)), std::move(e));
}

}  // namespace

TEST_CASE("parse_matrix accepts the interchange schema") {
  AdjacencyMatrix m = parse_matrix(R"({"alphabet":["0","1"],"matrix":[[1,1],[1,1]]})");
  CHECK(m.size() == 2);
  CHECK(m.entry(0, 1) == 1);
  CHECK(parse_matrix(R"({"alphabet":["0","1","2"],"matrix":[[0,1,1],[1,0,1],[1,1,0]]})")
            .entries() == triangle().entries());
}

TEST_CASE("parse_matrix rejects invalid input") {
  CHECK_THROWS_AS(parse_matrix(R"({"alphabet":["0","1"],"matrix":[[1,1]]})"), InputError);
  CHECK_THROWS_AS(parse_matrix(R"({"alphabet":["0","1"],"matrix":[[1,2],[1,1]]})"), InputError);
  CHECK_THROWS_AS(parse_matrix(R"({"alphabet":["0","1"],"matrix":[[0,0],[1,1]]})"), InputError);
  CHECK_THROWS_AS(parse_matrix(R"({"alphabet":["0","1"],"matrix":[[1,0],[1,0]]})"), InputError);
  CHECK_THROWS_AS(parse_matrix(R"({"alphabet":["0","0"],"matrix":[[1,1],[1,1]]})"), InputError);
  CHECK_THROWS_AS(parse_matrix("not json"), InputError);
  CHECK_THROWS_AS(parse_matrix(R"({"alphabet":["0"]})"), InputError);
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(AdjacencyMatrix::full_shift(2)));
  CHECK(is_irreducible(triangle()));
  // block diagonal of two full 1-shifts
  AdjacencyMatrix block(Alphabet({"a", "b"}), {{1, 0}, {0, 1}});
  CHECK_FALSE(is_irreducible(block));
}

TEST_CASE("irreducibility agrees with the reachability-closure oracle") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    AdjacencyMatrix m = random_matrix(rng, 2 + trial % 5);
    CHECK(is_irreducible(m) == oracle::strongly_connected_bfs(m));
  }
}

TEST_CASE("period") {
  // triangle: cycle lengths 2 and 3 exist, gcd 1
  auto lens = oracle::cycle_lengths(triangle(), 2 * 3);
  CHECK(lens.count(2) == 1);
  CHECK(lens.count(3) == 1);
  CHECK(period(triangle()) == 1);

  for (int n : {2, 3, 5}) CHECK(period(AdjacencyMatrix::cycle(n)) == n);

  CHECK(period(sqrt2_matrix()) == 2);
  // brute force: every realized cycle length is even
  for (int len : oracle::cycle_lengths(sqrt2_matrix(), 8)) CHECK(len % 2 == 0);

  AdjacencyMatrix block(Alphabet({"a", "b"}), {{1, 0}, {0, 1}});
  CHECK_THROWS_AS(period(block), InputError);
}

TEST_CASE("period divides every brute-forced cycle length") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    AdjacencyMatrix m = random_matrix(rng, 2 + trial % 5);
    if (!is_irreducible(m)) continue;
    int p = period(m);
    for (int len : oracle::cycle_lengths(m, 2 * m.size())) CHECK(len % p == 0);
  }
}

TEST_CASE("matrix_power_entry") {
  AdjacencyMatrix full2 = AdjacencyMatrix::full_shift(2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(matrix_power_entry(full2, 3, a, b) == 4);
  CHECK(matrix_power_entry(triangle(), 2, 0, 0) == 2);  // 0->1->0 and 0->2->0
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(matrix_power_entry(triangle(), 0, a, b) == (a == b ? 1 : 0));
}

TEST_CASE("language") {
  AdjacencyMatrix full2 = AdjacencyMatrix::full_shift(2);
  CHECK(language(full2, 3).size() == 8);

  auto tri2 = language(triangle(), 2);
  CHECK(tri2.size() == 6);
  for (const Word& w : tri2) CHECK(w.syms[0] != w.syms[1]);

  CHECK(language(golden_mean(), 3).size() == 5);  // Fibonacci F_5

  CHECK_THROWS_AS(language(full2, 30), BudgetError);
}

TEST_CASE("language size equals the power-sum formula and the brute force") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    AdjacencyMatrix m = random_matrix(rng, 2 + trial % 4);
    for (int len = 1; len <= 5; ++len) {
      auto words = language(m, len);
      BigInt by_powers = 0;
      for (int a = 0; a < m.size(); ++a)
        for (int b = 0; b < m.size(); ++b)
          by_powers += matrix_power_entry(m, len - 1, a, b);
      CHECK(BigInt(words.size()) == by_powers);
      auto brute = oracle::enumerate_words(m, len);
      REQUIRE(words.size() == brute.size());
      for (size_t i = 0; i < words.size(); ++i) CHECK(words[i].syms == brute[i]);
    }
  }
}

TEST_CASE("word indexer ranking is the inverse of unranking") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    AdjacencyMatrix m = random_matrix(rng, 2 + trial % 4);
    WordIndexer idx(m, 4, 1000000);
    for (std::int64_t i = 0; i < idx.size(); ++i) {
      Word w = idx.word_at(i);
      CHECK(idx.index_of(w.syms) == i);
    }
    CHECK(idx.index_of({0, 0, 0}) == -1);  // wrong length
  }
}

TEST_CASE("char_poly on the gallery matrices") {
  CHECK(char_poly(AdjacencyMatrix::full_shift(2)).to_string() == "X^2 - 2*X");

  IntPolynomial tri = char_poly(triangle());
  CHECK(tri.to_string() == "X^3 - 3*X - 2");
  IntPolynomial factored = IntPolynomial({BigInt(-2), BigInt(1)}) *
                           IntPolynomial({BigInt(1), BigInt(1)}) *
                           IntPolynomial({BigInt(1), BigInt(1)});
  CHECK(tri == factored);

  IntPolynomial s2 = char_poly(sqrt2_matrix());
  CHECK(s2.degree() == 4);
  // largest real root is sqrt(2): no integer root at or above it, square = 2
  auto [lo, hi] = s2.bracket_largest_real_root(Rational(1), Rational(5), Rational(1, 1000000));
  CHECK(lo * lo <= 2);
  CHECK(hi * hi >= 2);
}

TEST_CASE("char_poly matches cofactor expansion at integer points") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    AdjacencyMatrix m = random_matrix(rng, 2 + trial % 4);  // sizes 2..5
    IntPolynomial cp = char_poly(m);
    for (int x = -6; x <= 6; ++x)
      CHECK(cp.eval(BigInt(x)) == oracle::char_poly_at(m, BigInt(x)));
  }
}

TEST_CASE("is_uniform") {
  for (int n : {1, 2, 3, 5}) CHECK(is_uniform(AdjacencyMatrix::full_shift(n)) == n);
  CHECK(is_uniform(triangle()) == 2);
  CHECK_FALSE(is_uniform(golden_mean()).has_value());
}

TEST_CASE("is_zero_entropy") {
  for (int n : {2, 3, 4}) CHECK(is_zero_entropy(AdjacencyMatrix::cycle(n)));
  CHECK_FALSE(is_zero_entropy(AdjacencyMatrix::full_shift(2)));
  CHECK_FALSE(is_zero_entropy(triangle()));
  AdjacencyMatrix block(Alphabet({"a", "b"}), {{1, 0}, {0, 1}});
  CHECK_THROWS_AS(is_zero_entropy(block), InputError);
}

TEST_CASE("word string round trip") {
  Alphabet single({"0", "1", "2"});
  Word w{{2, 0, 1}, 0};
  CHECK(word_to_string(single, w) == "201");
  CHECK(word_from_string(single, "201").syms == w.syms);

  Alphabet multi({"00", "01", "10", "11"});
  Word v{{3, 0}, 0};
  CHECK(word_to_string(multi, v) == "11,00");
  CHECK(word_from_string(multi, "11,00").syms == v.syms);
  CHECK_THROWS_AS(word_from_string(single, "3"), InputError);
}
