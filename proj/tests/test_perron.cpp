#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sftpij/perron.hpp"

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

// l M = beta l and M r = beta r, exactly.
void check_exact_eigen(const AdjacencyMatrix& m, const PerronData& pd) {
  REQUIRE(pd.integer);
  Rational beta(pd.integer_value);
  for (int j = 0; j < m.size(); ++j) {
    Rational lhs = 0;
    for (int i = 0; i < m.size(); ++i)
      lhs += pd.left[static_cast<size_t>(i)] * m.entry(i, j);
    CHECK(lhs == beta * pd.left[static_cast<size_t>(j)]);
  }
  for (int i = 0; i < m.size(); ++i) {
    Rational lhs = 0;
    for (int j = 0; j < m.size(); ++j)
      lhs += Rational(m.entry(i, j)) * pd.right[static_cast<size_t>(j)];
    CHECK(lhs == beta * pd.right[static_cast<size_t>(i)]);
  }
  Rational dot = 0;
  for (int i = 0; i < m.size(); ++i)
    dot += pd.left[static_cast<size_t>(i)] * pd.right[static_cast<size_t>(i)];
  CHECK(dot == 1);
  CHECK(pd.right[0] == 1);
  for (int i = 0; i < m.size(); ++i) {
    CHECK(pd.left[static_cast<size_t>(i)] > 0);
    CHECK(pd.right[static_cast<size_t>(i)] > 0);
  }
}

}  // namespace

TEST_CASE("full 2-shift: exact integer 2 with uniform eigenvectors") {
  AdjacencyMatrix m = AdjacencyMatrix::full_shift(2);
  PerronData pd = perron(m);
  REQUIRE(pd.integer);
  CHECK(pd.integer_value == 2);
  check_exact_eigen(m, pd);
  // symmetry forces l_i r_i = 1/2 each
  for (int i = 0; i < 2; ++i)
    CHECK(pd.left[static_cast<size_t>(i)] * pd.right[static_cast<size_t>(i)] == Rational(1, 2));
}

TEST_CASE("triangle: exact integer 2") {
  PerronData pd = perron(triangle());
  REQUIRE(pd.integer);
  CHECK(pd.integer_value == 2);
  check_exact_eigen(triangle(), pd);
}

TEST_CASE("directed cycle: exact integer 1") {
  PerronData pd = perron(AdjacencyMatrix::cycle(3));
  REQUIRE(pd.integer);
  CHECK(pd.integer_value == 1);
  check_exact_eigen(AdjacencyMatrix::cycle(3), pd);
}

TEST_CASE("sqrt2 matrix: certified bracket around sqrt(2)") {
  PerronData pd = perron(sqrt2_matrix());
  REQUIRE_FALSE(pd.integer);
  CHECK(pd.lo * pd.lo <= 2);
  CHECK(pd.hi * pd.hi >= 2);
  CHECK(pd.hi - pd.lo <= Rational(1, BigInt("1000000000")));
  CHECK(pd.annihilator.to_string() == "X^2 - 2");
  // float eigenvectors: residual of (M - beta I) r below 1e-12
  double beta = pd.value_approx();
  CHECK(beta == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  for (int i = 0; i < 4; ++i) {
    double acc = 0;
    for (int j = 0; j < 4; ++j)
      acc += sqrt2_matrix().entry(i, j) * pd.right_f[static_cast<size_t>(j)];
    CHECK(std::abs(acc - beta * pd.right_f[static_cast<size_t>(i)]) < 1e-12);
  }
}

TEST_CASE("golden mean: bracket around the golden ratio") {
  PerronData pd = perron(golden_mean());
  REQUIRE_FALSE(pd.integer);
  CHECK(pd.annihilator.to_string() == "X^2 - X - 1");
  double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(to_double(pd.lo) <= phi);
  CHECK(to_double(pd.hi) >= phi);
  CHECK(pd.right_f[0] == doctest::Approx(1.0));
  // r = (phi, 1) normalized to r0 = 1 gives r1 = 1/phi = phi - 1
  CHECK(pd.right_f[1] == doctest::Approx(phi - 1).epsilon(1e-12));
}

TEST_CASE("reducible input is rejected") {
  AdjacencyMatrix block(Alphabet({"a", "b"}), {{1, 0}, {0, 1}});
  CHECK_THROWS_AS(perron(block), InputError);
}

TEST_CASE("positive_eigenvector rejects non-Perron eigenvalues") {
  // triangle has eigenvalue -1, but no positive eigenvector for it
  CHECK_FALSE(positive_eigenvector(triangle(), BigInt(-1), false).has_value());
  CHECK(positive_eigenvector(triangle(), BigInt(2), false).has_value());
  CHECK_FALSE(positive_eigenvector(triangle(), BigInt(3), false).has_value());
}
