#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sftpij/json_io.hpp"

using namespace sftpij;

namespace {

AdjacencyMatrix triangle() {
  return AdjacencyMatrix(Alphabet({"0", "1", "2"}),
                         {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

AdjacencyMatrix constant_first_matrix() {
  return AdjacencyMatrix(
      Alphabet({"00", "01", "10", "11"}),
      {{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}});
}

MarkovMeasure parry(const AdjacencyMatrix& m) { return MarkovMeasure(m, perron(m)); }

LocalRule projection_rule() {
  return LocalRule::from_function(AdjacencyMatrix::full_shift(2), 0,
                                  [](const Word& a, const Word&) { return a.syms[0]; });
}

LocalRule constant_rule() {
  return LocalRule::from_function(AdjacencyMatrix::full_shift(2), 0,
                                  [](const Word&, const Word&) { return 0; });
}

// Output = u[0]+u[1]+v[0]+v[1] on window positions {0,1}, embedded at
// symmetric width 1 (position -1 ignored). Pairwise independent but the
// first coordinate is not recoverable from the other two.
LocalRule width_one_sum_rule() {
  return LocalRule::from_function(AdjacencyMatrix::full_shift(2), 1,
                                  [](const Word& u, const Word& v) {
                                    return (u.syms[1] + u.syms[2] + v.syms[1] + v.syms[2]) % 2;
                                  });
}

LocalRule vector_xor_rule() {
  return LocalRule::from_function(constant_first_matrix(), 0, [](const Word& a, const Word& b) {
    int ah = a.syms[0] >> 1, al = a.syms[0] & 1;
    int bh = b.syms[0] >> 1, bl = b.syms[0] & 1;
    return ((ah + bh) % 2) * 2 + (al + bl) % 2;
  });
}

void check_all_zero_devs(const JoiningVerdict& v) {
  for (const auto& d : v.per_depth) {
    CHECK(d.marginal_total == 1);
    CHECK(d.marginal_dev == 0);
    CHECK(d.indep_x_dev == 0);
    CHECK(d.indep_xp_dev == 0);
  }
}

}  // namespace

TEST_CASE("xor rule on the full 2-shift verifies to depth 6 with zero deviation") {
  MarkovMeasure mu = parry(AdjacencyMatrix::full_shift(2));
  JoiningVerdict v = verify_pij(mu, make_bernoulli_rule(2), 6);
  CHECK(v.verified);
  CHECK(v.summary() == "verified-up-to-6");
  REQUIRE(v.per_depth.size() == 6);
  check_all_zero_devs(v);
}

TEST_CASE("mod-n addition verifies on the full 3-shift") {
  MarkovMeasure mu = parry(AdjacencyMatrix::full_shift(3));
  JoiningVerdict v = verify_pij(mu, make_bernoulli_rule(3), 4);
  CHECK(v.verified);
  check_all_zero_devs(v);
}

TEST_CASE("periodic rule verifies on the n-cycle") {
  for (int n : {3, 5}) {
    MarkovMeasure mu = parry(AdjacencyMatrix::cycle(n));
    JoiningVerdict v = verify_pij(mu, make_periodic_rule(n), 6);
    CHECK(v.verified);
    check_all_zero_devs(v);
  }
}

TEST_CASE("projection rule is refuted at depth 1 with the exact witness") {
  MarkovMeasure mu = parry(AdjacencyMatrix::full_shift(2));
  JoiningVerdict v = verify_pij(mu, projection_rule(), 1);
  CHECK_FALSE(v.verified);
  CHECK(v.refuted_at == 1);
  CHECK(v.summary() == "refuted-at-1");
  CHECK(v.witness.find("1/2") != std::string::npos);
  CHECK(v.witness.find("1/4") != std::string::npos);
}

TEST_CASE("product of xor and the 3-periodic rule verifies at depth 4") {
  LocalRule prod = product_rule(make_bernoulli_rule(2), make_periodic_rule(3));
  MarkovMeasure mu = parry(prod.matrix());
  JoiningVerdict v = verify_pij(mu, prod, 4);
  CHECK(v.verified);
  check_all_zero_devs(v);
}

TEST_CASE("reducible constant-first example verifies with the uniform measure") {
  MarkovMeasure mu = MarkovMeasure::uniform_measure(constant_first_matrix());
  JoiningVerdict v = verify_pij(mu, vector_xor_rule(), 4);
  CHECK(v.verified);
  check_all_zero_devs(v);
}

TEST_CASE("width-1 asymmetric sum rule is pairwise independent") {
  MarkovMeasure mu = parry(AdjacencyMatrix::full_shift(2));
  JoiningVerdict v = verify_pij(mu, width_one_sum_rule(), 4);
  CHECK(v.verified);
  check_all_zero_devs(v);
}

TEST_CASE("both accumulator engines agree") {
  MarkovMeasure mu = parry(AdjacencyMatrix::full_shift(2));
  JoiningVerdict fast = verify_pij(mu, make_bernoulli_rule(2), 3);
  JoiningVerdict fast_proj = verify_pij(mu, projection_rule(), 2);
  BigInt saved = detail::accumulator_limit;
  detail::accumulator_limit = 1;  // force the BigInt engine
  JoiningVerdict big = verify_pij(mu, make_bernoulli_rule(2), 3);
  JoiningVerdict big_proj = verify_pij(mu, projection_rule(), 2);
  detail::accumulator_limit = saved;
  CHECK(verdict_to_json(fast).dump() == verdict_to_json(big).dump());
  CHECK(verdict_to_json(fast_proj).dump() == verdict_to_json(big_proj).dump());
}

TEST_CASE("output distribution marginalizes consistently and sums to 1") {
  MarkovMeasure mu = parry(triangle());
  // No verified rule exists on the triangle; the pushforward distribution
  // itself is still well defined for any rule, e.g. a Latin-square table.
  LocalRule latin = LocalRule::from_function(triangle(), 0, [](const Word& a, const Word& b) {
    return (a.syms[0] + b.syms[0]) % 3;
  });
  auto d3 = output_distribution(mu, latin, 3);
  auto d2 = output_distribution(mu, latin, 2);
  Rational total = 0;
  for (const auto& [w, mass] : d3) total += mass;
  CHECK(total == 1);
  for (const auto& [w2, mass2] : d2) {
    Rational sum = 0;
    for (int b = 0; b < 3; ++b) {
      Word ext = w2;
      ext.syms.push_back(b);
      auto it = d3.find(ext);
      if (it != d3.end()) sum += it->second;
    }
    CHECK(sum == mass2);
  }
}

TEST_CASE("preimage counts") {
  LocalRule xor2 = make_bernoulli_rule(2);
  for (int k : {0, 1, 2, 3}) {
    PreimageReport r = preimage_count_check(xor2, k);
    CHECK(r.pass);
    CHECK(r.expected == 1);  // n^{2p} = 2^0
  }

  PreimageReport proj = preimage_count_check(projection_rule(), 0);
  CHECK_FALSE(proj.pass);
  CHECK(proj.witness.find("2 preimages, expected 1") != std::string::npos);

  PreimageReport per3 = preimage_count_check(make_periodic_rule(3), 2);
  CHECK(per3.pass);
  CHECK(per3.expected == 1);

  // width-1 rule: n^{2p} = 4
  PreimageReport w1 = preimage_count_check(width_one_sum_rule(), 1);
  CHECK(w1.pass);
  CHECK(w1.expected == 4);

  CHECK_THROWS_AS(preimage_count_check(
                      LocalRule::from_function(
                          AdjacencyMatrix(Alphabet({"0", "1"}), {{1, 1}, {1, 0}}), 0,
                          [](const Word&, const Word&) { return 0; }),
                      0),
                  InputError);
}

TEST_CASE("preimage balance at k-1 matches the depth-k independence checks") {
  struct Case {
    LocalRule rule;
    MarkovMeasure mu;
  };
  std::vector<Case> cases;
  cases.push_back({make_bernoulli_rule(2), parry(AdjacencyMatrix::full_shift(2))});
  cases.push_back({make_bernoulli_rule(3), parry(AdjacencyMatrix::full_shift(3))});
  cases.push_back({make_periodic_rule(3), parry(AdjacencyMatrix::cycle(3))});
  cases.push_back({make_periodic_rule(5), parry(AdjacencyMatrix::cycle(5))});
  cases.push_back({product_rule(make_bernoulli_rule(2), make_bernoulli_rule(2)),
                   parry(product_matrix(AdjacencyMatrix::full_shift(2),
                                        AdjacencyMatrix::full_shift(2)))});
  cases.push_back({vector_xor_rule(), MarkovMeasure::uniform_measure(constant_first_matrix())});
  cases.push_back({width_one_sum_rule(), parry(AdjacencyMatrix::full_shift(2))});
  cases.push_back({projection_rule(), parry(AdjacencyMatrix::full_shift(2))});
  cases.push_back({constant_rule(), parry(AdjacencyMatrix::full_shift(2))});

  for (const auto& c : cases) {
    JoiningVerdict v = verify_pij(c.mu, c.rule, 4);
    REQUIRE(v.per_depth.size() == 4);
    for (int depth = 1; depth <= 4; ++depth) {
      bool indep = v.per_depth[static_cast<size_t>(depth - 1)].indep_x_ok &&
                   v.per_depth[static_cast<size_t>(depth - 1)].indep_xp_ok;
      bool balance = preimage_count_check(c.rule, depth - 1).pass;
      CHECK(indep == balance);
    }
  }
}

TEST_CASE("search on the full 2-shift finds exactly xor and xnor") {
  AdjacencyMatrix full2 = AdjacencyMatrix::full_shift(2);
  std::vector<LocalRule> found = search_rules(full2, 0, 4);
  REQUIRE(found.size() == 2);
  CHECK(found[0].table() == std::vector<int>{0, 1, 1, 0});  // xor
  CHECK(found[1].table() == std::vector<int>{1, 0, 0, 1});  // xnor

  // unpruned brute force over all 16 tables, filtered by the verifier
  MarkovMeasure mu = parry(full2);
  std::set<std::vector<int>> brute;
  for (int bits = 0; bits < 16; ++bits) {
    std::vector<int> table{bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1};
    LocalRule candidate(full2, 0, table);
    if (verify_pij(mu, candidate, 4).verified) brute.insert(table);
  }
  std::set<std::vector<int>> searched;
  for (const auto& r : found) searched.insert(r.table());
  CHECK(searched == brute);
}

TEST_CASE("search on the triangle returns nothing") {
  CHECK(search_rules(triangle(), 0, 3).empty());
}

TEST_CASE("pruning never removes a rule the full filter keeps") {
  AdjacencyMatrix full2 = AdjacencyMatrix::full_shift(2);
  std::vector<LocalRule> pruned = search_rules(full2, 0, 1, 10000000, true);
  std::vector<LocalRule> unpruned = search_rules(full2, 0, 1, 10000000, false);
  REQUIRE(pruned.size() == unpruned.size());
  for (size_t i = 0; i < pruned.size(); ++i)
    CHECK(pruned[i].table() == unpruned[i].table());
}

TEST_CASE("search results re-verify independently") {
  AdjacencyMatrix full2 = AdjacencyMatrix::full_shift(2);
  MarkovMeasure mu = parry(full2);
  for (const auto& r : search_rules(full2, 0, 4))
    CHECK(verify_pij(mu, r, 4).verified);
}

TEST_CASE("pij-star half-widths") {
  MarkovMeasure mu2 = parry(AdjacencyMatrix::full_shift(2));
  CHECK(check_pij_star(mu2, make_bernoulli_rule(2), 2) == 0);

  MarkovMeasure mu3 = parry(AdjacencyMatrix::cycle(3));
  CHECK(check_pij_star(mu3, make_periodic_rule(3), 2) == 0);

  // the width-1 sum rule satisfies pairwise independence but hides the
  // first coordinate
  CHECK_FALSE(check_pij_star(mu2, width_one_sum_rule(), 1).has_value());

  MarkovMeasure mu4 = MarkovMeasure::uniform_measure(constant_first_matrix());
  CHECK(check_pij_star(mu4, vector_xor_rule(), 2) == 0);

  // precondition: a refuted rule is rejected
  CHECK_THROWS_AS(check_pij_star(mu2, projection_rule(), 1), InputError);
}

TEST_CASE("engine agrees with the brute-force rational pushforward oracle") {
  struct Case {
    LocalRule rule;
    MarkovMeasure mu;
  };
  AdjacencyMatrix full2 = AdjacencyMatrix::full_shift(2);
  std::vector<Case> cases;
  cases.push_back({make_bernoulli_rule(2), parry(full2)});
  cases.push_back({make_periodic_rule(3), parry(AdjacencyMatrix::cycle(3))});
  cases.push_back({projection_rule(), parry(full2)});
  cases.push_back({constant_rule(), parry(full2)});
  cases.push_back({width_one_sum_rule(), parry(full2)});
  cases.push_back({vector_xor_rule(), MarkovMeasure::uniform_measure(constant_first_matrix())});
  // a Latin-square table on the triangle puts mass on disallowed outputs
  cases.push_back({LocalRule::from_function(triangle(), 0,
                                            [](const Word& a, const Word& b) {
                                              return (a.syms[0] + b.syms[0]) % 3;
                                            }),
                   parry(triangle())});

  for (const auto& c : cases) {
    JoiningVerdict v = verify_pij(c.mu, c.rule, 3);
    for (int depth = 1; depth <= 3; ++depth) {
      oracle::PushforwardCheck ref = oracle::brute_pushforward_check(c.mu, c.rule, depth);
      const DepthCheck& dc = v.per_depth[static_cast<size_t>(depth - 1)];
      CHECK(dc.marginal_ok == ref.marginal_ok);
      CHECK(dc.indep_x_ok == ref.x_ok);
      CHECK(dc.indep_xp_ok == ref.xp_ok);
      CHECK(dc.marginal_dev == ref.marginal_dev);
      CHECK(dc.indep_x_dev == ref.x_dev);
      CHECK(dc.indep_xp_dev == ref.xp_dev);
    }
  }
}

TEST_CASE("search budget guards the table size") {
  CHECK_THROWS_AS(search_rules(AdjacencyMatrix::full_shift(2), 0, 1, 2), BudgetError);
}

TEST_CASE("verify errors") {
  MarkovMeasure mu = parry(AdjacencyMatrix::full_shift(2));
  // rule on a different matrix
  CHECK_THROWS_AS(verify_pij(mu, make_bernoulli_rule(3), 2), InputError);
  // budget too small for depth 6
  CHECK_THROWS_AS(verify_pij(mu, make_bernoulli_rule(2), 6, 100), BudgetError);
  // irrational Perron value: exactness unavailable
  AdjacencyMatrix gm(Alphabet({"0", "1"}), {{1, 1}, {1, 0}});
  MarkovMeasure gmu(gm, perron(gm));
  LocalRule gm_rule = LocalRule::from_function(gm, 0, [](const Word&, const Word&) { return 0; });
  CHECK_THROWS_AS(verify_pij(gmu, gm_rule, 2), InputError);
}
