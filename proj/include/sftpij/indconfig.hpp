#pragma once

#include <optional>
#include <utility>

#include "sftpij/joining.hpp"

namespace sftpij {

/// Finite pairwise-independence configuration: sets F, F' and a subset C of
/// F x F', stored as a 0/1 membership matrix.
struct IndependenceConfig {
  int size_f = 0, size_fp = 0;
  std::vector<std::vector<int>> membership;  // size_f rows, size_fp cols

  static IndependenceConfig from_cells(int f, int fp,
                                       const std::vector<std::pair<int, int>>& cells);
  std::vector<std::pair<int, int>> cells() const;  // sorted
  IndependenceConfig transpose() const;
  IndependenceConfig complement() const;
};

/// Exact rational solution of the linear system: probability vectors m on F
/// and m' on F' under which the indicator of C is independent of each
/// coordinate, i.e. all the cross sums
///   sum_{x:(x,x0') in C} m(x)  and  sum_{x':(x0,x') in C} m'(x')
/// coincide (their common value is m x m'(C)).
struct ConfigSolution {
  std::vector<Rational> m, mp;
  Rational value;
};

/// Canonical solution: the lexicographically smallest vertex of the
/// feasible polytope under the variable order m(0..F-1), m'(0..F'-1);
/// nullopt when infeasible. Exact simplex with Bland's rule throughout.
std::optional<ConfigSolution> solve_config(const IndependenceConfig& cfg);

/// The solution-independent value m x m'(C); nullopt when infeasible.
std::optional<Rational> config_value(const IndependenceConfig& cfg);

struct UniquenessReport {
  bool feasible = false;
  int distinct_solutions = 0;
  bool all_values_equal = false;
  Rational value;
  BigInt value_denominator;      // observation for the open denominator question
  BigInt max_entry_denominator;  // largest denominator across found vertices
};

/// Probes the feasible polytope with varied exact objectives (min/max each
/// coordinate, capped by trials), collects distinct vertices and asserts
/// their values coincide exactly.
UniquenessReport verify_value_uniqueness(const IndependenceConfig& cfg, int trials);

/// Bridge from a rule to a configuration: F = F' = L_{len+2p} and
/// C = pairs of windows whose sliding output is the word c. For a verified
/// rule the cylinder-mass vectors witness feasibility and the value equals
/// mu([c]) exactly; `consistent` records whether that held.
struct BridgeResult {
  IndependenceConfig config;
  bool feasible = false;
  Rational value;
  Rational mu_c;
  bool consistent = false;
};

BridgeResult config_from_joining(const MarkovMeasure& mu, const LocalRule& rule,
                                 int len, const Word& c,
                                 std::int64_t budget = 10000000);

}  // namespace sftpij
