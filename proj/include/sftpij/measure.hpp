#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sftpij/perron.hpp"
#include "sftpij/words.hpp"

namespace sftpij {

/// Maximal-entropy (Parry) Markov measure of an adjacency matrix.
/// stationary[a] = left[a]*right[a]; transition P_{ab} = M_{ab} r_b/(n r_a).
/// Exact rationals when the Perron value is an integer, floating point
/// otherwise (exact() distinguishes the two).
class MarkovMeasure {
 public:
  /// Parry measure from Perron data (matrix must be the one perron() saw).
  MarkovMeasure(AdjacencyMatrix matrix, PerronData perron);

  /// Equal-mass maximal-entropy measure of a uniform matrix (left = 1/|A|,
  /// right = 1). Works for reducible uniform matrices too, where it is the
  /// uniform mixture of the per-component Parry measures.
  static MarkovMeasure uniform_measure(const AdjacencyMatrix& matrix);

  const AdjacencyMatrix& matrix() const { return matrix_; }
  const PerronData& perron() const { return perron_; }
  bool exact() const { return perron_.integer; }

  const std::vector<Rational>& stationary() const;
  const std::vector<std::vector<Rational>>& transition() const;
  const std::vector<double>& stationary_f() const { return stationary_f_; }
  const std::vector<std::vector<double>>& transition_f() const { return transition_f_; }

 private:
  AdjacencyMatrix matrix_;
  PerronData perron_;
  std::vector<Rational> stationary_;
  std::vector<std::vector<Rational>> transition_;
  std::vector<double> stationary_f_;
  std::vector<std::vector<double>> transition_f_;
};

/// Mass of one cylinder. Disallowed words carry exact zero and the flag,
/// not an error, so joint-distribution sums stay uniform. In exact mode
/// `value` is the exact mass; otherwise only `approx` is meaningful and
/// `error_bound` bounds |approx - true|.
struct CylinderMass {
  bool allowed = false;
  bool exact = false;
  Rational value;  // exact mass, or 0 in float mode
  double approx = 0.0;
  double error_bound = 0.0;
};

CylinderMass cylinder_probability(const MarkovMeasure& mu, const Word& w);

/// h = log(beta), plus finite-length estimates (1/len) log |L_len| for
/// convergence display.
struct EntropyReport {
  double beta;
  double log_beta;
  bool beta_integer;
  std::vector<std::pair<int, double>> estimates;  // (len, estimate)
};

EntropyReport entropy(const MarkovMeasure& mu, int len_max = 12);

/// Smallest K with mu(B) <= K mu(C) for all same-length cylinder pairs.
/// For the Parry measure this is the endpoint ratio
/// max(l_a r_b) / min(l_a r_b), independent of the length; the per-length
/// sweep up to len_max is an empirical cross-check of that stabilization.
struct QuasiUniformityReport {
  bool exact = false;
  Rational k_exact;          // exact mode only
  double k_approx = 0.0;     // always
  std::vector<std::pair<int, double>> per_length_ratio;
  bool stabilized = false;   // every per-length ratio <= bound (tolerance in
                             // float mode)
};

QuasiUniformityReport quasi_uniformity_constant(const MarkovMeasure& mu,
                                                int len_max);

/// Checks min over length-l cylinders >= max over length-(l+2p) cylinders
/// for every l <= len_max; a violation rules out any width-p construction
/// that forces this monotonicity.
struct MonotonicityReport {
  bool holds = true;
  int violated_length = -1;   // l of the first violation
  std::string witness;        // endpoint data of the violating pair
};

MonotonicityReport check_cylinder_monotonicity(const MarkovMeasure& mu, int p,
                                               int len_max);

}  // namespace sftpij
