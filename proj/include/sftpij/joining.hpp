#pragma once

#include <map>
#include <optional>

#include "sftpij/measure.hpp"
#include "sftpij/rules.hpp"

namespace sftpij {

/// Per-depth result of the exact pushforward verification. All deviations
/// are exact rationals; a passing depth has every deviation equal to zero.
struct DepthCheck {
  int depth = 0;                 // output word length k
  Rational marginal_total;       // sum of the output-word distribution
  Rational marginal_dev;         // max |lambda(xi''-word) - mu(word)|
  Rational indep_x_dev;          // max |lambda(xi-win, xi''-win) - product|
  Rational indep_xp_dev;         // same with the second coordinate
  bool marginal_ok = false;
  bool indep_x_ok = false;
  bool indep_xp_ok = false;
  std::string witness;           // first mismatch, empty when ok

  bool ok() const { return marginal_ok && indep_x_ok && indep_xp_ok; }
};

/// Verdict of verify_pij. verified means "verified-up-to-L": no finite
/// criterion is known to imply independence at every depth, so the verdict
/// never claims more than the checked depths.
struct JoiningVerdict {
  int requested_depth = 0;
  std::vector<DepthCheck> per_depth;
  bool verified = false;
  int refuted_at = -1;   // first failing depth, -1 when verified
  std::string witness;

  std::string summary() const;
};

/// Exact verification that the rule's pushforward of mu x mu is pairwise
/// independent up to the given depth: for every k <= depth it compares,
/// by exact summation over all window pairs in L_{k+2p} x L_{k+2p},
/// (a) the distribution of the output word against mu, (b) the joint
/// distribution of (xi-window, output word) at aligned positions 0..k-1
/// against the product, (c) the same for xi'. Also flags any positive-mass
/// output word that is not allowed for the matrix.
/// Requires an exact measure (integer Perron value) whose matrix equals the
/// rule's; throws BudgetError when |L_{k+2p}|^2 exceeds the budget.
JoiningVerdict verify_pij(const MarkovMeasure& mu, const LocalRule& rule,
                          int depth, std::int64_t budget = 10000000);

/// Exact distribution of the output word of the given length under the
/// pushforward (map from word to mass). Zero-mass words are omitted;
/// disallowed output words, if any carry mass, appear under their word too.
std::map<Word, Rational> output_distribution(const MarkovMeasure& mu,
                                             const LocalRule& rule, int length,
                                             std::int64_t budget = 10000000);

/// Preimage balance: for every fixed first window of length k+1+2p and
/// every allowed output word of length k+1, the number of second windows
/// mapping onto it must be exactly n^{2p} (and 0 for disallowed words);
/// checked in both roles. Requires a uniform matrix. The index k follows
/// the convention that the output word is a_0..a_k.
struct PreimageReport {
  bool pass = false;
  BigInt expected;     // n^{2p}
  std::string witness; // first mismatching (window, word, count)
};

PreimageReport preimage_count_check(const LocalRule& rule, int k,
                                    std::int64_t budget = 10000000);

/// Exhaustive width-p rule search: depth-first enumeration over tables in
/// lexicographic order. For uniform matrices, partial tables are pruned by
/// the width-0 counting balance (each table row and column must hit every
/// symbol exactly n^{2p} times, the Latin-square condition at p = 0);
/// complete tables are kept iff verify_pij passes at the given depth.
/// prune = false disables the counting prune (same results, slower), used
/// to validate pruning soundness.
std::vector<LocalRule> search_rules(const AdjacencyMatrix& m, int p, int depth,
                                    std::int64_t budget = 10000000,
                                    bool prune = true);

/// Smallest q <= q_max such that the first coordinate at position 0 is
/// determined by the (2q+1)-windows of the second and third coordinates on
/// every positive-mass configuration; nullopt when none. Re-verifies the
/// rule at depth 2q_max+1 first and throws InputError if that fails.
std::optional<int> check_pij_star(const MarkovMeasure& mu, const LocalRule& rule,
                                  int q_max, std::int64_t budget = 10000000);

namespace detail {
// Test hook: accumulators provably below this bound run on int64, above it
// on BigInt. Tests shrink it to force the BigInt engine.
extern BigInt accumulator_limit;
}  // namespace detail

}  // namespace sftpij
