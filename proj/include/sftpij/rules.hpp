#pragma once

#include <functional>

#include "sftpij/words.hpp"

namespace sftpij {

/// Width-p local rule: a total map from ordered pairs of allowed
/// (2p+1)-windows to alphabet symbols. The finite object encoding a
/// candidate joining of the third coordinate from the first two.
class LocalRule {
 public:
  /// table[w1 * num_windows + w2] = output symbol index, with windows
  /// numbered lexicographically (WordIndexer order).
  LocalRule(AdjacencyMatrix matrix, int width, std::vector<int> table);

  /// Builds the table by evaluating fn on every ordered pair of allowed
  /// windows.
  static LocalRule from_function(
      AdjacencyMatrix matrix, int width,
      const std::function<int(const Word&, const Word&)>& fn);

  const AdjacencyMatrix& matrix() const { return matrix_; }
  int width() const { return width_; }
  std::int64_t num_windows() const { return windows_.size(); }
  const WordIndexer& windows() const { return windows_; }
  const std::vector<int>& table() const { return table_; }

  int apply(std::int64_t w1_index, std::int64_t w2_index) const {
    return table_[static_cast<size_t>(w1_index * windows_.size() + w2_index)];
  }
  /// Symbol output for explicit windows; throws on disallowed windows.
  int apply_words(const Word& w1, const Word& w2) const;

  bool operator==(const LocalRule& o) const {
    return matrix_ == o.matrix_ && width_ == o.width_ && table_ == o.table_;
  }

 private:
  AdjacencyMatrix matrix_;
  int width_;
  WordIndexer windows_;
  std::vector<int> table_;
};

/// (a, b) -> a + b mod n on the full n-shift, width 0.
LocalRule make_bernoulli_rule(int n);

/// (a, b) -> 2a - b mod n on the directed n-cycle, width 0; n must be odd.
LocalRule make_periodic_rule(int n);

/// Coordinatewise product rule on the tensor-product matrix (alphabet
/// A1 x A2, symbols named "a|b"), width max(p1, p2).
LocalRule product_rule(const LocalRule& r1, const LocalRule& r2);

/// Tensor product of two adjacency matrices.
AdjacencyMatrix product_matrix(const AdjacencyMatrix& m1, const AdjacencyMatrix& m2);

}  // namespace sftpij
