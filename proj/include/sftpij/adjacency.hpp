#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sftpij/numeric.hpp"
#include "sftpij/polynomial.hpp"

namespace sftpij {

/// Ordered finite alphabet. Symbol index <-> name is fixed at construction.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& name(int index) const { return symbols_.at(static_cast<size_t>(index)); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  /// Index of a symbol name; -1 if unknown.
  int index_of(const std::string& name) const;
  /// True when every symbol name is a single character (affects how words
  /// are rendered: plain concatenation vs. comma-joined).
  bool single_char() const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
};

/// Dense matrix over BigInt, used for exact matrix powers and the shift
/// equivalence identities. Rows x cols, not necessarily square.
class BigMatrix {
 public:
  BigMatrix() = default;
  BigMatrix(int rows, int cols);
  static BigMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  BigInt& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const BigInt& at(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  BigMatrix operator*(const BigMatrix& rhs) const;
  BigMatrix pow(int e) const;
  bool operator==(const BigMatrix&) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

/// 0-1 adjacency matrix of a vertex shift: entry (a, b) = 1 iff the
/// two-symbol word ab is allowed. Rejects inessential graphs (a row or a
/// column of zeros) at construction, so every symbol genuinely occurs.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix(Alphabet alphabet, std::vector<std::vector<int>> entries);

  const Alphabet& alphabet() const { return alphabet_; }
  int size() const { return alphabet_.size(); }
  int entry(int a, int b) const {
    return entries_[static_cast<size_t>(a)][static_cast<size_t>(b)];
  }
  const std::vector<std::vector<int>>& entries() const { return entries_; }
  BigMatrix to_big() const;

  bool operator==(const AdjacencyMatrix&) const = default;

  /// Convenience builders for common shapes.
  static AdjacencyMatrix full_shift(int n);
  /// Directed n-cycle: a -> a+1 mod n.
  static AdjacencyMatrix cycle(int n);

 private:
  Alphabet alphabet_;
  std::vector<std::vector<int>> entries_;
};

/// Parses the matrix interchange schema
/// {"alphabet": [...], "matrix": [[0|1, ...], ...]}; throws InputError on
/// any schema or validity violation.
AdjacencyMatrix parse_matrix(const std::string& json_text);

/// True iff the directed graph is strongly connected.
bool is_irreducible(const AdjacencyMatrix& m);

/// gcd of all cycle lengths (1 = aperiodic). Requires irreducibility.
int period(const AdjacencyMatrix& m);

/// (M^k)_{ab}: the number of allowed words of length k+1 starting at a and
/// ending at b. k = 0 gives identity entries.
BigInt matrix_power_entry(const AdjacencyMatrix& m, int k, int a, int b);

/// Exact characteristic polynomial det(X*I - M), computed by fraction-free
/// (Bareiss) elimination over Z[X].
IntPolynomial char_poly(const AdjacencyMatrix& m);

/// n if every row sum and every column sum equals n; nullopt otherwise.
std::optional<int> is_uniform(const AdjacencyMatrix& m);

/// True iff the Perron value is 1, i.e. the graph is a single cycle.
/// Requires irreducibility.
bool is_zero_entropy(const AdjacencyMatrix& m);

}  // namespace sftpij
