#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sftpij/adjacency.hpp"

namespace sftpij {

/// Finite block of symbols (stored as alphabet indices) together with the
/// position of its first coordinate. The measure of a cylinder does not
/// depend on the offset (stationarity); it is carried for display.
struct Word {
  std::vector<int> syms;
  int offset = 0;

  int length() const { return static_cast<int>(syms.size()); }
  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;
};

/// True iff every adjacent pair of w is an edge of m.
bool word_allowed(const AdjacencyMatrix& m, const Word& w);

/// Renders a word using the alphabet: plain concatenation when every symbol
/// is a single character, comma-joined otherwise.
std::string word_to_string(const Alphabet& a, const Word& w);

/// Inverse of word_to_string; throws InputError on unknown symbols.
Word word_from_string(const Alphabet& a, const std::string& text);

/// Lexicographic ranking of the allowed words of one fixed length.
/// word_at / index_of are mutually inverse; indices run 0 .. size()-1 in
/// lexicographic symbol order. Construction refuses languages larger than
/// the budget.
class WordIndexer {
 public:
  WordIndexer(const AdjacencyMatrix& m, int length, std::int64_t budget);

  int length() const { return length_; }
  std::int64_t size() const { return total_; }
  Word word_at(std::int64_t index) const;
  /// -1 when the block is not an allowed word.
  std::int64_t index_of(const std::vector<int>& syms) const;

  /// Incremental ranking: feed symbols left to right. rank becomes the
  /// word index when all length() symbols were accepted; dead marks a
  /// disallowed block.
  struct RankState {
    std::int64_t rank = 0;
    int prev = -1;
    int pos = 0;
    bool dead = false;
  };
  void step(RankState& st, int sym) const;

 private:
  AdjacencyMatrix matrix_;
  int length_;
  std::int64_t total_;
  // suffix_[t][a] = number of allowed words of length t starting at a.
  std::vector<std::vector<std::int64_t>> suffix_;
  // cum_first_[s] = words starting with a symbol < s.
  std::vector<std::int64_t> cum_first_;
  // cum_[pos][prev][s] = words sharing a fixed prefix ending at prev whose
  // next symbol is an allowed b < s; pos is the position being filled.
  std::vector<std::vector<std::vector<std::int64_t>>> cum_;
};

/// All allowed words of the given length, in lexicographic order.
/// Throws BudgetError when the language exceeds the budget (default 10^6).
std::vector<Word> language(const AdjacencyMatrix& m, int length,
                           std::int64_t budget = 1000000);

/// |L_length| as an exact integer (no enumeration, no budget).
BigInt language_size(const AdjacencyMatrix& m, int length);

}  // namespace sftpij
