#include "sftpij/words.hpp"

#include <sstream>

namespace sftpij {

bool word_allowed(const AdjacencyMatrix& m, const Word& w) {
  for (int s : w.syms)
    if (s < 0 || s >= m.size()) return false;
  for (size_t i = 0; i + 1 < w.syms.size(); ++i)
    if (!m.entry(w.syms[i], w.syms[i + 1])) return false;
  return true;
}

std::string word_to_string(const Alphabet& a, const Word& w) {
  std::ostringstream os;
  bool concat = a.single_char();
  for (size_t i = 0; i < w.syms.size(); ++i) {
    if (i > 0 && !concat) os << ",";
    os << a.name(w.syms[i]);
  }
  return os.str();
}

Word word_from_string(const Alphabet& a, const std::string& text) {
  Word w;
  if (a.single_char()) {
    for (char c : text) {
      int idx = a.index_of(std::string(1, c));
      if (idx < 0) throw InputError("unknown symbol '" + std::string(1, c) + "'");
      w.syms.push_back(idx);
    }
  } else {
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      int idx = a.index_of(tok);
      if (idx < 0) throw InputError("unknown symbol '" + tok + "'");
      w.syms.push_back(idx);
    }
  }
  return w;
}

WordIndexer::WordIndexer(const AdjacencyMatrix& m, int length,
                         std::int64_t budget)
    : matrix_(m), length_(length) {
  if (length < 1) throw InputError("word length must be >= 1");
  BigInt exact_total = language_size(m, length);
  if (exact_total > budget)
    throw BudgetError("language of length " + std::to_string(length) + " has " +
                      exact_total.str() + " words, budget is " +
                      std::to_string(budget));
  int n = m.size();
  suffix_.assign(static_cast<size_t>(length) + 1,
                 std::vector<std::int64_t>(static_cast<size_t>(n), 0));
  for (int a = 0; a < n; ++a) suffix_[1][static_cast<size_t>(a)] = 1;
  for (int t = 2; t <= length; ++t)
    for (int a = 0; a < n; ++a) {
      std::int64_t s = 0;
      for (int b = 0; b < n; ++b)
        if (m.entry(a, b)) s += suffix_[static_cast<size_t>(t - 1)][static_cast<size_t>(b)];
      suffix_[static_cast<size_t>(t)][static_cast<size_t>(a)] = s;
    }
  cum_first_.assign(static_cast<size_t>(n) + 1, 0);
  for (int s = 0; s < n; ++s)
    cum_first_[static_cast<size_t>(s + 1)] =
        cum_first_[static_cast<size_t>(s)] + suffix_[static_cast<size_t>(length)][static_cast<size_t>(s)];
  total_ = cum_first_[static_cast<size_t>(n)];

  cum_.assign(static_cast<size_t>(length),
              std::vector<std::vector<std::int64_t>>(
                  static_cast<size_t>(n),
                  std::vector<std::int64_t>(static_cast<size_t>(n) + 1, 0)));
  for (int pos = 1; pos < length; ++pos) {
    int remaining = length - pos;  // suffix length counting this position
    for (int prev = 0; prev < n; ++prev)
      for (int s = 0; s < n; ++s) {
        std::int64_t add =
            m.entry(prev, s) ? suffix_[static_cast<size_t>(remaining)][static_cast<size_t>(s)] : 0;
        cum_[static_cast<size_t>(pos)][static_cast<size_t>(prev)][static_cast<size_t>(s + 1)] =
            cum_[static_cast<size_t>(pos)][static_cast<size_t>(prev)][static_cast<size_t>(s)] + add;
      }
  }
}

void WordIndexer::step(RankState& st, int sym) const {
  if (st.dead) return;
  int n = matrix_.size();
  if (sym < 0 || sym >= n || st.pos >= length_) {
    st.dead = true;
    return;
  }
  if (st.pos == 0) {
    st.rank += cum_first_[static_cast<size_t>(sym)];
  } else {
    if (!matrix_.entry(st.prev, sym)) {
      st.dead = true;
      return;
    }
    st.rank += cum_[static_cast<size_t>(st.pos)][static_cast<size_t>(st.prev)][static_cast<size_t>(sym)];
  }
  st.prev = sym;
  ++st.pos;
}

Word WordIndexer::word_at(std::int64_t index) const {
  if (index < 0 || index >= total_) throw InputError("word index out of range");
  Word w;
  w.syms.reserve(static_cast<size_t>(length_));
  int n = matrix_.size();
  std::int64_t rem = index;
  for (int pos = 0; pos < length_; ++pos) {
    for (int s = 0; s < n; ++s) {
      std::int64_t block;
      if (pos == 0) {
        block = suffix_[static_cast<size_t>(length_)][static_cast<size_t>(s)];
      } else {
        int prev = w.syms.back();
        block = matrix_.entry(prev, s)
                    ? suffix_[static_cast<size_t>(length_ - pos)][static_cast<size_t>(s)]
                    : 0;
      }
      if (rem < block) {
        w.syms.push_back(s);
        break;
      }
      rem -= block;
    }
  }
  return w;
}

std::int64_t WordIndexer::index_of(const std::vector<int>& syms) const {
  if (static_cast<int>(syms.size()) != length_) return -1;
  RankState st;
  for (int s : syms) {
    step(st, s);
    if (st.dead) return -1;
  }
  return st.rank;
}

std::vector<Word> language(const AdjacencyMatrix& m, int length,
                           std::int64_t budget) {
  WordIndexer idx(m, length, budget);
  std::vector<Word> out;
  out.reserve(static_cast<size_t>(idx.size()));
  for (std::int64_t i = 0; i < idx.size(); ++i) out.push_back(idx.word_at(i));
  return out;
}

BigInt language_size(const AdjacencyMatrix& m, int length) {
  if (length < 1) throw InputError("word length must be >= 1");
  BigMatrix p = m.to_big().pow(length - 1);
  BigInt total = 0;
  for (int a = 0; a < m.size(); ++a)
    for (int b = 0; b < m.size(); ++b) total += p.at(a, b);
  return total;
}

}  // namespace sftpij
