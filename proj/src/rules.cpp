#include "sftpij/rules.hpp"

namespace sftpij {

namespace {
constexpr std::int64_t kWindowBudget = 1 << 20;
}

LocalRule::LocalRule(AdjacencyMatrix matrix, int width, std::vector<int> table)
    : matrix_(std::move(matrix)),
      width_(width),
      windows_(matrix_, 2 * width + 1, kWindowBudget),
      table_(std::move(table)) {
  if (width_ < 0) throw InputError("rule width must be nonnegative");
  std::int64_t w = windows_.size();
  if (static_cast<std::int64_t>(table_.size()) != w * w)
    throw InputError("rule table must have one entry per ordered window pair");
  for (int sym : table_)
    if (sym < 0 || sym >= matrix_.size())
      throw InputError("rule output symbol out of range");
}

LocalRule LocalRule::from_function(
    AdjacencyMatrix matrix, int width,
    const std::function<int(const Word&, const Word&)>& fn) {
  WordIndexer idx(matrix, 2 * width + 1, kWindowBudget);
  std::int64_t w = idx.size();
  std::vector<int> table(static_cast<size_t>(w * w));
  for (std::int64_t i = 0; i < w; ++i) {
    Word wi = idx.word_at(i);
    for (std::int64_t j = 0; j < w; ++j) {
      Word wj = idx.word_at(j);
      table[static_cast<size_t>(i * w + j)] = fn(wi, wj);
    }
  }
  return LocalRule(std::move(matrix), width, std::move(table));
}

int LocalRule::apply_words(const Word& w1, const Word& w2) const {
  std::int64_t i = windows_.index_of(w1.syms);
  std::int64_t j = windows_.index_of(w2.syms);
  if (i < 0 || j < 0) throw InputError("rule applied to a disallowed window");
  return apply(i, j);
}

LocalRule make_bernoulli_rule(int n) {
  if (n < 1) throw InputError("Bernoulli rule needs n >= 1");
  AdjacencyMatrix m = AdjacencyMatrix::full_shift(n);
  return LocalRule::from_function(std::move(m), 0, [n](const Word& a, const Word& b) {
    return (a.syms[0] + b.syms[0]) % n;
  });
}

LocalRule make_periodic_rule(int n) {
  if (n < 1) throw InputError("periodic rule needs n >= 1");
  if (n % 2 == 0) throw InputError("periodic rule needs an odd n: 2a - b mod n must stay invertible in a");
  AdjacencyMatrix m = AdjacencyMatrix::cycle(n);
  return LocalRule::from_function(std::move(m), 0, [n](const Word& a, const Word& b) {
    return ((2 * a.syms[0] - b.syms[0]) % n + n) % n;
  });
}

AdjacencyMatrix product_matrix(const AdjacencyMatrix& m1, const AdjacencyMatrix& m2) {
  int n1 = m1.size(), n2 = m2.size();
  std::vector<std::string> syms;
  syms.reserve(static_cast<size_t>(n1) * n2);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      syms.push_back(m1.alphabet().name(a) + "|" + m2.alphabet().name(b));
  std::vector<std::vector<int>> e(static_cast<size_t>(n1) * n2,
                                  std::vector<int>(static_cast<size_t>(n1) * n2, 0));
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      for (int c = 0; c < n1; ++c)
        for (int d = 0; d < n2; ++d)
          e[static_cast<size_t>(a) * n2 + b][static_cast<size_t>(c) * n2 + d] =
              m1.entry(a, c) * m2.entry(b, d);
  return AdjacencyMatrix(Alphabet(std::move(syms)), std::move(e));
}

LocalRule product_rule(const LocalRule& r1, const LocalRule& r2) {
  AdjacencyMatrix prod = product_matrix(r1.matrix(), r2.matrix());
  int n2 = r2.matrix().size();
  int p = std::max(r1.width(), r2.width());
  auto project = [&](const Word& w, int component, int target_width) {
    // Component word, then the centered (2*target_width+1)-window.
    Word out;
    int start = p - target_width;
    for (int i = 0; i < 2 * target_width + 1; ++i) {
      int sym = w.syms[static_cast<size_t>(start + i)];
      out.syms.push_back(component == 0 ? sym / n2 : sym % n2);
    }
    return out;
  };
  return LocalRule::from_function(
      std::move(prod), p, [&](const Word& w1, const Word& w2) {
        int out1 = r1.apply_words(project(w1, 0, r1.width()), project(w2, 0, r1.width()));
        int out2 = r2.apply_words(project(w1, 1, r2.width()), project(w2, 1, r2.width()));
        return out1 * n2 + out2;
      });
}

}  // namespace sftpij
