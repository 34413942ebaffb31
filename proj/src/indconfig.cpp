#include "sftpij/indconfig.hpp"

#include <algorithm>

namespace sftpij {

IndependenceConfig IndependenceConfig::from_cells(
    int f, int fp, const std::vector<std::pair<int, int>>& cells) {
  if (f < 1 || fp < 1) throw InputError("configuration sets must be nonempty");
  IndependenceConfig cfg;
  cfg.size_f = f;
  cfg.size_fp = fp;
  cfg.membership.assign(static_cast<size_t>(f), std::vector<int>(static_cast<size_t>(fp), 0));
  for (auto [i, j] : cells) {
    if (i < 0 || i >= f || j < 0 || j >= fp)
      throw InputError("configuration cell out of range");
    cfg.membership[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
  }
  return cfg;
}

std::vector<std::pair<int, int>> IndependenceConfig::cells() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size_f; ++i)
    for (int j = 0; j < size_fp; ++j)
      if (membership[static_cast<size_t>(i)][static_cast<size_t>(j)]) out.emplace_back(i, j);
  return out;
}

IndependenceConfig IndependenceConfig::transpose() const {
  IndependenceConfig out;
  out.size_f = size_fp;
  out.size_fp = size_f;
  out.membership.assign(static_cast<size_t>(size_fp),
                        std::vector<int>(static_cast<size_t>(size_f), 0));
  for (int i = 0; i < size_f; ++i)
    for (int j = 0; j < size_fp; ++j)
      out.membership[static_cast<size_t>(j)][static_cast<size_t>(i)] =
          membership[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return out;
}

IndependenceConfig IndependenceConfig::complement() const {
  IndependenceConfig out = *this;
  for (auto& row : out.membership)
    for (auto& v : row) v = 1 - v;
  return out;
}

namespace {

// Exact full-tableau simplex for min c.x s.t. Ax = b, x >= 0.
// Bland's rule everywhere, so the pivoting is deterministic and cannot
// cycle. Returns nullopt when infeasible; throws on an unbounded phase-2
// objective (cannot happen for the probability polytopes used here).
class ExactSimplex {
 public:
  ExactSimplex(std::vector<std::vector<Rational>> a, std::vector<Rational> b)
      : a_(std::move(a)), b_(std::move(b)) {
    rows_ = static_cast<int>(a_.size());
    cols_ = rows_ == 0 ? 0 : static_cast<int>(a_[0].size());
  }

  std::optional<std::vector<Rational>> minimize(const std::vector<Rational>& cost) {
    if (!phase1_done_) {
      if (!phase1()) return std::nullopt;
      phase1_done_ = true;
    }
    run(cost);
    std::vector<Rational> x(static_cast<size_t>(cols_), Rational(0));
    for (int i = 0; i < rows_; ++i)
      if (basis_[static_cast<size_t>(i)] < cols_)
        x[static_cast<size_t>(basis_[static_cast<size_t>(i)])] = b_[static_cast<size_t>(i)];
    return x;
  }

 private:
  bool phase1() {
    for (int i = 0; i < rows_; ++i)
      if (b_[static_cast<size_t>(i)] < 0) {
        for (auto& v : a_[static_cast<size_t>(i)]) v = -v;
        b_[static_cast<size_t>(i)] = -b_[static_cast<size_t>(i)];
      }
    int art0 = cols_;
    for (int i = 0; i < rows_; ++i) {
      for (int r = 0; r < rows_; ++r)
        a_[static_cast<size_t>(r)].push_back(Rational(r == i ? 1 : 0));
      basis_.push_back(art0 + i);
    }
    int total = cols_ + rows_;
    std::vector<Rational> cost(static_cast<size_t>(total), Rational(0));
    for (int j = art0; j < total; ++j) cost[static_cast<size_t>(j)] = 1;
    run(cost);
    Rational objective = 0;
    for (int i = 0; i < rows_; ++i)
      if (basis_[static_cast<size_t>(i)] >= art0) objective += b_[static_cast<size_t>(i)];
    if (objective != 0) return false;
    // Drive artificial variables out of the basis; drop redundant rows.
    for (int i = rows_ - 1; i >= 0; --i) {
      if (basis_[static_cast<size_t>(i)] < art0) continue;
      int enter = -1;
      for (int j = 0; j < cols_; ++j)
        if (a_[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
          enter = j;
          break;
        }
      if (enter >= 0) {
        pivot(i, enter);
      } else {
        a_.erase(a_.begin() + i);
        b_.erase(b_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --rows_;
      }
    }
    for (auto& row : a_) row.resize(static_cast<size_t>(cols_));
    for (int& bi : basis_)
      if (bi >= cols_) throw std::logic_error("artificial variable left in basis");
    return true;
  }

  void run(const std::vector<Rational>& cost) {
    int total = static_cast<int>(a_.empty() ? cost.size() : a_[0].size());
    for (;;) {
      // Reduced costs under the current basis.
      std::vector<Rational> y(static_cast<size_t>(rows_));
      for (int i = 0; i < rows_; ++i) {
        int bc = basis_[static_cast<size_t>(i)];
        y[static_cast<size_t>(i)] =
            bc < static_cast<int>(cost.size()) ? cost[static_cast<size_t>(bc)] : Rational(0);
      }
      int enter = -1;
      for (int j = 0; j < total; ++j) {
        Rational cj = j < static_cast<int>(cost.size()) ? cost[static_cast<size_t>(j)] : Rational(0);
        Rational reduced = cj;
        for (int i = 0; i < rows_; ++i)
          reduced -= y[static_cast<size_t>(i)] * a_[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (reduced < 0) {
          enter = j;
          break;  // Bland: smallest entering index
        }
      }
      if (enter < 0) return;
      int leave = -1;
      Rational best;
      for (int i = 0; i < rows_; ++i) {
        const Rational& aie = a_[static_cast<size_t>(i)][static_cast<size_t>(enter)];
        if (aie <= 0) continue;
        Rational ratio = b_[static_cast<size_t>(i)] / aie;
        if (leave < 0 || ratio < best ||
            (ratio == best &&
             basis_[static_cast<size_t>(i)] < basis_[static_cast<size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) throw std::logic_error("unbounded linear program");
      pivot(leave, enter);
    }
  }

  void pivot(int row, int col) {
    Rational inv = a_[static_cast<size_t>(row)][static_cast<size_t>(col)];
    for (auto& v : a_[static_cast<size_t>(row)]) v /= inv;
    b_[static_cast<size_t>(row)] /= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == row) continue;
      Rational f = a_[static_cast<size_t>(i)][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (size_t j = 0; j < a_[static_cast<size_t>(i)].size(); ++j)
        a_[static_cast<size_t>(i)][j] -= f * a_[static_cast<size_t>(row)][j];
      b_[static_cast<size_t>(i)] -= f * b_[static_cast<size_t>(row)];
    }
    basis_[static_cast<size_t>(row)] = col;
  }

  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<int> basis_;
  int rows_ = 0, cols_ = 0;
  bool phase1_done_ = false;
};

// Constraint system of the configuration. Variables:
// x = (m_0..m_{F-1}, m'_0..m'_{F'-1}, t) with t the common cross-sum value.
struct System {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  int nvars;
};

System build_system(const IndependenceConfig& cfg,
                    const std::vector<std::pair<int, Rational>>& pins = {}) {
  int f = cfg.size_f, fp = cfg.size_fp;
  int n = f + fp + 1;
  int tcol = f + fp;
  System sys;
  sys.nvars = n;
  auto row = [&]() -> std::vector<Rational>& {
    sys.a.emplace_back(static_cast<size_t>(n), Rational(0));
    return sys.a.back();
  };
  {
    auto& r = row();
    for (int i = 0; i < f; ++i) r[static_cast<size_t>(i)] = 1;
    sys.b.emplace_back(1);
  }
  {
    auto& r = row();
    for (int j = 0; j < fp; ++j) r[static_cast<size_t>(f + j)] = 1;
    sys.b.emplace_back(1);
  }
  for (int j = 0; j < fp; ++j) {  // column sums of m equal t
    auto& r = row();
    for (int i = 0; i < f; ++i)
      if (cfg.membership[static_cast<size_t>(i)][static_cast<size_t>(j)])
        r[static_cast<size_t>(i)] = 1;
    r[static_cast<size_t>(tcol)] = -1;
    sys.b.emplace_back(0);
  }
  for (int i = 0; i < f; ++i) {  // row sums of m' equal t
    auto& r = row();
    for (int j = 0; j < fp; ++j)
      if (cfg.membership[static_cast<size_t>(i)][static_cast<size_t>(j)])
        r[static_cast<size_t>(f + j)] = 1;
    r[static_cast<size_t>(tcol)] = -1;
    sys.b.emplace_back(0);
  }
  for (const auto& [var, val] : pins) {
    auto& r = row();
    r[static_cast<size_t>(var)] = 1;
    sys.b.push_back(val);
  }
  return sys;
}

ConfigSolution to_solution(const IndependenceConfig& cfg,
                           const std::vector<Rational>& x) {
  ConfigSolution out;
  out.m.assign(x.begin(), x.begin() + cfg.size_f);
  out.mp.assign(x.begin() + cfg.size_f, x.begin() + cfg.size_f + cfg.size_fp);
  out.value = x[static_cast<size_t>(cfg.size_f + cfg.size_fp)];
  return out;
}

std::optional<std::vector<Rational>> minimize_objective(
    const IndependenceConfig& cfg, const std::vector<Rational>& cost,
    const std::vector<std::pair<int, Rational>>& pins = {}) {
  System sys = build_system(cfg, pins);
  ExactSimplex simplex(std::move(sys.a), std::move(sys.b));
  return simplex.minimize(cost);
}

}  // namespace

std::optional<ConfigSolution> solve_config(const IndependenceConfig& cfg) {
  int n = cfg.size_f + cfg.size_fp + 1;
  std::vector<std::pair<int, Rational>> pins;
  std::vector<Rational> x;
  for (int var = 0; var < cfg.size_f + cfg.size_fp; ++var) {
    std::vector<Rational> cost(static_cast<size_t>(n), Rational(0));
    cost[static_cast<size_t>(var)] = 1;
    auto sol = minimize_objective(cfg, cost, pins);
    if (!sol) return std::nullopt;  // infeasible (only possible on var 0)
    pins.emplace_back(var, (*sol)[static_cast<size_t>(var)]);
    x = std::move(*sol);
  }
  return to_solution(cfg, x);
}

std::optional<Rational> config_value(const IndependenceConfig& cfg) {
  // Any feasible point yields the common value; one phase-1 solve suffices.
  std::vector<Rational> cost(static_cast<size_t>(cfg.size_f + cfg.size_fp + 1), Rational(0));
  auto sol = minimize_objective(cfg, cost);
  if (!sol) return std::nullopt;
  return (*sol)[static_cast<size_t>(cfg.size_f + cfg.size_fp)];
}

UniquenessReport verify_value_uniqueness(const IndependenceConfig& cfg, int trials) {
  UniquenessReport rep;
  int n = cfg.size_f + cfg.size_fp + 1;
  std::vector<std::vector<Rational>> solutions;
  int used = 0;
  for (int var = 0; var < n - 1 && used < trials; ++var) {
    for (int dir = 0; dir < 2 && used < trials; ++dir) {
      std::vector<Rational> cost(static_cast<size_t>(n), Rational(0));
      cost[static_cast<size_t>(var)] = dir == 0 ? 1 : -1;
      auto sol = minimize_objective(cfg, cost);
      ++used;
      if (!sol) return rep;  // infeasible
      if (std::find(solutions.begin(), solutions.end(), *sol) == solutions.end())
        solutions.push_back(std::move(*sol));
    }
  }
  if (solutions.empty()) return rep;
  rep.feasible = true;
  rep.distinct_solutions = static_cast<int>(solutions.size());
  rep.value = solutions[0][static_cast<size_t>(n - 1)];
  rep.all_values_equal = true;
  rep.max_entry_denominator = 1;
  for (const auto& s : solutions) {
    if (s[static_cast<size_t>(n - 1)] != rep.value) rep.all_values_equal = false;
    for (const auto& v : s)
      rep.max_entry_denominator = std::max(rep.max_entry_denominator, denominator(v));
  }
  rep.value_denominator = denominator(rep.value);
  return rep;
}

BridgeResult config_from_joining(const MarkovMeasure& mu, const LocalRule& rule,
                                 int len, const Word& c, std::int64_t budget) {
  if (c.length() != len) throw InputError("word length does not match len");
  if (!word_allowed(mu.matrix(), c)) throw InputError("word is not allowed for the matrix");
  if (!mu.exact()) throw InputError("bridge requires an exact measure");
  int p = rule.width();
  int wl = len + 2 * p;
  BigInt count = language_size(mu.matrix(), wl);
  if (count * count > budget) throw BudgetError("window pair count exceeds budget");
  WordIndexer idx(mu.matrix(), wl, budget);
  std::int64_t nl = idx.size();
  std::int64_t wn = rule.windows().size();

  std::vector<std::vector<std::int32_t>> winseq(static_cast<size_t>(nl));
  for (std::int64_t u = 0; u < nl; ++u) {
    Word w = idx.word_at(u);
    auto& seq = winseq[static_cast<size_t>(u)];
    seq.resize(static_cast<size_t>(len));
    for (int i = 0; i < len; ++i) {
      std::vector<int> win(w.syms.begin() + i, w.syms.begin() + i + 2 * p + 1);
      seq[static_cast<size_t>(i)] = static_cast<std::int32_t>(rule.windows().index_of(win));
    }
  }
  std::vector<std::pair<int, int>> cells;
  for (std::int64_t u = 0; u < nl; ++u)
    for (std::int64_t u2 = 0; u2 < nl; ++u2) {
      bool match = true;
      for (int i = 0; i < len && match; ++i) {
        int sym = rule.table()[static_cast<size_t>(winseq[static_cast<size_t>(u)][static_cast<size_t>(i)]) * wn +
                               winseq[static_cast<size_t>(u2)][static_cast<size_t>(i)]];
        if (sym != c.syms[static_cast<size_t>(i)]) match = false;
      }
      if (match) cells.emplace_back(static_cast<int>(u), static_cast<int>(u2));
    }

  BridgeResult out;
  out.config = IndependenceConfig::from_cells(static_cast<int>(nl), static_cast<int>(nl), cells);
  out.mu_c = cylinder_probability(mu, c).value;
  auto value = config_value(out.config);
  out.feasible = value.has_value();
  if (value) out.value = *value;
  out.consistent = out.feasible && out.value == out.mu_c;
  return out;
}

}  // namespace sftpij
