#include "sftpij/joining.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sftpij {

namespace {

// Integer scaling of the exact cylinder masses: with l_a = L[a]/P and
// r_b = R[b]/Q, the mass of a length-len word u is
// L[first(u)] * R[last(u)] / (P * Q * beta^(len-1)). Every weight in a
// depth computation is an integer numerator over the common denominator
// D(len) = P * Q * beta^(len-1).
struct ScaledWeights {
  std::vector<BigInt> lnum, rnum;
  BigInt pden = 1, qden = 1;
  BigInt beta;

  explicit ScaledWeights(const MarkovMeasure& mu) {
    if (!mu.exact())
      throw InputError("exact verification unavailable: irrational Perron value");
    const PerronData& pd = mu.perron();
    beta = pd.integer_value;
    for (const auto& v : pd.left) pden = boost::multiprecision::lcm(pden, denominator(v));
    for (const auto& v : pd.right) qden = boost::multiprecision::lcm(qden, denominator(v));
    for (const auto& v : pd.left) lnum.push_back(numerator(v * Rational(pden)));
    for (const auto& v : pd.right) rnum.push_back(numerator(v * Rational(qden)));
  }

  BigInt weight(const Word& w) const {
    return lnum[static_cast<size_t>(w.syms.front())] * rnum[static_cast<size_t>(w.syms.back())];
  }
  BigInt denom(int len) const {
    return pden * qden * big_pow(beta, static_cast<std::uint64_t>(len - 1));
  }
};

std::string mass_string(const BigInt& num, const BigInt& den) {
  return rational_to_string(Rational(num, den));
}

struct PassOutcome {
  BigInt total;                 // sum of all accumulated mass numerators
  BigInt marginal_dev;          // max |acc - expected| over output words
  BigInt joint_dev;             // max over (mid, output) pairs
  std::string marginal_witness;
  std::string joint_witness;
  bool disallowed_mass = false;
};

// One verification pass at a fixed depth. Outer words play the coordinate
// whose mid-window is checked for independence against the output; with
// swapped = true the rule arguments are exchanged, which turns the pass
// into the check for the second coordinate.
template <typename Acc>
PassOutcome run_pass(const MarkovMeasure& mu, const LocalRule& rule, int k,
                     bool swapped, const ScaledWeights& sw,
                     const WordIndexer& idx_len, const WordIndexer& idx_k) {
  const AdjacencyMatrix& m = mu.matrix();
  const Alphabet& alpha = m.alphabet();
  int p = rule.width();
  int len = k + 2 * p;
  std::int64_t nl = idx_len.size();
  std::int64_t nk = idx_k.size();
  std::int64_t wn = rule.windows().size();

  // Window-index sequence and weight per word.
  std::vector<std::int32_t> winseq(static_cast<size_t>(nl) * k);
  std::vector<Acc> weight(static_cast<size_t>(nl));
  std::vector<std::int64_t> mid_rank(static_cast<size_t>(nl));
  std::vector<Word> words(static_cast<size_t>(nl));
  for (std::int64_t u = 0; u < nl; ++u) {
    Word w = idx_len.word_at(u);
    weight[static_cast<size_t>(u)] = static_cast<Acc>(sw.weight(w));
    for (int i = 0; i < k; ++i) {
      std::vector<int> win(w.syms.begin() + i, w.syms.begin() + i + 2 * p + 1);
      std::int64_t wi = rule.windows().index_of(win);
      if (wi < 0) throw std::logic_error("window of an allowed word must be allowed");
      winseq[static_cast<size_t>(u) * k + static_cast<size_t>(i)] = static_cast<std::int32_t>(wi);
    }
    std::vector<int> mid(w.syms.begin() + p, w.syms.begin() + p + k);
    mid_rank[static_cast<size_t>(u)] = idx_k.index_of(mid);
    words[static_cast<size_t>(u)] = std::move(w);
  }

  // Weight numerators of length-k words and the expected values.
  std::vector<Acc> wk(static_cast<size_t>(nk));
  for (std::int64_t v = 0; v < nk; ++v)
    wk[static_cast<size_t>(v)] = static_cast<Acc>(sw.weight(idx_k.word_at(v)));
  BigInt beta4p = big_pow(sw.beta, static_cast<std::uint64_t>(4 * p));
  BigInt marg_factor = sw.pden * sw.qden *
                       big_pow(sw.beta, static_cast<std::uint64_t>(k + 4 * p - 1));
  Acc beta4p_a = static_cast<Acc>(beta4p);
  Acc marg_factor_a = static_cast<Acc>(marg_factor);

  std::vector<std::int64_t> order(static_cast<size_t>(nl));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
    return mid_rank[static_cast<size_t>(a)] < mid_rank[static_cast<size_t>(b)];
  });

  const std::vector<int>& table = rule.table();
  std::vector<Acc> marg(static_cast<size_t>(nk), Acc(0));
  std::vector<Acc> group_acc(static_cast<size_t>(nk), Acc(0));
  // Disallowed output words, keyed by their symbols. Empty for any rule
  // whose pushforward stays on the shift, so the maps never touch the hot
  // loop there.
  std::map<std::vector<int>, Acc> marg_bad;
  std::map<std::vector<int>, Acc> group_bad;

  PassOutcome out;
  out.total = 0;
  out.marginal_dev = 0;
  out.joint_dev = 0;
  BigInt d2 = sw.denom(len) * sw.denom(len);

  std::vector<int> vbuf(static_cast<size_t>(k));
  size_t gi = 0;
  while (gi < order.size()) {
    std::int64_t mid = mid_rank[static_cast<size_t>(order[gi])];
    std::fill(group_acc.begin(), group_acc.end(), Acc(0));
    group_bad.clear();
    size_t gend = gi;
    while (gend < order.size() && mid_rank[static_cast<size_t>(order[gend])] == mid) ++gend;
    for (size_t ui = gi; ui < gend; ++ui) {
      std::int64_t u = order[ui];
      const std::int32_t* seq_u = &winseq[static_cast<size_t>(u) * k];
      Acc wu = weight[static_cast<size_t>(u)];
      for (std::int64_t u2 = 0; u2 < nl; ++u2) {
        const std::int32_t* seq_v = &winseq[static_cast<size_t>(u2) * k];
        WordIndexer::RankState st;
        for (int i = 0; i < k; ++i) {
          int sym = swapped ? table[static_cast<size_t>(seq_v[i]) * wn + seq_u[i]]
                            : table[static_cast<size_t>(seq_u[i]) * wn + seq_v[i]];
          vbuf[static_cast<size_t>(i)] = sym;
          idx_k.step(st, sym);
        }
        if (st.dead)
          group_bad[vbuf] += wu * weight[static_cast<size_t>(u2)];
        else
          group_acc[static_cast<size_t>(st.rank)] += wu * weight[static_cast<size_t>(u2)];
      }
    }
    // Joint check for this mid-group: acc == W(mid) * W(v) * beta^{4p},
    // and zero for every disallowed output word.
    Acc wmid = wk[static_cast<size_t>(mid)];
    auto note_joint = [&](const std::string& v_name, const Acc& acc, const Acc& expected) {
      BigInt dev = BigInt(acc) - BigInt(expected);
      if (dev < 0) dev = -dev;
      if (dev > out.joint_dev) out.joint_dev = dev;
      if (out.joint_witness.empty()) {
        std::ostringstream os;
        os << "lambda(" << (swapped ? "xi'" : "xi") << " in ["
           << word_to_string(alpha, idx_k.word_at(mid)) << "], xi'' in [" << v_name
           << "]) = " << mass_string(BigInt(acc), d2) << " != "
           << mass_string(BigInt(expected), d2) << " = product";
        out.joint_witness = os.str();
      }
    };
    for (std::int64_t v = 0; v < nk; ++v) {
      Acc expected = wmid * wk[static_cast<size_t>(v)] * beta4p_a;
      Acc acc = group_acc[static_cast<size_t>(v)];
      marg[static_cast<size_t>(v)] += acc;
      if (acc != expected)
        note_joint(word_to_string(alpha, idx_k.word_at(v)), acc, expected);
    }
    for (const auto& [syms, acc] : group_bad) {
      Word w{syms, 0};
      note_joint(word_to_string(alpha, w) + " (disallowed)", acc, Acc(0));
      marg_bad[syms] += acc;
    }
    gi = gend;
  }

  for (std::int64_t v = 0; v < nk; ++v) {
    Acc acc = marg[static_cast<size_t>(v)];
    out.total += BigInt(acc);
    Acc expected = wk[static_cast<size_t>(v)] * marg_factor_a;
    if (acc != expected) {
      BigInt dev = BigInt(acc) - BigInt(expected);
      if (dev < 0) dev = -dev;
      if (dev > out.marginal_dev) out.marginal_dev = dev;
      if (out.marginal_witness.empty()) {
        std::ostringstream os;
        os << "lambda(xi'' in [" << word_to_string(alpha, idx_k.word_at(v))
           << "]) = " << mass_string(BigInt(acc), d2) << " != "
           << mass_string(BigInt(expected), d2) << " = mu";
        out.marginal_witness = os.str();
      }
    }
  }
  for (const auto& [syms, acc] : marg_bad) {
    out.total += BigInt(acc);
    out.disallowed_mass = true;
    BigInt dev(acc);
    if (dev > out.marginal_dev) out.marginal_dev = dev;
    if (out.marginal_witness.empty()) {
      Word w{syms, 0};
      std::ostringstream os;
      os << "output word [" << word_to_string(alpha, w)
         << "] is not allowed for the matrix but has mass " << mass_string(BigInt(acc), d2);
      out.marginal_witness = os.str();
    }
  }
  return out;
}

}  // namespace

namespace detail {
// Everything accumulated in a pass is bounded by D^2; below this limit the
// int64 engine is exact. Exposed so tests can force the BigInt engine.
BigInt accumulator_limit = BigInt(1) << 62;
}  // namespace detail

namespace {

// Picks the int64 fast path when every accumulator is provably in range.
PassOutcome run_pass_auto(const MarkovMeasure& mu, const LocalRule& rule, int k,
                          bool swapped, const ScaledWeights& sw,
                          const WordIndexer& idx_len, const WordIndexer& idx_k) {
  BigInt d2 = sw.denom(k + 2 * rule.width());
  d2 *= d2;
  if (d2 <= detail::accumulator_limit)
    return run_pass<std::int64_t>(mu, rule, k, swapped, sw, idx_len, idx_k);
  return run_pass<BigInt>(mu, rule, k, swapped, sw, idx_len, idx_k);
}

void require_same_matrix(const MarkovMeasure& mu, const LocalRule& rule) {
  if (!(mu.matrix() == rule.matrix()))
    throw InputError("rule and measure are defined on different matrices");
}

void check_pair_budget(const AdjacencyMatrix& m, int len, std::int64_t budget) {
  BigInt count = language_size(m, len);
  BigInt pairs = count * count;
  if (pairs > budget)
    throw BudgetError("|L_" + std::to_string(len) + "|^2 = " + pairs.str() +
                      " summands exceed the budget " + std::to_string(budget));
}

}  // namespace

std::string JoiningVerdict::summary() const {
  if (verified) return "verified-up-to-" + std::to_string(requested_depth);
  return "refuted-at-" + std::to_string(refuted_at);
}

JoiningVerdict verify_pij(const MarkovMeasure& mu, const LocalRule& rule,
                          int depth, std::int64_t budget) {
  require_same_matrix(mu, rule);
  if (depth < 1) throw InputError("verification depth must be >= 1");
  ScaledWeights sw(mu);
  int p = rule.width();

  JoiningVerdict verdict;
  verdict.requested_depth = depth;
  for (int k = 1; k <= depth; ++k) {
    int len = k + 2 * p;
    check_pair_budget(mu.matrix(), len, budget);
    WordIndexer idx_len(mu.matrix(), len, budget);
    WordIndexer idx_k(mu.matrix(), k, budget);
    BigInt d2 = sw.denom(len) * sw.denom(len);

    PassOutcome a = run_pass_auto(mu, rule, k, false, sw, idx_len, idx_k);
    PassOutcome b = run_pass_auto(mu, rule, k, true, sw, idx_len, idx_k);

    DepthCheck dc;
    dc.depth = k;
    dc.marginal_total = Rational(a.total, d2);
    dc.marginal_dev = Rational(a.marginal_dev, d2);
    dc.indep_x_dev = Rational(a.joint_dev, d2);
    dc.indep_xp_dev = Rational(b.joint_dev, d2);
    dc.marginal_ok = a.marginal_dev == 0 && !a.disallowed_mass;
    dc.indep_x_ok = a.joint_dev == 0;
    dc.indep_xp_ok = b.joint_dev == 0;
    if (!dc.marginal_ok)
      dc.witness = a.marginal_witness;
    else if (!dc.indep_x_ok)
      dc.witness = a.joint_witness;
    else if (!dc.indep_xp_ok)
      dc.witness = b.joint_witness;
    verdict.per_depth.push_back(dc);
    if (!dc.ok() && verdict.refuted_at < 0) {
      verdict.refuted_at = k;
      verdict.witness = dc.witness;
    }
  }
  verdict.verified = verdict.refuted_at < 0;
  return verdict;
}

std::map<Word, Rational> output_distribution(const MarkovMeasure& mu,
                                             const LocalRule& rule, int length,
                                             std::int64_t budget) {
  require_same_matrix(mu, rule);
  if (length < 1) throw InputError("output length must be >= 1");
  ScaledWeights sw(mu);
  int p = rule.width();
  int len = length + 2 * p;
  check_pair_budget(mu.matrix(), len, budget);
  WordIndexer idx_len(mu.matrix(), len, budget);
  std::int64_t wn = rule.windows().size();
  std::int64_t nl = idx_len.size();

  std::map<Word, BigInt> acc;
  std::vector<Word> words(static_cast<size_t>(nl));
  std::vector<BigInt> weight(static_cast<size_t>(nl));
  std::vector<std::int32_t> winseq(static_cast<size_t>(nl) * length);
  for (std::int64_t u = 0; u < nl; ++u) {
    words[static_cast<size_t>(u)] = idx_len.word_at(u);
    weight[static_cast<size_t>(u)] = sw.weight(words[static_cast<size_t>(u)]);
    for (int i = 0; i < length; ++i) {
      std::vector<int> win(words[static_cast<size_t>(u)].syms.begin() + i,
                           words[static_cast<size_t>(u)].syms.begin() + i + 2 * p + 1);
      winseq[static_cast<size_t>(u) * length + static_cast<size_t>(i)] =
          static_cast<std::int32_t>(rule.windows().index_of(win));
    }
  }
  for (std::int64_t u = 0; u < nl; ++u)
    for (std::int64_t u2 = 0; u2 < nl; ++u2) {
      Word v;
      v.syms.reserve(static_cast<size_t>(length));
      for (int i = 0; i < length; ++i) {
        std::int64_t i1 = winseq[static_cast<size_t>(u) * length + static_cast<size_t>(i)];
        std::int64_t i2 = winseq[static_cast<size_t>(u2) * length + static_cast<size_t>(i)];
        v.syms.push_back(rule.table()[static_cast<size_t>(i1 * wn + i2)]);
      }
      acc[v] += weight[static_cast<size_t>(u)] * weight[static_cast<size_t>(u2)];
    }
  BigInt d2 = sw.denom(len) * sw.denom(len);
  std::map<Word, Rational> out;
  for (const auto& [w, num] : acc)
    if (num != 0) out.emplace(w, Rational(num, d2));
  return out;
}

PreimageReport preimage_count_check(const LocalRule& rule, int k,
                                    std::int64_t budget) {
  const AdjacencyMatrix& m = rule.matrix();
  auto n_opt = is_uniform(m);
  if (!n_opt) throw InputError("preimage counting requires a uniform matrix");
  if (k < 0) throw InputError("k must be nonnegative");
  int p = rule.width();
  int out_len = k + 1;
  int len = out_len + 2 * p;
  check_pair_budget(m, len, budget);
  WordIndexer idx(m, len, budget);
  std::int64_t nl = idx.size();
  std::int64_t wn = rule.windows().size();
  int na = m.size();

  PreimageReport rep;
  rep.expected = big_pow(BigInt(*n_opt), static_cast<std::uint64_t>(2 * p));
  std::int64_t expected = rep.expected.convert_to<std::int64_t>();

  // Raw rank over all |A|^{out_len} output words, plus an allowed bitmap.
  std::int64_t total_words = 1;
  for (int i = 0; i < out_len; ++i) total_words *= na;
  std::vector<char> allowed(static_cast<size_t>(total_words), 0);
  {
    std::vector<int> w(static_cast<size_t>(out_len), 0);
    for (std::int64_t r = 0; r < total_words; ++r) {
      std::int64_t t = r;
      bool ok = true;
      for (int i = out_len - 1; i >= 0; --i) {
        w[static_cast<size_t>(i)] = static_cast<int>(t % na);
        t /= na;
      }
      for (int i = 0; i + 1 < out_len && ok; ++i)
        if (!m.entry(w[static_cast<size_t>(i)], w[static_cast<size_t>(i + 1)])) ok = false;
      allowed[static_cast<size_t>(r)] = ok ? 1 : 0;
    }
  }

  std::vector<std::vector<std::int32_t>> winseq(static_cast<size_t>(nl));
  std::vector<Word> words(static_cast<size_t>(nl));
  for (std::int64_t u = 0; u < nl; ++u) {
    words[static_cast<size_t>(u)] = idx.word_at(u);
    auto& seq = winseq[static_cast<size_t>(u)];
    seq.resize(static_cast<size_t>(out_len));
    for (int i = 0; i < out_len; ++i) {
      std::vector<int> win(words[static_cast<size_t>(u)].syms.begin() + i,
                           words[static_cast<size_t>(u)].syms.begin() + i + 2 * p + 1);
      seq[static_cast<size_t>(i)] = static_cast<std::int32_t>(rule.windows().index_of(win));
    }
  }

  auto word_name = [&](std::int64_t r) {
    Word w;
    std::int64_t t = r;
    w.syms.assign(static_cast<size_t>(out_len), 0);
    for (int i = out_len - 1; i >= 0; --i) {
      w.syms[static_cast<size_t>(i)] = static_cast<int>(t % na);
      t /= na;
    }
    return word_to_string(m.alphabet(), w);
  };

  std::vector<std::int64_t> counts(static_cast<size_t>(total_words));
  for (int role = 0; role < 2; ++role) {
    for (std::int64_t u = 0; u < nl; ++u) {
      std::fill(counts.begin(), counts.end(), 0);
      const auto& seq_u = winseq[static_cast<size_t>(u)];
      for (std::int64_t u2 = 0; u2 < nl; ++u2) {
        const auto& seq_v = winseq[static_cast<size_t>(u2)];
        std::int64_t r = 0;
        for (int i = 0; i < out_len; ++i) {
          int sym = role == 0
                        ? rule.table()[static_cast<size_t>(seq_u[static_cast<size_t>(i)]) * wn +
                                       seq_v[static_cast<size_t>(i)]]
                        : rule.table()[static_cast<size_t>(seq_v[static_cast<size_t>(i)]) * wn +
                                       seq_u[static_cast<size_t>(i)]];
          r = r * na + sym;
        }
        ++counts[static_cast<size_t>(r)];
      }
      for (std::int64_t r = 0; r < total_words; ++r) {
        std::int64_t want = allowed[static_cast<size_t>(r)] ? expected : 0;
        if (counts[static_cast<size_t>(r)] != want) {
          std::ostringstream os;
          os << "fixed " << (role == 0 ? "xi" : "xi'") << "-window ["
             << word_to_string(m.alphabet(), words[static_cast<size_t>(u)]) << "], output ["
             << word_name(r) << "]: " << counts[static_cast<size_t>(r)]
             << " preimages, expected " << want;
          rep.pass = false;
          rep.witness = os.str();
          return rep;
        }
      }
    }
  }
  rep.pass = true;
  return rep;
}

std::vector<LocalRule> search_rules(const AdjacencyMatrix& m, int p, int depth,
                                    std::int64_t budget, bool prune) {
  // Exact measure for the verification filter.
  MarkovMeasure mu = is_irreducible(m)
                         ? MarkovMeasure(m, perron(m))
                         : MarkovMeasure::uniform_measure(m);
  if (!mu.exact())
    throw InputError("rule search requires an integer Perron value");

  WordIndexer windows(m, 2 * p + 1, budget);
  std::int64_t w = windows.size();
  if (w * w > budget)
    throw BudgetError("rule table with " + std::to_string(w * w) +
                      " cells exceeds the budget");
  int na = m.size();
  auto n_opt = is_uniform(m);
  std::int64_t n2p = 0;
  if (n_opt)
    n2p = big_pow(BigInt(*n_opt), static_cast<std::uint64_t>(2 * p)).convert_to<std::int64_t>();
  bool use_prune = prune && n_opt.has_value();

  std::vector<LocalRule> found;
  std::vector<int> table(static_cast<size_t>(w * w), -1);
  std::vector<std::vector<std::int64_t>> row_cnt(
      static_cast<size_t>(w), std::vector<std::int64_t>(static_cast<size_t>(na), 0));
  std::vector<std::vector<std::int64_t>> col_cnt(
      static_cast<size_t>(w), std::vector<std::int64_t>(static_cast<size_t>(na), 0));

  std::function<void(std::int64_t)> dfs = [&](std::int64_t cell) {
    if (cell == w * w) {
      LocalRule candidate(m, p, table);
      JoiningVerdict v = verify_pij(mu, candidate, depth, budget);
      if (v.verified) found.push_back(std::move(candidate));
      return;
    }
    std::int64_t i = cell / w, j = cell % w;
    for (int sym = 0; sym < na; ++sym) {
      if (use_prune && (row_cnt[static_cast<size_t>(i)][static_cast<size_t>(sym)] >= n2p ||
                        col_cnt[static_cast<size_t>(j)][static_cast<size_t>(sym)] >= n2p))
        continue;
      table[static_cast<size_t>(cell)] = sym;
      ++row_cnt[static_cast<size_t>(i)][static_cast<size_t>(sym)];
      ++col_cnt[static_cast<size_t>(j)][static_cast<size_t>(sym)];
      dfs(cell + 1);
      --row_cnt[static_cast<size_t>(i)][static_cast<size_t>(sym)];
      --col_cnt[static_cast<size_t>(j)][static_cast<size_t>(sym)];
      table[static_cast<size_t>(cell)] = -1;
    }
  };
  dfs(0);
  return found;
}

std::optional<int> check_pij_star(const MarkovMeasure& mu, const LocalRule& rule,
                                  int q_max, std::int64_t budget) {
  require_same_matrix(mu, rule);
  if (q_max < 0) throw InputError("q_max must be nonnegative");
  JoiningVerdict v = verify_pij(mu, rule, 2 * q_max + 1, budget);
  if (!v.verified)
    throw InputError("precondition unmet: rule is not pairwise independent up to depth " +
                     std::to_string(2 * q_max + 1) + " (" + v.witness + ")");

  int p = rule.width();
  std::int64_t wn = rule.windows().size();
  for (int q = 0; q <= q_max; ++q) {
    int out_len = 2 * q + 1;
    int len = out_len + 2 * p;
    check_pair_budget(mu.matrix(), len, budget);
    WordIndexer idx_len(mu.matrix(), len, budget);
    WordIndexer idx_out(mu.matrix(), out_len, budget);
    std::int64_t nl = idx_len.size();

    std::vector<Word> words(static_cast<size_t>(nl));
    std::vector<std::vector<std::int32_t>> winseq(static_cast<size_t>(nl));
    std::vector<std::int64_t> mid(static_cast<size_t>(nl));
    for (std::int64_t u = 0; u < nl; ++u) {
      words[static_cast<size_t>(u)] = idx_len.word_at(u);
      auto& seq = winseq[static_cast<size_t>(u)];
      seq.resize(static_cast<size_t>(out_len));
      for (int i = 0; i < out_len; ++i) {
        std::vector<int> win(words[static_cast<size_t>(u)].syms.begin() + i,
                             words[static_cast<size_t>(u)].syms.begin() + i + 2 * p + 1);
        seq[static_cast<size_t>(i)] = static_cast<std::int32_t>(rule.windows().index_of(win));
      }
      std::vector<int> mid_syms(words[static_cast<size_t>(u)].syms.begin() + p,
                                words[static_cast<size_t>(u)].syms.begin() + p + out_len);
      mid[static_cast<size_t>(u)] = idx_out.index_of(mid_syms);
    }

    std::map<std::pair<std::int64_t, std::int64_t>, int> determined;
    bool single_valued = true;
    for (std::int64_t u = 0; u < nl && single_valued; ++u) {
      int xi0 = words[static_cast<size_t>(u)].syms[static_cast<size_t>(p + q)];
      const auto& seq_u = winseq[static_cast<size_t>(u)];
      for (std::int64_t u2 = 0; u2 < nl; ++u2) {
        const auto& seq_v = winseq[static_cast<size_t>(u2)];
        WordIndexer::RankState st;
        for (int i = 0; i < out_len && !st.dead; ++i)
          idx_out.step(st, rule.table()[static_cast<size_t>(seq_u[static_cast<size_t>(i)]) * wn +
                                        seq_v[static_cast<size_t>(i)]]);
        if (st.dead)
          throw std::logic_error("verified rule produced a disallowed output word");
        auto key = std::make_pair(mid[static_cast<size_t>(u2)], st.rank);
        auto [it, inserted] = determined.emplace(key, xi0);
        if (!inserted && it->second != xi0) {
          single_valued = false;
          break;
        }
      }
    }
    if (single_valued) return q;
  }
  return std::nullopt;
}

}  // namespace sftpij
