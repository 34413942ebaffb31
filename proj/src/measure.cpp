#include "sftpij/measure.hpp"

#include <cmath>
#include <sstream>

namespace sftpij {

MarkovMeasure::MarkovMeasure(AdjacencyMatrix matrix, PerronData perron)
    : matrix_(std::move(matrix)), perron_(std::move(perron)) {
  int n = matrix_.size();
  if (static_cast<int>(perron_.left_f.size()) != n)
    throw InputError("Perron data does not match the matrix size");
  stationary_f_.resize(static_cast<size_t>(n));
  transition_f_.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
  double beta_f = perron_.value_approx();
  for (int a = 0; a < n; ++a) {
    stationary_f_[static_cast<size_t>(a)] = perron_.left_f[static_cast<size_t>(a)] * perron_.right_f[static_cast<size_t>(a)];
    for (int b = 0; b < n; ++b)
      if (matrix_.entry(a, b))
        transition_f_[static_cast<size_t>(a)][static_cast<size_t>(b)] =
            perron_.right_f[static_cast<size_t>(b)] / (beta_f * perron_.right_f[static_cast<size_t>(a)]);
  }
  if (perron_.integer) {
    Rational beta(perron_.integer_value);
    stationary_.resize(static_cast<size_t>(n));
    transition_.assign(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
    for (int a = 0; a < n; ++a) {
      stationary_[static_cast<size_t>(a)] = perron_.left[static_cast<size_t>(a)] * perron_.right[static_cast<size_t>(a)];
      for (int b = 0; b < n; ++b)
        if (matrix_.entry(a, b))
          transition_[static_cast<size_t>(a)][static_cast<size_t>(b)] =
              perron_.right[static_cast<size_t>(b)] / (beta * perron_.right[static_cast<size_t>(a)]);
    }
  }
}

MarkovMeasure MarkovMeasure::uniform_measure(const AdjacencyMatrix& matrix) {
  auto n_opt = is_uniform(matrix);
  if (!n_opt) throw InputError("uniform_measure() requires a uniform matrix");
  int n = *n_opt;
  int size = matrix.size();
  PerronData pd;
  pd.integer = true;
  pd.integer_value = n;
  pd.lo = pd.hi = Rational(n);
  pd.annihilator = IntPolynomial({-BigInt(n), BigInt(1)});
  pd.left.assign(static_cast<size_t>(size), Rational(1, size));
  pd.right.assign(static_cast<size_t>(size), Rational(1));
  pd.left_f.assign(static_cast<size_t>(size), 1.0 / size);
  pd.right_f.assign(static_cast<size_t>(size), 1.0);
  return MarkovMeasure(matrix, std::move(pd));
}

const std::vector<Rational>& MarkovMeasure::stationary() const {
  if (!exact()) throw InputError("exact stationary vector unavailable: irrational Perron value");
  return stationary_;
}

const std::vector<std::vector<Rational>>& MarkovMeasure::transition() const {
  if (!exact()) throw InputError("exact transition matrix unavailable: irrational Perron value");
  return transition_;
}

CylinderMass cylinder_probability(const MarkovMeasure& mu, const Word& w) {
  CylinderMass out;
  if (w.length() == 0) throw InputError("cylinder of an empty word");
  if (!word_allowed(mu.matrix(), w)) {
    out.allowed = false;
    out.exact = mu.exact();
    out.value = 0;
    out.approx = 0.0;
    return out;
  }
  out.allowed = true;
  int a0 = w.syms.front(), ak = w.syms.back();
  int k = w.length() - 1;
  const PerronData& pd = mu.perron();
  out.approx = pd.left_f[static_cast<size_t>(a0)] * pd.right_f[static_cast<size_t>(ak)] /
               std::pow(pd.value_approx(), k);
  if (mu.exact()) {
    out.exact = true;
    out.value = pd.left[static_cast<size_t>(a0)] * pd.right[static_cast<size_t>(ak)] /
                Rational(big_pow(pd.integer_value, static_cast<std::uint64_t>(k)));
  } else {
    out.exact = false;
    out.error_bound = std::abs(out.approx) * 1e-11 * (k + 2);
  }
  return out;
}

EntropyReport entropy(const MarkovMeasure& mu, int len_max) {
  EntropyReport rep;
  rep.beta = mu.perron().value_approx();
  rep.beta_integer = mu.perron().integer;
  rep.log_beta = std::log(rep.beta);
  for (int len = 1; len <= len_max; ++len) {
    BigInt count = language_size(mu.matrix(), len);
    double logc = std::log(to_double(count));
    rep.estimates.emplace_back(len, logc / len);
  }
  return rep;
}

namespace {

// Endpoint pairs (a, b) realized by words of the given length.
std::vector<std::pair<int, int>> realized_endpoints(const AdjacencyMatrix& m,
                                                    int length) {
  BigMatrix p = m.to_big().pow(length - 1);
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < m.size(); ++a)
    for (int b = 0; b < m.size(); ++b)
      if (p.at(a, b) > 0) out.emplace_back(a, b);
  return out;
}

}  // namespace

QuasiUniformityReport quasi_uniformity_constant(const MarkovMeasure& mu,
                                                int len_max) {
  const auto& m = mu.matrix();
  const PerronData& pd = mu.perron();
  int n = m.size();

  QuasiUniformityReport rep;
  // Endpoint pairs realized at any length (b reachable from a, incl. k=0).
  std::vector<std::pair<int, int>> pairs;
  {
    BigMatrix reach = BigMatrix::identity(n);
    BigMatrix pw = BigMatrix::identity(n);
    BigMatrix big = m.to_big();
    for (int k = 1; k <= n; ++k) {
      pw = pw * big;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (pw.at(a, b) > 0) reach.at(a, b) = 1;
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (reach.at(a, b) > 0) pairs.emplace_back(a, b);
  }

  double max_f = 0, min_f = 0;
  bool first = true;
  Rational max_q, min_q;
  for (auto [a, b] : pairs) {
    double v = pd.left_f[static_cast<size_t>(a)] * pd.right_f[static_cast<size_t>(b)];
    if (first || v > max_f) max_f = v;
    if (first || v < min_f) min_f = v;
    if (mu.exact()) {
      Rational q = pd.left[static_cast<size_t>(a)] * pd.right[static_cast<size_t>(b)];
      if (first || q > max_q) max_q = q;
      if (first || q < min_q) min_q = q;
    }
    first = false;
  }
  rep.k_approx = max_f / min_f;
  if (mu.exact()) {
    rep.exact = true;
    rep.k_exact = max_q / min_q;
  }

  rep.stabilized = true;
  for (int len = 1; len <= len_max; ++len) {
    auto at_len = realized_endpoints(m, len);
    double mx = 0, mn = 0;
    bool f2 = true;
    for (auto [a, b] : at_len) {
      double v = pd.left_f[static_cast<size_t>(a)] * pd.right_f[static_cast<size_t>(b)];
      if (f2 || v > mx) mx = v;
      if (f2 || v < mn) mn = v;
      f2 = false;
    }
    double ratio = mx / mn;
    rep.per_length_ratio.emplace_back(len, ratio);
    if (ratio > rep.k_approx * (1 + 1e-9)) rep.stabilized = false;
  }
  return rep;
}

MonotonicityReport check_cylinder_monotonicity(const MarkovMeasure& mu, int p,
                                               int len_max) {
  if (p < 0) throw InputError("width must be nonnegative");
  const auto& m = mu.matrix();
  const PerronData& pd = mu.perron();
  MonotonicityReport rep;

  auto mass_f = [&](int a, int b, int len) {
    return pd.left_f[static_cast<size_t>(a)] * pd.right_f[static_cast<size_t>(b)] /
           std::pow(pd.value_approx(), len - 1);
  };
  auto mass_q = [&](int a, int b, int len) {
    return pd.left[static_cast<size_t>(a)] * pd.right[static_cast<size_t>(b)] /
           Rational(big_pow(pd.integer_value, static_cast<std::uint64_t>(len - 1)));
  };

  for (int len = 1; len <= len_max; ++len) {
    auto shorter = realized_endpoints(m, len);
    auto longer = realized_endpoints(m, len + 2 * p);
    if (mu.exact()) {
      Rational mn, mx;
      bool f1 = true, f2 = true;
      std::pair<int, int> mn_pair, mx_pair;
      for (auto [a, b] : shorter) {
        Rational v = mass_q(a, b, len);
        if (f1 || v < mn) { mn = v; mn_pair = {a, b}; }
        f1 = false;
      }
      for (auto [a, b] : longer) {
        Rational v = mass_q(a, b, len + 2 * p);
        if (f2 || v > mx) { mx = v; mx_pair = {a, b}; }
        f2 = false;
      }
      if (mn < mx) {
        rep.holds = false;
        rep.violated_length = len;
        std::ostringstream os;
        os << "min length-" << len << " cylinder mass " << rational_to_string(mn)
           << " (endpoints " << m.alphabet().name(mn_pair.first) << ".."
           << m.alphabet().name(mn_pair.second) << ") < max length-"
           << (len + 2 * p) << " mass " << rational_to_string(mx) << " (endpoints "
           << m.alphabet().name(mx_pair.first) << ".." << m.alphabet().name(mx_pair.second) << ")";
        rep.witness = os.str();
        return rep;
      }
    } else {
      double mn = 0, mx = 0;
      bool f1 = true, f2 = true;
      for (auto [a, b] : shorter) {
        double v = mass_f(a, b, len);
        if (f1 || v < mn) mn = v;
        f1 = false;
      }
      for (auto [a, b] : longer) {
        double v = mass_f(a, b, len + 2 * p);
        if (f2 || v > mx) mx = v;
        f2 = false;
      }
      if (mn < mx * (1 - 1e-9)) {
        rep.holds = false;
        rep.violated_length = len;
        std::ostringstream os;
        os << "min length-" << len << " cylinder mass " << mn << " < max length-"
           << (len + 2 * p) << " mass " << mx;
        rep.witness = os.str();
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace sftpij
