#include "sftpij/perron.hpp"

#include <cmath>

namespace sftpij {

namespace {

// Reduced row echelon form in place; returns pivot column per row.
std::vector<int> rref(std::vector<std::vector<Rational>>& a) {
  int rows = static_cast<int>(a.size());
  int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  std::vector<int> pivot_cols;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (a[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[static_cast<size_t>(sel)], a[static_cast<size_t>(r)]);
    Rational inv = a[static_cast<size_t>(r)][static_cast<size_t>(c)];
    for (int j = 0; j < cols; ++j) a[static_cast<size_t>(r)][static_cast<size_t>(j)] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      Rational f = a[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (f == 0) continue;
      for (int j = 0; j < cols; ++j)
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * a[static_cast<size_t>(r)][static_cast<size_t>(j)];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  return pivot_cols;
}

std::vector<double> power_iteration(const AdjacencyMatrix& m, bool transpose) {
  int n = m.size();
  std::vector<double> v(static_cast<size_t>(n), 1.0), w(static_cast<size_t>(n));
  // M + I is primitive for irreducible M, so the iteration converges even
  // for periodic matrices.
  for (int iter = 0; iter < 20000; ++iter) {
    for (int i = 0; i < n; ++i) {
      double s = v[static_cast<size_t>(i)];
      for (int j = 0; j < n; ++j) {
        int e = transpose ? m.entry(j, i) : m.entry(i, j);
        if (e) s += v[static_cast<size_t>(j)];
      }
      w[static_cast<size_t>(i)] = s;
    }
    double norm = 0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    double delta = 0;
    for (int i = 0; i < n; ++i) {
      w[static_cast<size_t>(i)] /= norm;
      delta = std::max(delta, std::abs(w[static_cast<size_t>(i)] - v[static_cast<size_t>(i)]));
    }
    v = w;
    if (delta < 1e-16 && iter > 4) break;
  }
  return v;
}

}  // namespace

double PerronData::value_approx() const {
  if (integer) return to_double(integer_value);
  return (to_double(lo) + to_double(hi)) / 2.0;
}

std::optional<std::vector<Rational>> positive_eigenvector(
    const AdjacencyMatrix& m, const BigInt& lambda, bool transpose) {
  int n = m.size();
  std::vector<std::vector<Rational>> a(
      static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int e = transpose ? m.entry(j, i) : m.entry(i, j);
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rational(e);
      if (i == j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] -= Rational(lambda);
    }
  auto pivots = rref(a);
  int rank = static_cast<int>(pivots.size());
  if (rank != n - 1) return std::nullopt;  // Perron root is simple
  int free_col = 0;
  {
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    for (int c = 0; c < n; ++c)
      if (!is_pivot[static_cast<size_t>(c)]) free_col = c;
  }
  std::vector<Rational> x(static_cast<size_t>(n), Rational(0));
  x[static_cast<size_t>(free_col)] = 1;
  for (int r = 0; r < rank; ++r)
    x[static_cast<size_t>(pivots[static_cast<size_t>(r)])] =
        -a[static_cast<size_t>(r)][static_cast<size_t>(free_col)];
  // Strict positivity up to a global sign flip.
  bool all_pos = true, all_neg = true;
  for (const auto& v : x) {
    if (v <= 0) all_pos = false;
    if (v >= 0) all_neg = false;
  }
  if (!all_pos && !all_neg) return std::nullopt;
  if (all_neg)
    for (auto& v : x) v = -v;
  Rational scale = x[0];
  for (auto& v : x) v /= scale;
  return x;
}

PerronData perron(const AdjacencyMatrix& m, const Rational& bracket_width) {
  if (!is_irreducible(m)) throw InputError("perron() requires an irreducible matrix");
  int n = m.size();
  IntPolynomial cp = char_poly(m);

  int max_row_sum = 0;
  for (int i = 0; i < n; ++i) {
    int s = 0;
    for (int j = 0; j < n; ++j) s += m.entry(i, j);
    max_row_sum = std::max(max_row_sum, s);
  }

  PerronData out;
  // Integer candidates, largest first: the Perron value is the unique
  // eigenvalue with a strictly positive eigenvector.
  for (int cand = max_row_sum; cand >= 1; --cand) {
    if (cp.eval(BigInt(cand)) != 0) continue;
    auto right = positive_eigenvector(m, BigInt(cand), false);
    if (!right) continue;
    auto left = positive_eigenvector(m, BigInt(cand), true);
    if (!left) continue;
    Rational dot = 0;
    for (int i = 0; i < n; ++i) dot += (*left)[static_cast<size_t>(i)] * (*right)[static_cast<size_t>(i)];
    for (auto& v : *left) v /= dot;
    out.integer = true;
    out.integer_value = cand;
    out.lo = out.hi = Rational(cand);
    out.annihilator = IntPolynomial({-BigInt(cand), BigInt(1)});
    out.left = std::move(*left);
    out.right = std::move(*right);
    out.left_f.resize(static_cast<size_t>(n));
    out.right_f.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      out.left_f[static_cast<size_t>(i)] = to_double(out.left[static_cast<size_t>(i)]);
      out.right_f[static_cast<size_t>(i)] = to_double(out.right[static_cast<size_t>(i)]);
    }
    return out;
  }

  // Non-integer Perron value: certify a bracket by Sturm bisection on the
  // square-free characteristic factor with integer roots removed (the
  // Perron value stays its largest real root).
  IntPolynomial cert = cp.square_free_part().strip_integer_roots();
  if (cert.degree() < 1)
    throw std::logic_error("no non-integer factor left in characteristic polynomial");
  auto [lo, hi] =
      cert.bracket_largest_real_root(Rational(0), Rational(max_row_sum + 1), bracket_width);
  out.integer = false;
  out.lo = lo;
  out.hi = hi;
  out.annihilator = cert;

  out.right_f = power_iteration(m, false);
  out.left_f = power_iteration(m, true);
  double r0 = out.right_f[0];
  for (auto& v : out.right_f) v /= r0;
  double dot = 0;
  for (int i = 0; i < n; ++i) dot += out.left_f[static_cast<size_t>(i)] * out.right_f[static_cast<size_t>(i)];
  for (auto& v : out.left_f) v /= dot;
  return out;
}

}  // namespace sftpij
