#include "sftpij/adjacency.hpp"

#include <json.hpp>

#include <numeric>
#include <queue>
#include <set>

namespace sftpij {

Alphabet::Alphabet(std::vector<std::string> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InputError("alphabet must be nonempty");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw InputError("empty symbol name");
    if (!seen.insert(s).second) throw InputError("duplicate symbol: " + s);
  }
}

int Alphabet::index_of(const std::string& name) const {
  for (size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == name) return static_cast<int>(i);
  return -1;
}

bool Alphabet::single_char() const {
  for (const auto& s : symbols_)
    if (s.size() != 1) return false;
  return true;
}

BigMatrix::BigMatrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), BigInt(0)) {}

BigMatrix BigMatrix::identity(int n) {
  BigMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

BigMatrix BigMatrix::operator*(const BigMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InputError("matrix dimension mismatch");
  BigMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const BigInt& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += aik * rhs.at(k, j);
    }
  return out;
}

BigMatrix BigMatrix::pow(int e) const {
  if (rows_ != cols_) throw InputError("pow of non-square matrix");
  if (e < 0) throw InputError("negative matrix power");
  BigMatrix acc = identity(rows_), base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

AdjacencyMatrix::AdjacencyMatrix(Alphabet alphabet,
                                 std::vector<std::vector<int>> entries)
    : alphabet_(std::move(alphabet)), entries_(std::move(entries)) {
  size_t n = static_cast<size_t>(alphabet_.size());
  if (entries_.size() != n) throw InputError("matrix is not |A| x |A|");
  for (const auto& row : entries_) {
    if (row.size() != n) throw InputError("matrix is not square");
    for (int v : row)
      if (v != 0 && v != 1) throw InputError("matrix entry outside {0,1}");
  }
  for (size_t i = 0; i < n; ++i) {
    bool row_has = false, col_has = false;
    for (size_t j = 0; j < n; ++j) {
      row_has |= entries_[i][j] != 0;
      col_has |= entries_[j][i] != 0;
    }
    if (!row_has)
      throw InputError("inessential graph: all-zero row for symbol " +
                       alphabet_.name(static_cast<int>(i)));
    if (!col_has)
      throw InputError("inessential graph: all-zero column for symbol " +
                       alphabet_.name(static_cast<int>(i)));
  }
}

BigMatrix AdjacencyMatrix::to_big() const {
  BigMatrix m(size(), size());
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) m.at(i, j) = entry(i, j);
  return m;
}

AdjacencyMatrix AdjacencyMatrix::full_shift(int n) {
  if (n < 1) throw InputError("full shift needs n >= 1");
  std::vector<std::string> syms;
  for (int i = 0; i < n; ++i) syms.push_back(std::to_string(i));
  std::vector<std::vector<int>> e(static_cast<size_t>(n),
                                  std::vector<int>(static_cast<size_t>(n), 1));
  return AdjacencyMatrix(Alphabet(std::move(syms)), std::move(e));
}

AdjacencyMatrix AdjacencyMatrix::cycle(int n) {
  if (n < 1) throw InputError("cycle needs n >= 1");
  std::vector<std::string> syms;
  for (int i = 0; i < n; ++i) syms.push_back(std::to_string(i));
  std::vector<std::vector<int>> e(static_cast<size_t>(n),
                                  std::vector<int>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i) e[static_cast<size_t>(i)][static_cast<size_t>((i + 1) % n)] = 1;
  return AdjacencyMatrix(Alphabet(std::move(syms)), std::move(e));
}

AdjacencyMatrix parse_matrix(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("alphabet") || !j.contains("matrix"))
    throw InputError("matrix file needs \"alphabet\" and \"matrix\" fields");
  std::vector<std::string> syms;
  for (const auto& s : j.at("alphabet")) {
    if (!s.is_string()) throw InputError("alphabet entries must be strings");
    syms.push_back(s.get<std::string>());
  }
  std::vector<std::vector<int>> entries;
  for (const auto& row : j.at("matrix")) {
    std::vector<int> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw InputError("matrix entries must be integers");
      r.push_back(v.get<int>());
    }
    entries.push_back(std::move(r));
  }
  return AdjacencyMatrix(Alphabet(std::move(syms)), std::move(entries));
}

namespace {

// Vertices reachable from start along out-edges (or in-edges if reversed).
std::vector<bool> reachable(const AdjacencyMatrix& m, int start, bool reversed) {
  int n = m.size();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::queue<int> q;
  seen[static_cast<size_t>(start)] = true;
  q.push(start);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < n; ++v) {
      int e = reversed ? m.entry(v, u) : m.entry(u, v);
      if (e && !seen[static_cast<size_t>(v)]) {
        seen[static_cast<size_t>(v)] = true;
        q.push(v);
      }
    }
  }
  return seen;
}

}  // namespace

bool is_irreducible(const AdjacencyMatrix& m) {
  auto fwd = reachable(m, 0, false);
  auto bwd = reachable(m, 0, true);
  for (int v = 0; v < m.size(); ++v)
    if (!fwd[static_cast<size_t>(v)] || !bwd[static_cast<size_t>(v)]) return false;
  return true;
}

int period(const AdjacencyMatrix& m) {
  if (!is_irreducible(m)) throw InputError("period() requires an irreducible matrix");
  int n = m.size();
  std::vector<int> level(static_cast<size_t>(n), -1);
  std::queue<int> q;
  level[0] = 0;
  q.push(0);
  long long g = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v = 0; v < n; ++v) {
      if (!m.entry(u, v)) continue;
      if (level[static_cast<size_t>(v)] < 0) {
        level[static_cast<size_t>(v)] = level[static_cast<size_t>(u)] + 1;
        q.push(v);
      }
      long long diff = level[static_cast<size_t>(u)] + 1 - level[static_cast<size_t>(v)];
      g = std::gcd(g, diff);
    }
  }
  return static_cast<int>(g < 0 ? -g : g);
}

BigInt matrix_power_entry(const AdjacencyMatrix& m, int k, int a, int b) {
  if (k < 0) throw InputError("matrix power with negative exponent");
  if (a < 0 || a >= m.size() || b < 0 || b >= m.size())
    throw InputError("symbol index out of range");
  return m.to_big().pow(k).at(a, b);
}

IntPolynomial char_poly(const AdjacencyMatrix& m) {
  int n = m.size();
  // Work matrix X*I - M over Z[X]. Bareiss pivots for this matrix are the
  // characteristic polynomials of the leading submatrices, hence monic and
  // never zero; no row swaps can occur.
  std::vector<std::vector<IntPolynomial>> a(
      static_cast<size_t>(n), std::vector<IntPolynomial>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      BigInt c0 = -BigInt(m.entry(i, j));
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          (i == j) ? IntPolynomial({c0, BigInt(1)}) : IntPolynomial::constant(c0);
    }
  IntPolynomial prev = IntPolynomial::constant(1);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    auto& pivot = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
    if (pivot.is_zero()) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (!a[static_cast<size_t>(i)][static_cast<size_t>(k)].is_zero()) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return IntPolynomial();  // det is zero
      std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(swap_row)]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        IntPolynomial num =
            a[static_cast<size_t>(i)][static_cast<size_t>(j)] * a[static_cast<size_t>(k)][static_cast<size_t>(k)] -
            a[static_cast<size_t>(i)][static_cast<size_t>(k)] * a[static_cast<size_t>(k)][static_cast<size_t>(j)];
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] = num.divide_exact(prev);
      }
      a[static_cast<size_t>(i)][static_cast<size_t>(k)] = IntPolynomial();
    }
    prev = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  IntPolynomial det = a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
  if (sign < 0) det = IntPolynomial() - det;
  return det;
}

std::optional<int> is_uniform(const AdjacencyMatrix& m) {
  int n = m.size();
  int target = 0;
  for (int j = 0; j < n; ++j) target += m.entry(0, j);
  for (int i = 0; i < n; ++i) {
    int rs = 0, cs = 0;
    for (int j = 0; j < n; ++j) {
      rs += m.entry(i, j);
      cs += m.entry(j, i);
    }
    if (rs != target || cs != target) return std::nullopt;
  }
  return target;
}

bool is_zero_entropy(const AdjacencyMatrix& m) {
  if (!is_irreducible(m))
    throw InputError("is_zero_entropy() requires an irreducible matrix");
  // An irreducible graph has Perron value 1 iff it is a permutation graph,
  // which by irreducibility is a single cycle.
  return is_uniform(m) == 1;
}

}  // namespace sftpij
