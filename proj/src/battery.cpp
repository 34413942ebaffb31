#include "sftpij/battery.hpp"

#include <sstream>

namespace sftpij {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inapplicable: return "inapplicable";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

const CheckResult* PijReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string PijReport::first_failure() const {
  for (const auto& c : checks)
    if (c.condition && c.status == CheckStatus::fail) return c.name;
  return "";
}

namespace {

std::vector<long long> prime_factors(long long n) {
  std::vector<long long> out;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_iasft(const AdjacencyMatrix& m) {
  return is_irreducible(m) && period(m) == 1;
}

}  // namespace

CheckResult check_integer_perron(const AdjacencyMatrix& m) {
  CheckResult r;
  r.name = "integer-perron";
  r.condition = true;
  if (!is_irreducible(m)) {
    r.status = CheckStatus::inapplicable;
    r.witness = "matrix is reducible; the integer-Perron condition is proven for irreducible aperiodic inputs only";
    return r;
  }
  if (period(m) != 1) {
    r.status = CheckStatus::inapplicable;
    r.witness = "period " + std::to_string(period(m)) +
                " > 1: without aperiodicity, rational cylinder masses do not force an integer Perron value";
    return r;
  }
  PerronData pd = perron(m);
  if (pd.integer) {
    r.status = CheckStatus::pass;
    r.witness = "Perron value = " + pd.integer_value.str();
  } else {
    r.status = CheckStatus::fail;
    r.witness = "Perron value is irrational: largest root of " +
                pd.annihilator.to_string() + ", bracketed in [" +
                rational_to_string(pd.lo) + ", " + rational_to_string(pd.hi) + "]";
  }
  return r;
}

CheckResult check_divisibility(const AdjacencyMatrix& m) {
  CheckResult r;
  r.name = "divisibility";
  r.condition = true;
  auto n_opt = is_uniform(m);
  if (!n_opt || !is_iasft(m)) {
    r.status = CheckStatus::inapplicable;
    r.witness = !n_opt ? "matrix is not uniform" : "matrix is not irreducible aperiodic";
    return r;
  }
  long long size = m.size(), n = *n_opt;
  for (long long p : prime_factors(size)) {
    if (n % p != 0) {
      std::ostringstream os;
      os << "|A| = " << size << " has prime factor " << p << " not dividing n = " << n
         << ", so " << size << " never divides " << n << "^k";
      r.status = CheckStatus::fail;
      r.witness = os.str();
      return r;
    }
  }
  // Smallest k with |A| | n^k, finite by the prime-factor test above.
  BigInt pw = 1;
  int k = 0;
  while (pw % size != 0) {
    pw *= n;
    ++k;
  }
  std::ostringstream os;
  os << "|A| = " << size << " divides n^k = " << n << "^" << k;
  r.status = CheckStatus::pass;
  r.witness = os.str();
  return r;
}

CheckResult check_mk_constant(const AdjacencyMatrix& m, int k_max) {
  CheckResult r;
  r.name = "mk-constant";
  r.condition = true;
  auto n_opt = is_uniform(m);
  if (!n_opt || !is_iasft(m)) {
    r.status = CheckStatus::inapplicable;
    r.witness = !n_opt ? "matrix is not uniform" : "matrix is not irreducible aperiodic";
    return r;
  }
  if (k_max <= 0) k_max = 2 * m.size() * m.size();
  long long n = *n_opt, size = m.size();
  BigMatrix power = BigMatrix::identity(m.size());
  BigMatrix big = m.to_big();
  for (int k = 1; k <= k_max; ++k) {
    power = power * big;
    bool constant = true;
    BigInt v = power.at(0, 0);
    for (int i = 0; i < m.size() && constant; ++i)
      for (int j = 0; j < m.size() && constant; ++j)
        if (power.at(i, j) != v) constant = false;
    if (constant) {
      BigInt expected = big_pow(BigInt(n), static_cast<std::uint64_t>(k)) / size;
      if (v * size != big_pow(BigInt(n), static_cast<std::uint64_t>(k)))
        throw std::logic_error("constant power with wrong common value");
      r.status = CheckStatus::pass;
      r.witness = "M^" + std::to_string(k) + " is constant with value n^k/|A| = " + expected.str();
      return r;
    }
  }
  for (long long p : prime_factors(size))
    if (n % p != 0) {
      r.status = CheckStatus::fail;
      r.witness = "M^k can never be constant: its common value would be n^k/|A|, but |A| = " +
                  std::to_string(size) + " never divides " + std::to_string(n) + "^k";
      return r;
    }
  r.status = CheckStatus::inconclusive;
  r.witness = "no constant power observed up to k_max = " + std::to_string(k_max);
  return r;
}

CheckResult check_full_shift_char_poly(const AdjacencyMatrix& m) {
  CheckResult r;
  r.name = "full-shift-char-poly";
  r.condition = true;
  if (!is_irreducible(m)) {
    r.status = CheckStatus::inapplicable;
    r.witness = "matrix is reducible";
    return r;
  }
  PerronData pd = perron(m);
  if (!pd.integer) {
    r.status = CheckStatus::inapplicable;
    r.witness = "Perron value is not an integer";
    return r;
  }
  IntPolynomial expected =
      IntPolynomial::monomial(BigInt(1), m.size() - 1) *
      IntPolynomial({-pd.integer_value, BigInt(1)});
  IntPolynomial actual = char_poly(m);
  if (actual == expected) {
    r.status = CheckStatus::pass;
    r.witness = "characteristic polynomial is " + actual.to_string() +
                " = X^" + std::to_string(m.size() - 1) + "(X - " + pd.integer_value.str() + ")";
  } else {
    r.status = CheckStatus::fail;
    r.witness = "characteristic polynomial " + actual.to_string() +
                " != X^" + std::to_string(m.size() - 1) + "(X - " + pd.integer_value.str() +
                "), so the matrix is not shift-equivalent to the full " +
                pd.integer_value.str() + "-shift";
  }
  return r;
}

PijReport run_battery(const AdjacencyMatrix& m, const BatteryOptions& opts) {
  PijReport rep;
  bool irreducible = is_irreducible(m);
  rep.checks.push_back({.name = "irreducible",
                        .status = irreducible ? CheckStatus::pass : CheckStatus::fail,
                        .witness = irreducible ? "strongly connected" : "not strongly connected",
                        .condition = false});
  bool aperiodic = false;
  if (irreducible) {
    int per = period(m);
    aperiodic = per == 1;
    rep.checks.push_back({.name = "aperiodic",
                          .status = aperiodic ? CheckStatus::pass : CheckStatus::fail,
                          .witness = "period " + std::to_string(per),
                          .condition = false});
  } else {
    rep.checks.push_back({.name = "aperiodic",
                          .status = CheckStatus::inapplicable,
                          .witness = "matrix is reducible",
                          .condition = false});
  }

  CheckResult ip = check_integer_perron(m);
  rep.checks.push_back(ip);

  CheckResult rc;
  rc.name = "rational-cylinders";
  if (ip.status == CheckStatus::pass) {
    rc.status = CheckStatus::pass;
    rc.witness = "derived: integer Perron value makes every cylinder mass rational";
  } else {
    rc.status = CheckStatus::inapplicable;
    rc.witness = "derived note; needs an integer Perron value";
  }
  rep.checks.push_back(rc);

  auto n_opt = is_uniform(m);
  rep.checks.push_back({.name = "uniform",
                        .status = n_opt ? CheckStatus::pass : CheckStatus::fail,
                        .witness = n_opt ? "every vertex has " + std::to_string(*n_opt) +
                                               " incoming and outgoing edges"
                                         : "row/column sums differ",
                        .condition = false});

  rep.checks.push_back(check_divisibility(m));
  rep.checks.push_back(check_mk_constant(m, opts.k_max));
  if (irreducible && aperiodic) {
    rep.checks.push_back(check_full_shift_char_poly(m));
  } else {
    // The shift-equivalence consequence is proven for irreducible aperiodic
    // inputs; a periodic cycle keeps the property without the polynomial.
    rep.checks.push_back({.name = "full-shift-char-poly",
                          .status = CheckStatus::inapplicable,
                          .witness = "matrix is not irreducible aperiodic",
                          .condition = true});
  }

  for (const auto& c : rep.checks)
    if (c.condition && c.status == CheckStatus::fail) rep.excluded = true;
  return rep;
}

bool verify_shift_equivalence(const BigMatrix& a, const BigMatrix& b,
                              const ShiftEquivalenceWitness& w) {
  const BigMatrix& r = w.rmat;
  const BigMatrix& s = w.smat;
  if (a.rows() != a.cols() || b.rows() != b.cols())
    throw InputError("shift equivalence needs square matrices");
  if (r.rows() != b.rows() || r.cols() != a.rows() || s.rows() != a.rows() ||
      s.cols() != b.rows())
    throw InputError("witness dimensions do not match the matrices");
  if (w.m < 1) throw InputError("witness exponent must be positive");
  for (const BigMatrix* mat : {&a, &b, &r, &s})
    for (int i = 0; i < mat->rows(); ++i)
      for (int j = 0; j < mat->cols(); ++j)
        if (mat->at(i, j) < 0) throw InputError("matrices must be nonnegative");
  return r * a == b * r && s * b == a * s && s * r == a.pow(w.m) &&
         r * s == b.pow(w.m);
}

bool verify_shift_equivalence(const AdjacencyMatrix& a, const AdjacencyMatrix& b,
                              const ShiftEquivalenceWitness& w) {
  return verify_shift_equivalence(a.to_big(), b.to_big(), w);
}

ShiftEquivalenceWitness ones_witness(int n) {
  ShiftEquivalenceWitness w;
  w.rmat = BigMatrix(n, 1);
  w.smat = BigMatrix(1, n);
  for (int i = 0; i < n; ++i) {
    w.rmat.at(i, 0) = 1;
    w.smat.at(0, i) = 1;
  }
  w.m = 1;
  return w;
}

}  // namespace sftpij
