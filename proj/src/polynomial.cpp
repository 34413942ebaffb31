#include "sftpij/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace sftpij {

namespace {

// Rational-coefficient polynomial, ascending, used only for the Sturm chain
// and gcd computations. Kept local to this file.
using RatPoly = std::vector<Rational>;

void rtrim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rat(const IntPolynomial& p) {
  RatPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.emplace_back(c);
  return out;
}

// Remainder of a on division by b (b nonzero).
RatPoly rat_rem(RatPoly a, const RatPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    rtrim(a);
  }
  return a;
}

RatPoly rat_gcd(RatPoly a, RatPoly b) {
  rtrim(a);
  rtrim(b);
  while (!b.empty()) {
    RatPoly r = rat_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;  // monic for determinism
  }
  return a;
}

Rational rat_eval(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_of(const Rational& r) {
  if (r == 0) return 0;
  return r < 0 ? -1 : 1;
}

// Canonical Sturm chain of a square-free polynomial.
std::vector<RatPoly> sturm_chain(const IntPolynomial& square_free) {
  std::vector<RatPoly> chain;
  chain.push_back(to_rat(square_free));
  chain.push_back(to_rat(square_free.derivative()));
  rtrim(chain.back());
  while (!chain.back().empty() && chain.back().size() > 1) {
    RatPoly r = rat_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rational& x) {
  int variations = 0, prev = 0;
  for (const auto& p : chain) {
    if (p.empty()) continue;
    int s = sign_of(rat_eval(p, x));
    if (s != 0) {
      if (prev != 0 && s != prev) ++variations;
      prev = s;
    }
  }
  return variations;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> ascending_coeffs)
    : coeffs_(std::move(ascending_coeffs)) {
  trim();
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::constant(BigInt c) {
  return IntPolynomial({std::move(c)});
}

IntPolynomial IntPolynomial::monomial(BigInt c, int k) {
  std::vector<BigInt> v(static_cast<size_t>(k) + 1, BigInt(0));
  v.back() = std::move(c);
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::from_integer_roots(
    const std::vector<BigInt>& roots) {
  IntPolynomial p = constant(1);
  for (const auto& r : roots)
    p = p * IntPolynomial({-r, BigInt(1)});
  return p;
}

const BigInt& IntPolynomial::leading() const {
  if (coeffs_.empty()) throw std::logic_error("leading() of zero polynomial");
  return coeffs_.back();
}

BigInt IntPolynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<size_t>(k)];
}

BigInt IntPolynomial::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

Rational IntPolynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + Rational(*it);
  return acc;
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return IntPolynomial();
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i)
    d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return IntPolynomial(std::move(d));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()),
                          BigInt(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()),
                          BigInt(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return IntPolynomial();
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::divide_exact(const IntPolynomial& divisor) const {
  if (divisor.is_zero()) throw std::logic_error("division by zero polynomial");
  if (is_zero()) return IntPolynomial();
  std::vector<BigInt> rem = coeffs_;
  int dq = degree() - divisor.degree();
  if (dq < 0) throw std::logic_error("inexact polynomial division");
  std::vector<BigInt> quot(static_cast<size_t>(dq) + 1, BigInt(0));
  for (int k = dq; k >= 0; --k) {
    BigInt top = rem[static_cast<size_t>(k + divisor.degree())];
    if (top == 0) continue;
    if (top % divisor.leading() != 0)
      throw std::logic_error("inexact polynomial division");
    BigInt q = top / divisor.leading();
    quot[static_cast<size_t>(k)] = q;
    for (int i = 0; i <= divisor.degree(); ++i)
      rem[static_cast<size_t>(k + i)] -= q * divisor.coeffs_[static_cast<size_t>(i)];
  }
  for (const auto& c : rem)
    if (c != 0) throw std::logic_error("inexact polynomial division");
  return IntPolynomial(std::move(quot));
}

BigInt IntPolynomial::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
  if (g != 0 && leading() < 0) g = -g;
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return IntPolynomial();
  BigInt c = content();
  std::vector<BigInt> out(coeffs_.size());
  for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i] / c;
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::square_free_part() const {
  if (degree() <= 0) return primitive_part();
  RatPoly g = rat_gcd(to_rat(*this), to_rat(derivative()));
  if (g.size() <= 1) {
    IntPolynomial p = primitive_part();
    return p;
  }
  // Divide over the rationals, then clear denominators.
  RatPoly num = to_rat(*this);
  RatPoly quot(num.size() - g.size() + 1);
  for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
    Rational f = num[static_cast<size_t>(k) + g.size() - 1] / g.back();
    quot[static_cast<size_t>(k)] = f;
    for (size_t i = 0; i < g.size(); ++i)
      num[static_cast<size_t>(k) + i] -= f * g[i];
  }
  BigInt lcm = 1;
  for (const auto& c : quot)
    lcm = boost::multiprecision::lcm(lcm, denominator(c));
  std::vector<BigInt> ints(quot.size());
  for (size_t i = 0; i < quot.size(); ++i)
    ints[i] = numerator(quot[i] * Rational(lcm));
  return IntPolynomial(std::move(ints)).primitive_part();
}

std::vector<BigInt> IntPolynomial::integer_roots() const {
  std::vector<BigInt> roots;
  if (is_zero()) return roots;
  size_t first_nonzero = 0;
  while (coeffs_[first_nonzero] == 0) ++first_nonzero;
  if (first_nonzero > 0) roots.push_back(0);
  // Candidate roots divide the trailing nonzero coefficient.
  BigInt trailing = coeffs_[first_nonzero];
  BigInt t = boost::multiprecision::abs(trailing);
  for (BigInt d = 1; d * d <= t; ++d) {
    if (t % d != 0) continue;
    BigInt cofactor = t / d;
    for (BigInt cand : {BigInt(d), cofactor}) {
      BigInt neg = -cand;
      for (const BigInt& r : {cand, neg}) {
        if (eval(r) == 0 &&
            std::find(roots.begin(), roots.end(), r) == roots.end())
          roots.push_back(r);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

IntPolynomial IntPolynomial::strip_integer_roots() const {
  IntPolynomial p = *this;
  for (const auto& r : integer_roots()) {
    IntPolynomial factor({-r, BigInt(1)});
    while (!p.is_zero() && p.degree() >= 1 && p.eval(r) == 0)
      p = p.divide_exact(factor);
  }
  return p;
}

int IntPolynomial::count_real_roots(const Rational& a,
                                    const Rational& b) const {
  if (degree() <= 0) return 0;
  IntPolynomial sf = square_free_part();
  auto chain = sturm_chain(sf);
  int count = sign_variations(chain, a) - sign_variations(chain, b);
  // Sturm counts roots in (a, b]; endpoint a being a root is excluded by
  // the theorem, no adjustment needed.
  return count;
}

std::pair<Rational, Rational> IntPolynomial::bracket_largest_real_root(
    const Rational& lo_start, const Rational& hi_start,
    const Rational& width) const {
  Rational lo = lo_start, hi = hi_start;
  if (count_real_roots(lo, hi) < 1)
    throw std::logic_error("no real root in the starting bracket");
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (count_real_roots(mid, hi) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const BigInt& c = coeffs_[static_cast<size_t>(k)];
    if (c == 0) continue;
    BigInt a = boost::multiprecision::abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (k == 0) {
      os << a.str();
    } else {
      if (a != 1) os << a.str() << "*";
      os << "X";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace sftpij
