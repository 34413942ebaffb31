#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sftpij/numeric.hpp"

namespace sftpij {

/// Dense univariate polynomial over the integers. Coefficients are stored
/// ascending (coeffs[i] multiplies X^i); the zero polynomial has an empty
/// coefficient vector, every other value keeps its leading coefficient
/// nonzero.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> ascending_coeffs);

  /// Constant polynomial.
  static IntPolynomial constant(BigInt c);
  /// The monomial c * X^k.
  static IntPolynomial monomial(BigInt c, int k);
  /// X^pre_zeros * (X - root_1) * ... for integer roots.
  static IntPolynomial from_integer_roots(const std::vector<BigInt>& roots);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const BigInt& leading() const;
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  BigInt coeff(int k) const;

  BigInt eval(const BigInt& x) const;
  Rational eval(const Rational& x) const;

  IntPolynomial derivative() const;

  friend IntPolynomial operator+(const IntPolynomial&, const IntPolynomial&);
  friend IntPolynomial operator-(const IntPolynomial&, const IntPolynomial&);
  friend IntPolynomial operator*(const IntPolynomial&, const IntPolynomial&);
  bool operator==(const IntPolynomial&) const = default;

  /// Quotient of an exact division; throws if the division leaves a
  /// remainder (used by the fraction-free determinant, where exactness is
  /// an invariant, not a hope).
  IntPolynomial divide_exact(const IntPolynomial& divisor) const;

  /// Content (gcd of coefficients, sign of leading coefficient).
  BigInt content() const;
  /// Polynomial divided by its content; zero stays zero.
  IntPolynomial primitive_part() const;

  /// Square-free part: primitive(p / gcd(p, p')), with positive leading
  /// coefficient. Same real roots as p, all simple.
  IntPolynomial square_free_part() const;

  /// All integer roots with multiplicity stripped (each root listed once),
  /// in increasing order.
  std::vector<BigInt> integer_roots() const;

  /// Divides out (X - r) for every integer root r, completely (all
  /// multiplicities). The result has no integer roots.
  IntPolynomial strip_integer_roots() const;

  /// Number of distinct real roots in the half-open interval (a, b]
  /// (Sturm's theorem; the polynomial need not be square-free).
  int count_real_roots(const Rational& a, const Rational& b) const;

  /// Shrinks a bracket around the largest real root until hi - lo <= width.
  /// Requires at least one real root <= hi_start; throws otherwise.
  std::pair<Rational, Rational> bracket_largest_real_root(
      const Rational& lo_start, const Rational& hi_start,
      const Rational& width) const;

  /// Human-readable form like "X^3 - 3*X - 2".
  std::string to_string() const;

 private:
  std::vector<BigInt> coeffs_;
  void trim();
};

}  // namespace sftpij
