#pragma once

#include <optional>
#include <vector>

#include "sftpij/adjacency.hpp"
#include "sftpij/polynomial.hpp"

namespace sftpij {

/// Perron value and eigenvector data of an irreducible adjacency matrix.
///
/// Integer case: the value is certified by an exact rational solve of
/// (M - nI) r = 0 with strictly positive kernel vector, and the rational
/// eigenvectors are exact. Otherwise the value is certified by a Sturm
/// bracket [lo, hi] on an integer annihilating polynomial, and the
/// eigenvectors are floating-point (power iteration on M + I, residual
/// driven below 1e-12).
///
/// Normalization: right eigenvector is fixed by r[0] = 1, the left one is
/// scaled so that sum_i left[i]*right[i] = 1.
struct PerronData {
  bool integer = false;
  BigInt integer_value;  // valid iff integer

  Rational lo, hi;           // certified bracket; lo == hi == n when integer
  IntPolynomial annihilator;  // X - n, or the square-free characteristic
                              // factor with integer roots stripped

  std::vector<Rational> left, right;    // exact, integer case only
  std::vector<double> left_f, right_f;  // always populated

  double value_approx() const;
};

/// Computes Perron data for an irreducible matrix; throws InputError on a
/// reducible input. bracket_width controls the certified enclosure in the
/// non-integer case.
PerronData perron(const AdjacencyMatrix& m,
                  const Rational& bracket_width = Rational(1, BigInt("1000000000000")));

/// Solves (M - lambda I) x = 0 exactly over the rationals and returns a
/// strictly positive kernel vector scaled to x[0] = 1 when one exists
/// (transpose = true works on M^T for the left eigenvector).
std::optional<std::vector<Rational>> positive_eigenvector(
    const AdjacencyMatrix& m, const BigInt& lambda, bool transpose);

}  // namespace sftpij
