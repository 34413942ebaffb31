#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sftpij {

/// Arbitrary-precision integer. All counting and matrix arithmetic in the
/// toolkit goes through this type; nothing is allowed to overflow silently.
using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always kept in lowest terms by the backend.
using Rational = boost::multiprecision::cpp_rational;

/// Input that violates a schema or a precondition stated in the docs.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the configured size cap.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical "num/den" form with den >= 1, e.g. "3/1", "-1/2".
inline std::string rational_to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "num/den" or a bare integer string.
inline Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw InputError("rational with zero denominator: " + s);
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw InputError("malformed rational: " + s);
  }
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

/// BigInt power with nonnegative exponent.
inline BigInt big_pow(const BigInt& base, std::uint64_t e) {
  BigInt acc = 1, b = base;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

}  // namespace sftpij
