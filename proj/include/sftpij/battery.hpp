#pragma once

#include <string>
#include <vector>

#include "sftpij/measure.hpp"

namespace sftpij {

enum class CheckStatus { pass, fail, inapplicable, inconclusive };

std::string to_string(CheckStatus s);

/// One battery entry. Gates (irreducible / aperiodic / uniform) and derived
/// notes describe applicability; only entries with `condition == true` are
/// necessary conditions whose failure excludes the property.
struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::inapplicable;
  std::string witness;
  bool condition = false;
};

struct PijReport {
  std::vector<CheckResult> checks;
  bool excluded = false;

  std::string verdict() const { return excluded ? "excluded" : "consistent-with-PIJ"; }
  const CheckResult* find(const std::string& name) const;
  /// Name of the first failing necessary condition, or "".
  std::string first_failure() const;
};

struct BatteryOptions {
  int k_max = 0;              // 0 = default 2*|A|^2 for the power scan
  int64_t budget = 1000000;   // enumeration budget (unused by the checks
                              // themselves; kept for CLI plumbing)
};

/// Perron value is an integer (necessary for irreducible aperiodic inputs).
CheckResult check_integer_perron(const AdjacencyMatrix& m);

/// Every prime factor of |A| divides n, i.e. |A| divides n^k for some k
/// (necessary for uniform irreducible aperiodic inputs).
CheckResult check_divisibility(const AdjacencyMatrix& m);

/// Some power M^k has all entries equal (then necessarily n^k/|A|).
/// Reports the smallest such k <= k_max; "not observed" is inconclusive
/// unless divisibility already rules constancy out forever.
CheckResult check_mk_constant(const AdjacencyMatrix& m, int k_max);

/// Characteristic polynomial equals X^{|A|-1}(X - n), the condition for
/// shift equivalence to the full n-shift.
CheckResult check_full_shift_char_poly(const AdjacencyMatrix& m);

/// Runs the gated pipeline: irreducible -> aperiodic -> integer Perron
/// (with the derived rational-cylinders note) -> uniformity ->
/// divisibility -> M^k constancy -> characteristic polynomial.
PijReport run_battery(const AdjacencyMatrix& m, const BatteryOptions& opts = {});

/// Matrices R, S and exponent m with RA=BR, SB=AS, SR=A^m, RS=B^m.
struct ShiftEquivalenceWitness {
  BigMatrix rmat;  // maps A-space to B-space: R A = B R
  BigMatrix smat;  // maps B-space to A-space
  int m = 1;
};

/// Exact verification of the four identities over nonnegative integer
/// matrices (shift equivalence is defined beyond 0-1 matrices, e.g. for the
/// 1x1 matrix (n)); throws on dimension mismatch or negative entries.
bool verify_shift_equivalence(const BigMatrix& a, const BigMatrix& b,
                              const ShiftEquivalenceWitness& w);
bool verify_shift_equivalence(const AdjacencyMatrix& a, const AdjacencyMatrix& b,
                              const ShiftEquivalenceWitness& w);

/// The standard witness relating the 1x1 matrix (n) and the n x n all-ones
/// matrix: R = ones(n,1), S = ones(1,n), m = 1.
ShiftEquivalenceWitness ones_witness(int n);

}  // namespace sftpij
