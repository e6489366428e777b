#pragma once

// Invariant suites behind `tw verify`.

#include <optional>
#include <string>
#include <vector>

namespace twcli {

struct CheckResult {
  std::string check;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string worst_case; // where max_error was attained
  bool pass() const { return max_error <= tolerance; } // NaN fails
};

/// Gram tensors of F_lm and the scalar/vector/cross overlaps for all modes
/// 1 <= l, l' <= lmax. Default tolerance 1e-10.
std::vector<CheckResult> verify_ortho(int lmax, std::optional<double> tol);

/// trace, det, adjugate, trace of adjugate, trace of square and the two
/// constructions of F_lm at 100 points per mode, l <= lmax. Errors are
/// relative to |F|^d for a degree-d quantity. Default tolerance 1e-12.
std::vector<CheckResult> verify_invariants(int lmax, std::optional<double> tol);

/// Finite-difference curl and divergence residuals of synthesized fields,
/// one coefficient set per l <= lmax in three media. Default tolerance 1e-5.
std::vector<CheckResult> verify_maxwell(int lmax, std::optional<double> tol);

} // namespace twcli
